#include "jumpcoach/lint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace jumpcoach {

char ruleTag(LintRule r) {
  switch (r) {
    case LintRule::IntervalSet:
    case LintRule::IntervalChange: return 'a';
    case LintRule::LegSwitch: return 'b';
    case LintRule::RestingPassage: return 'c';
    case LintRule::BundledCount: return 'd';
  }
  return '?';
}

namespace {

std::string beatStr(double b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", b);
  return buf;
}

void lintIntervals(const std::vector<Note>& notes, int tier, const LintConfig& cfg, std::vector<LintFinding>& out) {
  const double longest = *std::max_element(cfg.allowedIntervals.begin(), cfg.allowedIntervals.end());
  double current = 0.0;
  double lastChange = -1e9;
  for (std::size_t i = 1; i < notes.size(); ++i) {
    const double d = notes[i].beat - notes[i - 1].beat;
    if (d > longest + 1e-9) continue;
    const bool allowed = std::any_of(cfg.allowedIntervals.begin(), cfg.allowedIntervals.end(),
                                     [&](double a) { return std::abs(a - d) < 1e-9; });
    if (!allowed) {
      out.push_back({LintRule::IntervalSet, tier, notes[i].beat,
                     "interval of " + beatStr(d) + " beats (allowed 1, 2 or 4)"});
      continue;
    }
    if (current != 0.0 && std::abs(d - current) > 1e-9) {
      const double at = notes[i - 1].beat;
      if (at - lastChange < cfg.minBeatsBetweenIntervalChanges - 1e-9) {
        out.push_back({LintRule::IntervalChange, tier, at,
                       "interval changes " + beatStr(at - lastChange) + " beats after the previous change"});
      }
      lastChange = at;
    }
    current = d;
  }
}

void lintLegSwitches(const std::vector<Note>& notes, int tier, const LintConfig& cfg, std::vector<LintFinding>& out) {
  double lastSwitch = -1e9;
  for (std::size_t i = 1; i < notes.size(); ++i) {
    if (isSingleLeg(notes[i].kind) == isSingleLeg(notes[i - 1].kind)) continue;
    const double at = notes[i].beat;
    if (at - lastSwitch < cfg.minBeatsBetweenLegSwitches - 1e-9) {
      out.push_back({LintRule::LegSwitch, tier, at,
                     "single/double-leg switch " + beatStr(at - lastSwitch) + " beats after the previous one"});
    }
    lastSwitch = at;
  }
}

void lintRest(const std::vector<Note>& notes, int tier, const LintConfig& cfg, std::vector<LintFinding>& out) {
  // Bar-aligned windows between the first and last note.
  const double first = std::floor(notes.front().beat / kBeatsPerBar) * kBeatsPerBar;
  const double last = notes.back().beat;
  std::vector<std::size_t> counts;
  for (double s = first; s + cfg.restWindowBeats <= last + 1e-9; s += kBeatsPerBar) {
    const auto lo = std::lower_bound(notes.begin(), notes.end(), s - 1e-9,
                                     [](const Note& n, double b) { return n.beat < b; });
    const auto hi = std::lower_bound(notes.begin(), notes.end(), s + cfg.restWindowBeats - 1e-9,
                                     [](const Note& n, double b) { return n.beat < b; });
    counts.push_back(static_cast<std::size_t>(hi - lo));
  }
  if (counts.empty()) return;
  std::vector<std::size_t> sorted = counts;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  if (static_cast<double>(sorted.front()) <= cfg.restDensityRatio * median + 1e-9) return;
  out.push_back({LintRule::RestingPassage, tier, first,
                 "no resting passage: every " + beatStr(cfg.restWindowBeats) + "-beat window holds more than " +
                     beatStr(cfg.restDensityRatio * median) + " notes"});
}

}  // namespace

std::vector<LintFinding> lintMap(const BeatMap& map, const LintConfig& config) {
  std::vector<LintFinding> out;
  for (int t = 0; t < kTierCount; ++t) {
    const auto& notes = map.notes(tierFromIndex(t));
    if (notes.size() < 2) continue;
    lintIntervals(notes, t, config, out);
    if (map.kind == LevelKind::Hop) lintLegSwitches(notes, t, config, out);
    lintRest(notes, t, config, out);
  }
  for (auto& msg : bundledCountFindings(map)) out.push_back({LintRule::BundledCount, -1, 0.0, std::move(msg)});
  return out;
}

}  // namespace jumpcoach
