#pragma once

#include <string>
#include <vector>

#include "jumpcoach/beatmap.hpp"

namespace jumpcoach {

enum class LintRule { IntervalSet, IntervalChange, LegSwitch, RestingPassage, BundledCount };

/// Short rule tag used in findings: "a", "a", "b", "c", "d".
char ruleTag(LintRule r);

struct LintFinding {
  LintRule rule;
  int tier = -1;       // -1 for map-wide findings
  double beat = 0.0;
  std::string message;
};

struct LintConfig {
  std::vector<double> allowedIntervals{1.0, 2.0, 4.0};
  /// Gaps longer than the largest allowed interval are pauses, not interval changes.
  double minBeatsBetweenIntervalChanges = 32.0;   // one change per 8 bars
  double minBeatsBetweenLegSwitches = 16.0;       // one switch per 4 bars
  double restWindowBeats = 16.0;                  // 4 bars
  double restDensityRatio = 0.5;
};

/// Pattern-regularity lint for a parsed map. Bundled count rules are reported
/// as BundledCount findings instead of being thrown.
std::vector<LintFinding> lintMap(const BeatMap& map, const LintConfig& config = {});

}  // namespace jumpcoach
