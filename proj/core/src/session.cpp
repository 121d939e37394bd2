#include "jumpcoach/session.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jumpcoach {

double SessionReport::overallHitRatio() const {
  int hits = 0, total = 0;
  for (const auto& l : levels) {
    hits += l.score.hits;
    total += l.score.total;
  }
  return total == 0 ? 1.0 : static_cast<double>(hits) / total;
}

DwellFractions SessionReport::overallDwell() const {
  std::vector<DwellInterval> all;
  for (const auto& l : levels) all.insert(all.end(), l.dwellLog.begin(), l.dwellLog.end());
  return dwellFractions(all);
}

std::string breakMessage(double hitRatio) {
  if (hitRatio >= 0.9) return "Outstanding rhythm! Catch your breath, the next level is waiting.";
  if (hitRatio >= 0.6) return "Good job, you kept the beat. Rest up for the next level.";
  return "Nice effort! Use this break to recover, you will get the next one.";
}

CalibrationProfile calibrateFromStream(std::span<const PoseFrame> stream, const CalibrationOptions& options) {
  const std::size_t n = lowerIndex(stream, kCalibrationWindowS);
  return calibrate(stream.first(n), options);
}

namespace {

struct Exhausted {};

class Runner {
 public:
  Runner(PoseSource& src, const LevelMaps& maps, const CalibrationProfile& cal, const SessionConfig& cfg)
      : src_(src), maps_(maps), cal_(cal), cfg_(cfg), safety_(cal, cfg.safety) {}

  SessionReport run() {
    report_.startT = 0.0;
    double t = cfg_.startT;
    int played = 0;
    for (int level = 0; level < 3; ++level) {
      if (!cfg_.playLevel[static_cast<std::size_t>(level)]) continue;
      const double end = playLevel(maps_.at(level), t);
      ++played;
      const LevelReport& lr = report_.levels.back();
      report_.messages.push_back({MessageSlot::InterLevelBreak, level + 1, breakMessage(lr.score.hitRatio)});
      src_.cueRest(end, end + cfg_.restS);
      pull(end + cfg_.restS);
      waitWhilePaused();
      t = std::max(end + cfg_.restS, lastT());
    }
    if (cfg_.playJumpLevel) playJumps(played == 0 ? cfg_.startT : t);
    finish();
    return std::move(report_);
  }

  SessionReport partial(const std::string& why) {
    report_.partial = true;
    report_.partialReason = why;
    finish();
    return std::move(report_);
  }

 private:
  double lastT() const { return frames_.empty() ? 0.0 : frames_.back().t; }

  void finish() {
    report_.endT = lastT();
    report_.safety = safety_.report(report_.endT);
    report_.safetyEvents = safety_.events();
  }

  /// Consumes frames until the stream reaches `t`.
  void pull(double t) {
    while (frames_.empty() || frames_.back().t < t - 1e-9) {
      auto f = src_.next();
      if (!f) throw Exhausted{};
      consume(*f);
    }
  }

  void consume(const PoseFrame& f) {
    const SafetyStatus before = safety_.status();
    const SafetyStatus now = safety_.update(f);
    frames_.push_back(f);
    if (now == SafetyStatus::Paused) pausedSeen_ = true;
    if (now != before) {
      src_.cueStatus(now, f.t);
      if (now == SafetyStatus::Paused) pauseStart_ = f.t;
      if (before == SafetyStatus::Paused) pausedTotal_ += f.t - pauseStart_;
    }
  }

  void waitWhilePaused() {
    while (safety_.status() == SafetyStatus::Paused) {
      auto f = src_.next();
      if (!f) throw Exhausted{};
      consume(*f);
    }
  }

  double playLevel(const BeatMap& map, double start) {
    LevelReport lr;
    lr.kind = map.kind;
    lr.startT = start;
    const double pausedAtStart = pausedTotal_;
    DifficultyController ctrl(start, cfg_.fixedTier.value_or(Tier::Easy));
    const double halfBar = 2.0 * map.secondsPerBeat();
    const JudgeConfig& jc = cfg_.judge;

    double lastBeat = -1.0;
    std::optional<HeldNote> held;
    while (true) {
      const Tier tier = cfg_.fixedTier.value_or(ctrl.tier());
      const auto& notes = map.notes(tier);
      auto it = std::upper_bound(notes.begin(), notes.end(), lastBeat,
                                 [](double b, const Note& n) { return b < n.beat; });
      if (it == notes.end()) break;
      const Note& note = *it;
      const double offset = pausedTotal_ - pausedAtStart;
      const double due = start + map.timeOf(note.beat) + offset;

      double to = due + jc.windowS;
      if (map.kind == LevelKind::Obstacle) to = due + halfBar;
      src_.cueNote({map.kind, note, tier, due});
      pausedSeen_ = safety_.status() == SafetyStatus::Paused;
      pull(to);

      JudgedNote j;
      if (pausedSeen_) {
        j = suspendedNote(note, due, tier);
      } else {
        try {
          switch (map.kind) {
            case LevelKind::Tap: j = judgeTap(frames_, note, due, cal_, tier, jc); break;
            case LevelKind::Hop: j = judgeHop(frames_, note, due, held, cal_, tier, jc); break;
            case LevelKind::Obstacle: j = judgeObstacle(frames_, note, due, cal_, tier, halfBar, jc); break;
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::StreamGap) throw;
          j = JudgedNote{note, tier, due, Outcome::Miss, 0.0, Violation::NoAction, false};
        }
      }
      lr.notes.push_back(j);
      const auto remaining = std::distance(it, notes.end()) - 1;
      ctrl.update(j.outcome, due, remaining >= DifficultyController::kFrozenTail);
      lastBeat = note.beat;
      held = HeldNote{note, due};
      waitWhilePaused();
    }

    const double end = start + map.durationS + (pausedTotal_ - pausedAtStart);
    pull(end);
    ctrl.finish(end);
    lr.endT = end;
    lr.score = levelScore(lr.notes);
    lr.dwellLog = ctrl.dwellLog();
    lr.dwell = ctrl.dwellFractions();
    report_.levels.push_back(std::move(lr));
    return end;
  }

  void playJumps(double start) {
    JumpLevelReport jl;
    jl.startT = start;
    jl.target = cfg_.jumpCount;
    report_.jumpLevel = jl;
    src_.cueJumps(start, cfg_.jumpCount);
    const std::size_t first = frames_.size();
    const double deadline = start + cfg_.jumpLevelTimeoutS;
    const auto target = static_cast<std::size_t>(std::max(cfg_.jumpCount, 0));

    std::vector<JumpRecord> jumps;
    for (double t = start + 0.5;; t += 0.5) {
      try {
        pull(std::min(t, deadline));
      } catch (const Exhausted&) {
        collect(jumps, target);
        report_.jumpLevel->endT = lastT();
        throw;
      }
      const std::span<const PoseFrame> level(frames_.data() + first, frames_.size() - first);
      jumps = detectJumps(level, cal_, cfg_.thresholds);
      if (jumps.size() >= target &&
          (target == 0 || lastT() >= jumps[target - 1].landingT + cfg_.thresholds.marginS + 0.1)) {
        break;
      }
      if (t >= deadline) break;
    }
    collect(jumps, target);
    report_.jumpLevel->endT = lastT();
  }

  void collect(std::vector<JumpRecord>& jumps, std::size_t target) {
    if (jumps.size() > target) jumps.resize(target);
    const JumpRecord* previous = nullptr;
    for (std::size_t k = 0; k < jumps.size(); ++k) {
      evaluateJump(jumps[k], cal_, cfg_.thresholds);
      JumpEntry e{jumps[k], makeFeedback(jumps[k], previous)};
      previous = &jumps[k];
      e.record.samples.clear();
      const int n = static_cast<int>(k) + 1;
      report_.messages.push_back({MessageSlot::PostJump, n, e.feedback.instruction});
      report_.highscore.push_back({e.feedback.jumpScore, e.feedback.heightM, n});
      report_.jumps.push_back(std::move(e));
    }
    std::stable_sort(report_.highscore.begin(), report_.highscore.end(),
                     [](const HighscoreEntry& a, const HighscoreEntry& b) { return a.jumpScore > b.jumpScore; });
  }

  PoseSource& src_;
  const LevelMaps& maps_;
  const CalibrationProfile& cal_;
  const SessionConfig& cfg_;
  SafetyMonitor safety_;
  PoseStream frames_;
  SessionReport report_;
  bool pausedSeen_ = false;
  double pauseStart_ = 0.0;
  double pausedTotal_ = 0.0;
};

}  // namespace

SessionReport runSession(PoseSource& source, const LevelMaps& maps, const std::optional<CalibrationProfile>& cal,
                         const SessionConfig& config) {
  if (!cal) throw Error(ErrorCode::CalibrationMissing, "session needs a calibration profile");
  cal->validate();
  Runner runner(source, maps, *cal, config);
  try {
    return runner.run();
  } catch (const Exhausted&) {
    throw StreamExhaustedError("pose stream ended before the session finished",
                               runner.partial("stream exhausted"));
  }
}

GeneratedSession generateSession(const PlayerModel& model, const LevelMaps& maps, std::uint64_t seed,
                                 const SessionConfig& config) {
  SimPlayer player(model, seed);
  RecordingSource recording(player);
  PoseStream head;
  while (player.time() < kCalibrationWindowS) head.push_back(*recording.next());
  GeneratedSession out;
  out.calibration = calibrateFromStream(head);
  PrefixedSource source(std::move(head), recording);
  out.report = runSession(source, maps, out.calibration, config);
  out.frames = recording.take();
  return out;
}

}  // namespace jumpcoach
