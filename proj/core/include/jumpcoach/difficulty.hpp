#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <vector>

#include "jumpcoach/beatmap.hpp"
#include "jumpcoach/judge.hpp"

namespace jumpcoach {

struct DwellInterval {
  Tier tier = Tier::Easy;
  double enterT = 0.0;
  double exitT = 0.0;

  friend bool operator==(const DwellInterval&, const DwellInterval&) = default;
};

using DwellFractions = std::array<double, kTierCount>;

/// Sliding-window tier controller for the rhythmic levels.
///
/// After each judged note the window of recent outcomes is inspected once it
/// holds `kWindow` entries: >= 90 % hits moves one tier up, > 40 % misses one
/// tier down. Any transition clears the window.
class DifficultyController {
 public:
  static constexpr std::size_t kWindow = 10;
  static constexpr double kUpPrecision = 0.90;
  static constexpr double kDownMissRate = 0.40;
  /// Transitions are frozen for this many final notes of a level.
  static constexpr int kFrozenTail = 4;

  explicit DifficultyController(double startT = 0.0, Tier start = Tier::Easy);

  /// Records one outcome at time `now`. Pass `mayTransition = false` for the
  /// frozen tail of a level. Returns the tier in effect for the next note.
  Tier update(Outcome outcome, double now, bool mayTransition = true);

  /// Closes the dwell log at the level end.
  void finish(double endT);

  Tier tier() const { return tier_; }
  bool finished() const { return finished_; }
  const std::deque<Outcome>& window() const { return window_; }
  /// Closed intervals plus, before finish(), the open one with exitT = enterT.
  const std::vector<DwellInterval>& dwellLog() const { return log_; }

  /// Share of level time spent in each tier. Throws LevelNotFinished before finish().
  DwellFractions dwellFractions() const;

 private:
  Tier tier_;
  std::deque<Outcome> window_;
  std::vector<DwellInterval> log_;
  bool finished_ = false;
};

/// Fractions of a finished dwell log; the intervals partition the level, so
/// their total length is the level duration.
DwellFractions dwellFractions(const std::vector<DwellInterval>& log);

}  // namespace jumpcoach
