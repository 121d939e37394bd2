#pragma once

#include <string_view>
#include <vector>

#include "jumpcoach/calibration.hpp"
#include "jumpcoach/filter.hpp"
#include "jumpcoach/geometry.hpp"
#include "jumpcoach/pose.hpp"

namespace jumpcoach {

enum class SafetyStatus { Ok = 0, Warn, Paused };

std::string_view toString(SafetyStatus s);

struct SafetyEvent {
  double t = 0.0;
  SafetyStatus from = SafetyStatus::Ok;
  SafetyStatus to = SafetyStatus::Ok;

  friend bool operator==(const SafetyEvent&, const SafetyEvent&) = default;
};

struct SafetyConfig {
  double warnFraction = 0.8;   // of the zone radius
  double hysteresisM = 0.05;
  double cutoffHz = 1.0;
};

struct DriftReport {
  double maxDriftM = 0.0;
  int warnCount = 0;           // entries into Warn from Ok
  double pausedS = 0.0;

  friend bool operator==(const DriftReport&, const DriftReport&) = default;
};

/// Tracks slow horizontal waist drift away from the calibrated zone center.
/// The offset is smoothed by a first-order 1 Hz low-pass, so the brief
/// sideways motion of a jump or hop does not register.
class SafetyMonitor {
 public:
  explicit SafetyMonitor(const CalibrationProfile& cal, const SafetyConfig& config = {});

  /// Consumes one frame (frames in time order). Frames without a valid waist
  /// leave the estimate unchanged.
  SafetyStatus update(const PoseFrame& frame);

  SafetyStatus status() const { return status_; }
  Vec2 drift() const { return {fx_.value(), fz_.value()}; }
  double driftMagnitude() const { return drift().norm(); }
  const std::vector<SafetyEvent>& events() const { return events_; }
  double lastTime() const { return lastT_; }

  /// Aggregates up to `endT`; an open pause is counted until then.
  DriftReport report(double endT) const;
  DriftReport report() const { return report(lastT_); }

 private:
  void transition(double t, SafetyStatus to);

  CalibrationProfile cal_;
  SafetyConfig config_;
  OnePoleLowPass fx_;
  OnePoleLowPass fz_;
  SafetyStatus status_ = SafetyStatus::Ok;
  std::vector<SafetyEvent> events_;
  double lastT_ = 0.0;
  bool seen_ = false;
  double maxDrift_ = 0.0;
};

}  // namespace jumpcoach
