#include "jumpcoach/safety.hpp"

#include <algorithm>

namespace jumpcoach {

std::string_view toString(SafetyStatus s) {
  switch (s) {
    case SafetyStatus::Ok: return "Ok";
    case SafetyStatus::Warn: return "Warn";
    case SafetyStatus::Paused: return "Paused";
  }
  return "?";
}

SafetyMonitor::SafetyMonitor(const CalibrationProfile& cal, const SafetyConfig& config)
    : cal_(cal), config_(config), fx_(config.cutoffHz), fz_(config.cutoffHz) {}

void SafetyMonitor::transition(double t, SafetyStatus to) {
  events_.push_back({t, status_, to});
  status_ = to;
}

SafetyStatus SafetyMonitor::update(const PoseFrame& frame) {
  const double dt = seen_ ? frame.t - lastT_ : 0.0;
  lastT_ = frame.t;
  seen_ = true;
  if (!frame.isValid(TrackerPoint::Waist)) return status_;

  const Vec2 offset = horizontal(frame[TrackerPoint::Waist]) - cal_.zoneCenter;
  fx_.update(offset.x, dt);
  fz_.update(offset.z, dt);
  const double m = driftMagnitude();
  maxDrift_ = std::max(maxDrift_, m);

  const double pause = cal_.zoneRadius;
  const double warn = config_.warnFraction * cal_.zoneRadius;
  const double h = config_.hysteresisM;
  // Escalation passes through Warn; de-escalation through Warn as well.
  if (status_ == SafetyStatus::Ok && m > warn) transition(frame.t, SafetyStatus::Warn);
  if (status_ == SafetyStatus::Warn && m > pause) transition(frame.t, SafetyStatus::Paused);
  if (status_ == SafetyStatus::Paused && m <= pause - h) transition(frame.t, SafetyStatus::Warn);
  if (status_ == SafetyStatus::Warn && m <= warn - h) transition(frame.t, SafetyStatus::Ok);
  return status_;
}

DriftReport SafetyMonitor::report(double endT) const {
  DriftReport r;
  r.maxDriftM = maxDrift_;
  double pausedSince = -1.0;
  for (const SafetyEvent& e : events_) {
    if (e.from == SafetyStatus::Ok && e.to == SafetyStatus::Warn) ++r.warnCount;
    if (e.to == SafetyStatus::Paused) pausedSince = e.t;
    if (e.from == SafetyStatus::Paused && pausedSince >= 0.0) {
      r.pausedS += e.t - pausedSince;
      pausedSince = -1.0;
    }
  }
  if (pausedSince >= 0.0) r.pausedS += std::max(0.0, endT - pausedSince);
  return r;
}

}  // namespace jumpcoach
