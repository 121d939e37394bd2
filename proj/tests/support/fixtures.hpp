#pragma once

#include <functional>

#include "jumpcoach/calibration.hpp"
#include "jumpcoach/pose.hpp"

namespace jumpcoach::test {

/// Hand-built body used by the scripted streams: floor at 0, zone center at
/// the origin, player facing -z.
struct Body {
  double height = 1.80;
  double waistY = 1.00;
  double shinY = 0.35;
  double hipWidth = 0.25;
  double handY = 0.80;
  double handX = 0.25;
};

inline PoseFrame standingFrame(double t, const Body& b = {}) {
  PoseFrame f;
  f.t = t;
  f[TrackerPoint::Head] = {0.0, b.height, 0.0};
  f[TrackerPoint::Waist] = {0.0, b.waistY, 0.0};
  f[TrackerPoint::LeftShin] = {-0.5 * b.hipWidth, b.shinY, 0.0};
  f[TrackerPoint::RightShin] = {0.5 * b.hipWidth, b.shinY, 0.0};
  f[TrackerPoint::LeftHand] = {-b.handX, b.handY, 0.0};
  f[TrackerPoint::RightHand] = {b.handX, b.handY, 0.0};
  return f;
}

using Script = std::function<void(double t, PoseFrame& f)>;

/// 90 Hz frames on [t0, t1]; `script` edits each standing frame in place.
inline PoseStream scripted(double t0, double t1, const Script& script = {}, const Body& b = {}) {
  PoseStream out;
  for (long i = 0;; ++i) {
    const double t = t0 + static_cast<double>(i) / kNominalRateHz;
    if (t > t1 + 1e-9) break;
    PoseFrame f = standingFrame(t, b);
    if (script) script(t, f);
    out.push_back(f);
  }
  return out;
}

inline CalibrationProfile profileFor(const Body& b = {}) { return calibrate(scripted(0.0, 3.0, {}, b)); }

/// Smooth 0 -> 1 -> 0 bump over [a, b].
inline double bump(double t, double a, double b) {
  if (t <= a || t >= b) return 0.0;
  const double s = (t - a) / (b - a);
  return 16.0 * s * s * (1 - s) * (1 - s);
}

}  // namespace jumpcoach::test
