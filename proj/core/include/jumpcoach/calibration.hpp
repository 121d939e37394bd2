#pragma once

#include <span>

#include "jumpcoach/geometry.hpp"
#include "jumpcoach/pose.hpp"

namespace jumpcoach {

/// Height of the shin tracker above the sole while standing. Used to infer the
/// floor from standing shin readings.
inline constexpr double kShinMountOffsetM = 0.35;

/// Fraction of the waist-to-head span at which the shoulders sit.
inline constexpr double kShoulderRatio = 0.70;

inline constexpr double kDefaultZoneRadiusM = 0.5;

struct CalibrationProfile {
  double playerHeight = 0.0;    // standing head-tracker height
  double standingWaistY = 0.0;
  double standingShinY[2] = {0.0, 0.0};  // indexed by Leg
  double shoulderY = 0.0;
  double hipWidth = 0.0;        // lateral shin separation while standing
  double floorY = 0.0;
  Vec2 zoneCenter{};
  double zoneRadius = kDefaultZoneRadiusM;

  double shinY(Leg leg) const { return standingShinY[leg == Leg::Left ? 0 : 1]; }
  /// Per-leg sole-to-tracker distance implied by the calibration.
  double mountOffset(Leg leg) const { return shinY(leg) - floorY; }

  /// Throws InvalidArgument when a field violates the profile invariants.
  void validate() const;

  friend bool operator==(const CalibrationProfile& a, const CalibrationProfile& b);
};

struct CalibrationOptions {
  double minDurationS = 2.0;
  double maxStdDevM = 0.03;
  double maxInvalidFraction = 0.10;
  double zoneRadius = kDefaultZoneRadiusM;
};

/// Builds a profile from a standing-still window. Every field is a per-point
/// median, so the result does not depend on frame order.
CalibrationProfile calibrate(std::span<const PoseFrame> frames, const CalibrationOptions& options = {});

double shoulderHeightFor(double playerHeight, double standingWaistY);

}  // namespace jumpcoach
