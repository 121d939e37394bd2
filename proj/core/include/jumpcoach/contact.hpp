#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "jumpcoach/calibration.hpp"
#include "jumpcoach/pose.hpp"

namespace jumpcoach {

struct ContactConfig {
  /// A foot touches down once its shin is below standingShinY + groundBandM.
  double groundBandM = 0.04;
  /// ...and only lifts off again once it rises hysteresisM above that band.
  double hysteresisM = 0.02;
  /// Level (above standingShinY) used to refine event times by interpolation.
  double touchLevelM = 0.01;
  /// How far refinement may search away from the hysteresis event.
  double refineSearchS = 0.25;
};

/// Axis-aligned rectangle on the floor, relative to the calibrated zone center.
/// `forward` grows toward the approaching content (-z in world coordinates).
struct FieldRect {
  double lateralMin = -0.5;
  double lateralMax = 0.5;
  double forwardMin = 0.2;
  double forwardMax = 0.7;

  bool contains(const Vec3& p, const Vec2& center) const;
};

struct ContactState {
  bool leftGrounded = true;
  bool rightGrounded = true;
  std::array<bool, 2> inPlayField{false, false};  // indexed by Leg

  bool grounded(Leg leg) const { return leg == Leg::Left ? leftGrounded : rightGrounded; }
  bool inField(Leg leg) const { return inPlayField[leg == Leg::Left ? 0 : 1]; }

  friend bool operator==(const ContactState&, const ContactState&) = default;
};

/// Pure step function: the next state depends only on the frame, the previous
/// state and the profile. Invalid shin samples carry the previous state.
ContactState contactState(const PoseFrame& frame, const CalibrationProfile& cal,
                          const std::optional<ContactState>& previous = std::nullopt,
                          const FieldRect& field = {}, const ContactConfig& config = {});

struct ContactEvent {
  Leg leg = Leg::Left;
  bool touchdown = false;   // false: liftoff
  double t = 0.0;           // refined event time
  std::size_t index = 0;    // first frame in the new state
};

struct ContactTimeline {
  std::vector<ContactState> states;   // one per frame
  std::vector<ContactEvent> events;   // ordered by index, then leg
};

ContactTimeline analyzeContacts(std::span<const PoseFrame> frames, const CalibrationProfile& cal,
                                const FieldRect& field = {}, const ContactConfig& config = {},
                                const std::optional<ContactState>& initial = std::nullopt);

}  // namespace jumpcoach
