#pragma once

#include <array>

#include "jumpcoach/beatmap.hpp"
#include "jumpcoach/calibration.hpp"
#include "jumpcoach/contact.hpp"
#include "jumpcoach/geometry.hpp"
#include "jumpcoach/pose.hpp"

namespace jumpcoach {

/// Physical layout of the three rhythmic levels, relative to the calibrated
/// zone center.
struct PlayfieldGeometry {
  // Tap: four adjacent lanes along the front line.
  double tapLaneWidth = 0.25;
  double tapFrontLine = 0.20;
  double tapFieldDepth = 0.50;
  // Hop: five overlapping lanes at the player's position.
  double hopLaneSpacing = 0.15;
  double hopLaneWidth = 0.25;
  double hopFieldBack = -0.5;
  double hopFieldFront = 0.6;
  // Obstacles travel toward the player and pass the zone center on the beat.
  double obstacleSpeed = 3.0;
  double obstacleThickness = 0.10;
  double obstacleHalfWidth = 1.5;
  double ceilingHeight = 3.0;
  double bodyRadius = 0.12;
};

FieldRect tapField(const PlayfieldGeometry& g = {});
FieldRect tapLane(int lane, const PlayfieldGeometry& g = {});
double tapLaneCenter(int lane, const PlayfieldGeometry& g = {});
double tapTargetForward(const PlayfieldGeometry& g = {});

FieldRect hopField(const PlayfieldGeometry& g = {});
double hopLaneCenter(int lane, const PlayfieldGeometry& g = {});

struct Aabb {
  Vec3 min;
  Vec3 max;
};

struct Capsule {
  Vec3 a;
  Vec3 b;
  double radius = 0.0;
};

/// Body proxy: head-waist, waist-shin (x2) and shin-sole (x2) segments. The
/// sole end sits one radius above the sole so the capsule bottom touches the floor.
std::array<Capsule, 5> bodyCapsules(const PoseFrame& frame, const CalibrationProfile& cal, double radius);

/// World-space volume of an obstacle at stream time `t`, given the time at
/// which it crosses the zone center.
Aabb obstacleVolume(const Note& note, Tier tier, const CalibrationProfile& cal, double crossingTime, double t,
                    const PlayfieldGeometry& g = {});

double segmentBoxDistanceSq(const Vec3& a, const Vec3& b, const Aabb& box);
bool intersects(const Capsule& c, const Aabb& box);

}  // namespace jumpcoach
