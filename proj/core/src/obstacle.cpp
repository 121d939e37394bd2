#include "jumpcoach/playfield.hpp"

#include <algorithm>
#include <cmath>

namespace jumpcoach {

FieldRect tapField(const PlayfieldGeometry& g) {
  const double half = 0.5 * g.tapLaneWidth * kTapLanes;
  return {-half, half, g.tapFrontLine, g.tapFrontLine + g.tapFieldDepth};
}

FieldRect tapLane(int lane, const PlayfieldGeometry& g) {
  FieldRect r = tapField(g);
  r.lateralMin = -0.5 * g.tapLaneWidth * kTapLanes + g.tapLaneWidth * lane;
  r.lateralMax = r.lateralMin + g.tapLaneWidth;
  return r;
}

double tapLaneCenter(int lane, const PlayfieldGeometry& g) {
  const FieldRect r = tapLane(lane, g);
  return 0.5 * (r.lateralMin + r.lateralMax);
}

double tapTargetForward(const PlayfieldGeometry& g) { return g.tapFrontLine + 0.5 * g.tapFieldDepth; }

FieldRect hopField(const PlayfieldGeometry& g) {
  const double half = g.hopLaneSpacing * 0.5 * (kHopLanes - 1) + 0.5 * g.hopLaneWidth;
  return {-half, half, g.hopFieldBack, g.hopFieldFront};
}

double hopLaneCenter(int lane, const PlayfieldGeometry& g) {
  return g.hopLaneSpacing * (lane - 0.5 * (kHopLanes - 1));
}

std::array<Capsule, 5> bodyCapsules(const PoseFrame& f, const CalibrationProfile& cal, double radius) {
  auto sole = [&](Leg leg) {
    Vec3 p = f[shinOf(leg)];
    p.y -= std::max(0.0, cal.mountOffset(leg) - radius);
    return p;
  };
  return {Capsule{f[TrackerPoint::Head], f[TrackerPoint::Waist], radius},
          Capsule{f[TrackerPoint::Waist], f[TrackerPoint::LeftShin], radius},
          Capsule{f[TrackerPoint::Waist], f[TrackerPoint::RightShin], radius},
          Capsule{f[TrackerPoint::LeftShin], sole(Leg::Left), radius},
          Capsule{f[TrackerPoint::RightShin], sole(Leg::Right), radius}};
}

Aabb obstacleVolume(const Note& note, Tier tier, const CalibrationProfile& cal, double crossingTime, double t,
                    const PlayfieldGeometry& g) {
  const double h = cal.playerHeight;
  const double frac = obstacleFraction(note, tier);
  const double forward = g.obstacleSpeed * (crossingTime - t);
  const double zc = cal.zoneCenter.z - forward;
  const double cx = cal.zoneCenter.x;

  Aabb box;
  box.min = {cx - g.obstacleHalfWidth, cal.floorY, zc - 0.5 * g.obstacleThickness};
  box.max = {cx + g.obstacleHalfWidth, cal.floorY + g.ceilingHeight, zc + 0.5 * g.obstacleThickness};
  switch (note.kind) {
    case NoteKind::Hurdle: box.max.y = cal.floorY + frac * h; break;
    case NoteKind::CeilingBar: box.min.y = cal.floorY + frac * h; break;
    case NoteKind::WallLeft: box.max.x = cx - frac * h; break;
    case NoteKind::WallRight: box.min.x = cx + frac * h; break;
    default: break;
  }
  return box;
}

namespace {

double pointBoxDistanceSq(const Vec3& p, const Aabb& box) {
  auto axis = [](double v, double lo, double hi) {
    const double d = v < lo ? lo - v : (v > hi ? v - hi : 0.0);
    return d * d;
  };
  return axis(p.x, box.min.x, box.max.x) + axis(p.y, box.min.y, box.max.y) + axis(p.z, box.min.z, box.max.z);
}

}  // namespace

double segmentBoxDistanceSq(const Vec3& a, const Vec3& b, const Aabb& box) {
  // Distance from a point moving linearly to a convex set is convex in the
  // parameter, so golden-section search converges to the global minimum.
  const Vec3 d = b - a;
  auto f = [&](double s) { return pointBoxDistanceSq(a + d * s, box); };
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 64 && hi - lo > 1e-12; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({f(0.0), f(1.0), f1, f2});
}

bool intersects(const Capsule& c, const Aabb& box) {
  const double r = c.radius;
  if (std::min(c.a.x, c.b.x) - r > box.max.x || std::max(c.a.x, c.b.x) + r < box.min.x) return false;
  if (std::min(c.a.y, c.b.y) - r > box.max.y || std::max(c.a.y, c.b.y) + r < box.min.y) return false;
  if (std::min(c.a.z, c.b.z) - r > box.max.z || std::max(c.a.z, c.b.z) + r < box.min.z) return false;
  return segmentBoxDistanceSq(c.a, c.b, box) <= r * r;
}

}  // namespace jumpcoach
