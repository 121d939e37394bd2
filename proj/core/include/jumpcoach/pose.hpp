#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "jumpcoach/geometry.hpp"

namespace jumpcoach {

/// The six tracked body points, in file order.
enum class TrackerPoint : std::size_t { Head = 0, LeftHand, RightHand, Waist, LeftShin, RightShin };

inline constexpr std::size_t kTrackerCount = 6;
inline constexpr std::array<TrackerPoint, kTrackerCount> kAllTrackers = {
    TrackerPoint::Head,  TrackerPoint::LeftHand, TrackerPoint::RightHand,
    TrackerPoint::Waist, TrackerPoint::LeftShin, TrackerPoint::RightShin};

std::string_view trackerName(TrackerPoint p);

enum class Leg { Left, Right };

inline TrackerPoint shinOf(Leg leg) {
  return leg == Leg::Left ? TrackerPoint::LeftShin : TrackerPoint::RightShin;
}
inline TrackerPoint handOf(Leg side) {
  return side == Leg::Left ? TrackerPoint::LeftHand : TrackerPoint::RightHand;
}
inline Leg otherLeg(Leg leg) { return leg == Leg::Left ? Leg::Right : Leg::Left; }

/// Nominal tracker sample rate.
inline constexpr double kNominalRateHz = 90.0;

/// Lowest admissible y reading; shin dips below the floor are expected on hard landings.
inline constexpr double kMinPlausibleY = -0.2;

struct PoseFrame {
  double t = 0.0;
  std::array<Vec3, kTrackerCount> points{};
  std::array<bool, kTrackerCount> valid{true, true, true, true, true, true};

  const Vec3& operator[](TrackerPoint p) const { return points[static_cast<std::size_t>(p)]; }
  Vec3& operator[](TrackerPoint p) { return points[static_cast<std::size_t>(p)]; }
  bool isValid(TrackerPoint p) const { return valid[static_cast<std::size_t>(p)]; }
  bool allValid() const;

  friend bool operator==(const PoseFrame&, const PoseFrame&) = default;
};

using PoseStream = std::vector<PoseFrame>;

/// Index of the first frame with t >= time (frames sorted by t).
std::size_t lowerIndex(std::span<const PoseFrame> frames, double time);

/// Frames with t in [from, to].
std::span<const PoseFrame> sliceByTime(std::span<const PoseFrame> frames, double from, double to);

/// Median sample interval; 1/kNominalRateHz for streams shorter than two frames.
double medianInterval(std::span<const PoseFrame> frames);

/// Result of dropout repair: invalid samples are replaced by the last valid
/// value of that point when the gap is at most `maxHoldS`; longer gaps are
/// reported as unusable time ranges.
struct DropoutRepair {
  PoseStream frames;
  std::vector<std::pair<double, double>> unusable;
};

inline constexpr double kMaxDropoutHoldS = 0.100;

DropoutRepair holdDropouts(std::span<const PoseFrame> frames,
                           std::span<const TrackerPoint> points = kAllTrackers,
                           double maxHoldS = kMaxDropoutHoldS);

}  // namespace jumpcoach
