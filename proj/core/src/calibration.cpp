#include "jumpcoach/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "jumpcoach/error.hpp"

namespace jumpcoach {

namespace {

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double stddev3(const std::vector<Vec3>& pts) {
  if (pts.size() < 2) return 0.0;
  Vec3 mean{};
  for (const auto& p : pts) mean += p;
  mean = mean * (1.0 / static_cast<double>(pts.size()));
  double acc = 0.0;
  for (const auto& p : pts) {
    const Vec3 d = p - mean;
    acc += d.dot(d);
  }
  return std::sqrt(acc / static_cast<double>(pts.size()));
}

}  // namespace

double shoulderHeightFor(double playerHeight, double standingWaistY) {
  return standingWaistY + kShoulderRatio * (playerHeight - standingWaistY);
}

void CalibrationProfile::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, "calibration: " + what); };
  if (!(playerHeight > 0.5 && playerHeight < 2.5)) fail("playerHeight out of (0.5, 2.5)");
  if (!(standingWaistY > 0.0 && standingWaistY < playerHeight)) fail("standingWaistY out of (0, playerHeight)");
  if (!(standingShinY[0] < standingWaistY && standingShinY[1] < standingWaistY)) fail("shin above waist");
  if (!(hipWidth > 0.0)) fail("hipWidth must be positive");
  if (!(zoneRadius > 0.0)) fail("zoneRadius must be positive");
}

bool operator==(const CalibrationProfile& a, const CalibrationProfile& b) {
  return a.playerHeight == b.playerHeight && a.standingWaistY == b.standingWaistY &&
         a.standingShinY[0] == b.standingShinY[0] && a.standingShinY[1] == b.standingShinY[1] &&
         a.shoulderY == b.shoulderY && a.hipWidth == b.hipWidth && a.floorY == b.floorY &&
         a.zoneCenter == b.zoneCenter && a.zoneRadius == b.zoneRadius;
}

CalibrationProfile calibrate(std::span<const PoseFrame> frames, const CalibrationOptions& options) {
  const auto [first, last] = std::minmax_element(frames.begin(), frames.end(),
                                                 [](const PoseFrame& a, const PoseFrame& b) { return a.t < b.t; });
  if (frames.size() < 2 || last->t - first->t < options.minDurationS - 1e-9) {
    throw Error(ErrorCode::InsufficientDuration,
                "calibration window shorter than " + std::to_string(options.minDurationS) + " s");
  }

  std::size_t invalid = 0;
  for (const auto& f : frames) invalid += f.allValid() ? 0 : 1;
  if (static_cast<double>(invalid) > options.maxInvalidFraction * static_cast<double>(frames.size())) {
    throw Error(ErrorCode::TrackingDropout,
                std::to_string(invalid) + " of " + std::to_string(frames.size()) + " frames invalid");
  }

  std::array<std::vector<Vec3>, kTrackerCount> samples;
  for (const auto& f : frames) {
    for (std::size_t i = 0; i < kTrackerCount; ++i) {
      if (f.valid[i]) samples[i].push_back(f.points[i]);
    }
  }
  for (TrackerPoint p : kAllTrackers) {
    const auto& pts = samples[static_cast<std::size_t>(p)];
    if (pts.empty()) {
      throw Error(ErrorCode::TrackingDropout, "no valid samples for " + std::string(trackerName(p)));
    }
    const double sd = stddev3(pts);
    if (sd >= options.maxStdDevM) {
      throw Error(ErrorCode::ExcessiveMotion,
                  std::string(trackerName(p)) + " moved " + std::to_string(sd) + " m (stddev)");
    }
  }

  auto medianOf = [&](TrackerPoint p, auto&& coord) {
    std::vector<double> v;
    for (const auto& q : samples[static_cast<std::size_t>(p)]) v.push_back(coord(q));
    return median(std::move(v));
  };
  auto ys = [](const Vec3& v) { return v.y; };

  CalibrationProfile cal;
  cal.playerHeight = medianOf(TrackerPoint::Head, ys);
  cal.standingWaistY = medianOf(TrackerPoint::Waist, ys);
  cal.standingShinY[0] = medianOf(TrackerPoint::LeftShin, ys);
  cal.standingShinY[1] = medianOf(TrackerPoint::RightShin, ys);
  cal.shoulderY = shoulderHeightFor(cal.playerHeight, cal.standingWaistY);
  cal.floorY = std::min(cal.standingShinY[0], cal.standingShinY[1]) - kShinMountOffsetM;
  cal.zoneCenter = {medianOf(TrackerPoint::Waist, [](const Vec3& v) { return v.x; }),
                    medianOf(TrackerPoint::Waist, [](const Vec3& v) { return v.z; })};
  cal.zoneRadius = options.zoneRadius;

  std::vector<double> separation;
  for (const auto& f : frames) {
    if (f.isValid(TrackerPoint::LeftShin) && f.isValid(TrackerPoint::RightShin)) {
      separation.push_back(std::abs(f[TrackerPoint::RightShin].x - f[TrackerPoint::LeftShin].x));
    }
  }
  if (separation.empty()) throw Error(ErrorCode::TrackingDropout, "no frame with both shins valid");
  cal.hipWidth = median(std::move(separation));

  cal.validate();
  return cal;
}

}  // namespace jumpcoach
