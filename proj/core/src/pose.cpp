#include "jumpcoach/pose.hpp"

#include <algorithm>
#include <optional>

#include "jumpcoach/error.hpp"

namespace jumpcoach {

std::string_view toString(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientDuration: return "InsufficientDuration";
    case ErrorCode::ExcessiveMotion: return "ExcessiveMotion";
    case ErrorCode::TrackingDropout: return "TrackingDropout";
    case ErrorCode::InvalidCutoff: return "InvalidCutoff";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::StreamGap: return "StreamGap";
    case ErrorCode::LevelNotFinished: return "LevelNotFinished";
    case ErrorCode::MissingWaistData: return "MissingWaistData";
    case ErrorCode::MissingShinData: return "MissingShinData";
    case ErrorCode::MissingHandData: return "MissingHandData";
    case ErrorCode::InvalidAirtime: return "InvalidAirtime";
    case ErrorCode::StreamExhausted: return "StreamExhausted";
    case ErrorCode::CalibrationMissing: return "CalibrationMissing";
  }
  return "Unknown";
}

std::string_view trackerName(TrackerPoint p) {
  switch (p) {
    case TrackerPoint::Head: return "head";
    case TrackerPoint::LeftHand: return "lhand";
    case TrackerPoint::RightHand: return "rhand";
    case TrackerPoint::Waist: return "waist";
    case TrackerPoint::LeftShin: return "lshin";
    case TrackerPoint::RightShin: return "rshin";
  }
  return "?";
}

bool PoseFrame::allValid() const {
  return std::all_of(valid.begin(), valid.end(), [](bool v) { return v; });
}

std::size_t lowerIndex(std::span<const PoseFrame> frames, double time) {
  auto it = std::lower_bound(frames.begin(), frames.end(), time,
                             [](const PoseFrame& f, double t) { return f.t < t; });
  return static_cast<std::size_t>(it - frames.begin());
}

std::span<const PoseFrame> sliceByTime(std::span<const PoseFrame> frames, double from, double to) {
  const std::size_t begin = lowerIndex(frames, from);
  auto endIt = std::upper_bound(frames.begin() + static_cast<std::ptrdiff_t>(begin), frames.end(), to,
                                [](double t, const PoseFrame& f) { return t < f.t; });
  const std::size_t end = static_cast<std::size_t>(endIt - frames.begin());
  return frames.subspan(begin, end - begin);
}

double medianInterval(std::span<const PoseFrame> frames) {
  if (frames.size() < 2) return 1.0 / kNominalRateHz;
  std::vector<double> dts;
  dts.reserve(frames.size() - 1);
  for (std::size_t i = 1; i < frames.size(); ++i) dts.push_back(frames[i].t - frames[i - 1].t);
  auto mid = dts.begin() + static_cast<std::ptrdiff_t>(dts.size() / 2);
  std::nth_element(dts.begin(), mid, dts.end());
  return *mid;
}

DropoutRepair holdDropouts(std::span<const PoseFrame> frames, std::span<const TrackerPoint> points,
                           double maxHoldS) {
  DropoutRepair out;
  out.frames.assign(frames.begin(), frames.end());

  for (TrackerPoint p : points) {
    const auto idx = static_cast<std::size_t>(p);
    std::optional<std::size_t> lastValid;
    std::optional<std::size_t> gapStart;
    bool tooLong = false;
    auto closeGap = [&](std::size_t end) {
      // A gap that outlasts the hold is unusable from its first missing frame.
      if (gapStart && tooLong) out.unusable.emplace_back(out.frames[*gapStart].t, out.frames[end - 1].t);
      gapStart.reset();
      tooLong = false;
    };
    for (std::size_t i = 0; i < out.frames.size(); ++i) {
      PoseFrame& f = out.frames[i];
      if (frames[i].valid[idx]) {
        closeGap(i);
        lastValid = i;
        continue;
      }
      if (!gapStart) gapStart = i;
      if (lastValid) f.points[idx] = out.frames[*lastValid].points[idx];
      if (lastValid && (f.t - out.frames[*lastValid].t) <= maxHoldS + 1e-9) {
        f.valid[idx] = true;
      } else {
        tooLong = true;
      }
    }
    closeGap(out.frames.size());
  }
  std::sort(out.unusable.begin(), out.unusable.end());
  return out;
}

}  // namespace jumpcoach
