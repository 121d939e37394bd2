#include "jumpcoach/sim/track.hpp"

#include <algorithm>

namespace jumpcoach::sim {

double Segment::at(double t) const {
  const double T = t1 - t0;
  if (T <= 0.0) return p1;
  const double s = std::clamp((t - t0) / T, 0.0, 1.0);
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * p0 + h10 * T * m0 + h01 * p1 + h11 * T * m1;
}

double Track::append(double t0, double duration, double p1, double m0, double m1) {
  const double start = std::max({t0, end(), openFrom_});
  const double p0 = at(start);
  segments_.push_back({start, start + std::max(duration, 0.0), p0, p1, m0, m1});
  return start;
}

double Track::at(double t) const {
  if (segments_.empty() || t < segments_.front().t0) return initial_;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double v, const Segment& s) { return v < s.t0; });
  return (it - 1)->at(t);
}

double Track::sample(double t) {
  if (segments_.empty() || t < segments_.front().t0) return initial_;
  if (cursor_ >= segments_.size()) cursor_ = segments_.size() - 1;
  while (cursor_ + 1 < segments_.size() && segments_[cursor_ + 1].t0 <= t) ++cursor_;
  while (cursor_ > 0 && segments_[cursor_].t0 > t) --cursor_;
  return segments_[cursor_].at(t);
}

double smoothstep(double p0, double p1, double s) {
  s = std::clamp(s, 0.0, 1.0);
  return p0 + (p1 - p0) * s * s * (3.0 - 2.0 * s);
}

}  // namespace jumpcoach::sim
