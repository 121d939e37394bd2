#pragma once

#include <cstddef>
#include <vector>

namespace jumpcoach::sim {

/// Cubic Hermite piece: value p0 -> p1 over [t0, t1] with end slopes m0, m1
/// (units per second). Any polynomial up to degree three, ballistic arcs
/// included, is represented exactly.
struct Segment {
  double t0 = 0.0;
  double t1 = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
  double m0 = 0.0;
  double m1 = 0.0;

  double at(double t) const;
};

/// One scalar channel of the synthetic body. Between and after segments the
/// value holds; a new segment never starts before the previous one ends or
/// before the earliest time still open for generation.
class Track {
 public:
  explicit Track(double initial = 0.0) : initial_(initial) {}

  /// Appends a segment ending at `p1` after `duration`. Returns the actual
  /// start time, which is later than `t0` when the channel is still busy.
  double append(double t0, double duration, double p1, double m0 = 0.0, double m1 = 0.0);

  /// Value at `t`; any time order.
  double at(double t) const;
  /// Value at `t` for non-decreasing `t`; amortized constant time.
  double sample(double t);

  double end() const { return segments_.empty() ? -1e300 : segments_.back().t1; }
  double finalValue() const { return segments_.empty() ? initial_ : segments_.back().p1; }
  /// Segments may not start before `t` from now on.
  void setOpenFrom(double t) { openFrom_ = t; }

 private:
  double initial_;
  double openFrom_ = -1e300;
  std::vector<Segment> segments_;
  std::size_t cursor_ = 0;
};

/// Smooth (zero end slope) curve from p0 to p1; s in [0, 1].
double smoothstep(double p0, double p1, double s);

}  // namespace jumpcoach::sim
