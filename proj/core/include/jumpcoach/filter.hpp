#pragma once

#include <span>
#include <vector>

#include "jumpcoach/pose.hpp"

namespace jumpcoach {

inline constexpr double kReplayCutoffHz = 6.0;

/// Second-order Butterworth low-pass section (bilinear transform, prewarped).
/// Coefficients follow the `a0 = 1` convention.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;

  static Biquad butterworthLowPass(double cutoffHz, double sampleRateHz);
};

/// Forward-backward application of `section` with odd-reflection padding and
/// steady-state initial conditions. Zero phase; DC passes unchanged.
std::vector<double> filtfilt(const Biquad& section, std::span<const double> x);

/// Zero-phase low-pass of every coordinate of every tracker. The sample rate is
/// taken from the median frame interval; timestamps and validity flags are
/// copied through untouched.
PoseStream lowpass(std::span<const PoseFrame> stream, double cutoffHz);

/// First-order causal low-pass (exponential smoothing) with time constant
/// 1/(2*pi*cutoff); tolerates irregular sampling.
class OnePoleLowPass {
 public:
  explicit OnePoleLowPass(double cutoffHz);

  double update(double x, double dt);
  void reset(double x);
  bool primed() const { return primed_; }
  double value() const { return y_; }

 private:
  double tau_;
  double y_ = 0.0;
  bool primed_ = false;
};

}  // namespace jumpcoach
