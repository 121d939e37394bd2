#include "jumpcoach/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jumpcoach/error.hpp"

namespace jumpcoach {

Biquad Biquad::butterworthLowPass(double cutoffHz, double sampleRateHz) {
  if (!(sampleRateHz > 0.0) || !(cutoffHz > 0.0) || !(cutoffHz < 0.5 * sampleRateHz)) {
    throw Error(ErrorCode::InvalidCutoff, "cutoff " + std::to_string(cutoffHz) + " Hz outside (0, " +
                                              std::to_string(0.5 * sampleRateHz) + ")");
  }
  const double k = std::tan(std::numbers::pi * cutoffHz / sampleRateHz);
  const double k2 = k * k;
  const double norm = 1.0 / (1.0 + std::numbers::sqrt2 * k + k2);
  Biquad s;
  s.b0 = k2 * norm;
  s.b1 = 2.0 * s.b0;
  s.b2 = s.b0;
  s.a1 = 2.0 * (k2 - 1.0) * norm;
  s.a2 = (1.0 - std::numbers::sqrt2 * k + k2) * norm;
  return s;
}

namespace {

// Transposed direct form II, started from the steady state for input x0.
void runSection(const Biquad& s, std::vector<double>& x) {
  if (x.empty()) return;
  double z1 = (1.0 - s.b0) * x.front();
  double z2 = (s.b2 - s.a2) * x.front();
  for (double& v : x) {
    const double in = v;
    const double out = s.b0 * in + z1;
    z1 = s.b1 * in - s.a1 * out + z2;
    z2 = s.b2 * in - s.a2 * out;
    v = out;
  }
}

}  // namespace

std::vector<double> filtfilt(const Biquad& section, std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) return {x.begin(), x.end()};
  const std::size_t pad = std::min<std::size_t>(9, n - 1);

  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x.front() - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x.back() - x[n - 1 - i]);

  runSection(section, ext);
  std::reverse(ext.begin(), ext.end());
  runSection(section, ext);
  std::reverse(ext.begin(), ext.end());

  return {ext.begin() + static_cast<std::ptrdiff_t>(pad), ext.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

PoseStream lowpass(std::span<const PoseFrame> stream, double cutoffHz) {
  const double fs = 1.0 / medianInterval(stream);
  const Biquad section = Biquad::butterworthLowPass(cutoffHz, fs);
  PoseStream out(stream.begin(), stream.end());
  if (stream.size() < 2) return out;

  std::vector<double> channel(stream.size());
  for (std::size_t p = 0; p < kTrackerCount; ++p) {
    for (double Vec3::*axis : {&Vec3::x, &Vec3::y, &Vec3::z}) {
      for (std::size_t i = 0; i < stream.size(); ++i) channel[i] = stream[i].points[p].*axis;
      const auto filtered = filtfilt(section, channel);
      for (std::size_t i = 0; i < out.size(); ++i) out[i].points[p].*axis = filtered[i];
    }
  }
  return out;
}

OnePoleLowPass::OnePoleLowPass(double cutoffHz) {
  if (!(cutoffHz > 0.0)) throw Error(ErrorCode::InvalidCutoff, "cutoff must be positive");
  tau_ = 1.0 / (2.0 * std::numbers::pi * cutoffHz);
}

double OnePoleLowPass::update(double x, double dt) {
  if (!primed_) {
    reset(x);
    return y_;
  }
  const double alpha = 1.0 - std::exp(-std::max(dt, 0.0) / tau_);
  y_ += alpha * (x - y_);
  return y_;
}

void OnePoleLowPass::reset(double x) {
  y_ = x;
  primed_ = true;
}

}  // namespace jumpcoach
