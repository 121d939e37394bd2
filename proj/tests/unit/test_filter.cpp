#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jumpcoach/error.hpp"
#include "jumpcoach/filter.hpp"
#include "jumpcoach/sim/player.hpp"

using namespace jumpcoach;
using namespace jumpcoach::test;

namespace {

constexpr double kFs = 90.0;

// Power gain of a forward-backward pass of a bilinear-transform Butterworth
// second-order section: |H|^2 = 1 / (1 + (tan(pi f / fs) / tan(pi fc / fs))^4).
double filtfiltGain(double f, double fc, double fs) {
  const double r = std::tan(std::numbers::pi * f / fs) / std::tan(std::numbers::pi * fc / fs);
  return 1.0 / (1.0 + std::pow(r, 4));
}

double rms(const std::vector<double>& a, const std::vector<double>& b, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t i = from; i < to; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(to - from));
}

std::vector<double> waistY(const PoseStream& s) {
  std::vector<double> out;
  for (const auto& f : s) out.push_back(f[TrackerPoint::Waist].y);
  return out;
}

}  // namespace

TEST(Lowpass, DcGainIsOne) {
  const auto frames = scripted(0.0, 4.0);
  const auto out = lowpass(frames, 6.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto p : kAllTrackers) {
      EXPECT_NEAR(out[i][p].y, frames[i][p].y, 1e-9);
      EXPECT_NEAR(out[i][p].x, frames[i][p].x, 1e-9);
    }
  }
}

TEST(Lowpass, AttenuationMatchesTransferFunction) {
  const double fc = 6.0;
  for (double f : {1.0, 3.0, 6.0, 12.0, 30.0}) {
    std::vector<double> x;
    for (int i = 0; i < 900; ++i) x.push_back(0.01 * std::sin(2.0 * std::numbers::pi * f * i / kFs + 0.3));
    const auto y = filtfilt(Biquad::butterworthLowPass(fc, kFs), x);
    // Steady-state amplitude away from the edges.
    double amp = 0.0;
    for (int i = 300; i < 600; ++i) amp = std::max(amp, std::abs(y[static_cast<std::size_t>(i)]));
    const double expected = 0.01 * filtfiltGain(f, fc, kFs);
    EXPECT_NEAR(amp, expected, 0.002 * 0.01 + 0.02 * expected) << f << " Hz";
  }
}

TEST(Lowpass, ThirtyHertzCentimetreSineDropsBelowAMillimetre) {
  auto frames = scripted(0.0, 5.0, [](double t, PoseFrame& f) {
    f[TrackerPoint::Waist].y += 0.01 * std::sin(2.0 * std::numbers::pi * 30.0 * t);
  });
  const auto out = lowpass(frames, 6.0);
  double amp = 0.0;
  for (std::size_t i = 90; i + 90 < out.size(); ++i) amp = std::max(amp, std::abs(out[i][TrackerPoint::Waist].y - 1.0));
  EXPECT_LT(amp, 0.001);
  EXPECT_LT(amp, 0.01 / 10.0);
}

TEST(Lowpass, NoisyBallisticArcErrorHalved) {
  PlayerModel clean;
  clean.noiseSigmaM = 0.0;
  PlayerModel noisy = clean;
  noisy.noiseSigmaM = 0.005;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto a = generateJump({}, clean, seed);
    const auto b = generateJump({}, noisy, seed);
    const auto truth = waistY(a);
    const auto raw = waistY(b);
    const auto filtered = waistY(lowpass(b, 6.0));
    const double before = rms(raw, truth, 0, truth.size());
    const double after = rms(filtered, truth, 0, truth.size());
    EXPECT_LE(after, 0.5 * before) << "seed " << seed;
  }
}

TEST(Lowpass, SmoothArcApexMovesLessThanTwoMillimetres) {
  PlayerModel m;
  m.noiseSigmaM = 0.0;
  for (double air : {0.3, 0.55, 0.8}) {
    BallisticJumpSpec spec;
    spec.airtimeS = air;
    const auto frames = generateJump(spec, m, 1);
    const auto y = waistY(frames);
    const auto f = waistY(lowpass(frames, 6.0));
    EXPECT_LT(std::abs(*std::max_element(y.begin(), y.end()) - *std::max_element(f.begin(), f.end())), 0.002);
  }
}

TEST(Lowpass, PreservesLengthAndTimestamps) {
  PlayerModel m;
  const auto frames = generateJump({}, m, 3);
  const auto out = lowpass(frames, 6.0);
  ASSERT_EQ(out.size(), frames.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].t, frames[i].t);
    EXPECT_EQ(out[i].valid, frames[i].valid);
  }
}

TEST(Lowpass, CutoffMustBeBelowNyquist) {
  const auto frames = scripted(0.0, 1.0);
  for (double bad : {0.0, -1.0, 45.0, 60.0}) {
    try {
      lowpass(frames, bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidCutoff);
    }
  }
}

TEST(OnePole, StepResponseTimeConstant) {
  OnePoleLowPass lp(1.0);
  lp.reset(0.0);
  const double dt = 1.0 / kFs;
  const double tau = 1.0 / (2.0 * std::numbers::pi);
  double t = 0.0;
  while (t < tau - 1e-12) {
    lp.update(1.0, dt);
    t += dt;
  }
  // Discrete steps land within a sample of the continuous 63% point.
  EXPECT_NEAR(lp.value(), 1.0 - std::exp(-t / tau), 0.02);
}
