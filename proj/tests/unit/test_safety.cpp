#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jumpcoach/safety.hpp"
#include "jumpcoach/sim/player.hpp"

using namespace jumpcoach;
using namespace jumpcoach::test;

namespace {

/// Continuous first-order response to a ramp v * (t - t0) starting from rest.
double lagged(double t, double t0, double v, double tau) {
  const double s = std::max(0.0, t - t0);
  return v * (s - tau * (1.0 - std::exp(-s / tau)));
}

SafetyMonitor run(const PoseStream& frames, const CalibrationProfile& cal) {
  SafetyMonitor m(cal);
  for (const auto& f : frames) m.update(f);
  return m;
}

Script waistAt(double forward) {
  return [forward](double, PoseFrame& f) { f[TrackerPoint::Waist].z = -forward; };
}

struct HopRun {
  int pausedAt = 0;  // 1-based hop during which Paused first appeared
  bool warned = false;
};

/// Runs `hops` both-feet hops on lane 2, one every `spacing` seconds.
HopRun hopRun(double driftPerAction, int hops, double spacing = 0.9375) {
  PlayerModel m;
  m.driftRatePerAction = driftPerAction;
  m.timingJitterMs = 0.0;
  SimPlayer p(m, 12);
  PoseStream calib;
  while (p.time() < 3.0) calib.push_back(*p.next());
  const auto cal = calibrate(calib);
  SafetyMonitor mon(cal);
  HopRun r;
  for (int k = 0; k < hops; ++k) {
    const double due = 5.0 + k * spacing;
    p.cueNote({LevelKind::Hop, {0, 2, NoteKind::BothFeet, {}}, Tier::Medium, due});
    while (p.time() < due + 0.5 * spacing) {
      const SafetyStatus s = mon.update(*p.next());
      if (s != SafetyStatus::Ok) r.warned = true;
      if (s == SafetyStatus::Paused) {
        r.pausedAt = k + 1;
        return r;
      }
    }
  }
  return r;
}

}  // namespace

TEST(Safety, CenteredIsOk) {
  const auto m = run(scripted(0.0, 5.0), profileFor());
  EXPECT_EQ(m.status(), SafetyStatus::Ok);
  EXPECT_EQ(m.driftMagnitude(), 0.0);
  EXPECT_TRUE(m.events().empty());
  EXPECT_EQ(m.report(), (DriftReport{0.0, 0, 0.0}));
}

TEST(Safety, RampPausesAfterFilterLag) {
  const auto cal = profileFor();
  const double t0 = 1.0, v = 0.1;
  const double tStar = t0 + cal.zoneRadius / v;  // raw offset reaches the radius
  const double tau = 1.0 / (2.0 * std::numbers::pi);
  // Oracle: first time the lagged ramp exceeds the radius.
  double lo = tStar, hi = tStar + 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (lagged(mid, t0, v, tau) > cal.zoneRadius ? hi : lo) = mid;
  }
  const auto frames = scripted(0.0, 10.0, [&](double t, PoseFrame& f) {
    f[TrackerPoint::Waist].z = -std::max(0.0, v * (t - t0));
  });
  const auto m = run(frames, cal);
  ASSERT_EQ(m.events().size(), 2u);
  EXPECT_EQ(m.events()[0].to, SafetyStatus::Warn);
  EXPECT_EQ(m.events()[1].to, SafetyStatus::Paused);
  EXPECT_NEAR(m.events()[1].t, hi, 2.0 / kNominalRateHz);
  EXPECT_NEAR(m.events()[1].t, tStar, 0.2);
  EXPECT_LT(m.events()[0].t, m.events()[1].t);
}

TEST(Safety, HysteresisOnWarnBoundary) {
  const auto cal = profileFor();
  // 0.42 m (> 0.40 warn), then 0.37 (inside the 5 cm band), then 0.34.
  const auto frames = scripted(0.0, 30.0, [](double t, PoseFrame& f) {
    const double d = t < 10 ? 0.42 : t < 20 ? 0.37 : 0.34;
    f[TrackerPoint::Waist].z = -d;
  });
  SafetyMonitor m(cal);
  for (const auto& f : frames) {
    m.update(f);
    if (f.t > 9.0 && f.t < 10.0) EXPECT_EQ(m.status(), SafetyStatus::Warn);
    if (f.t > 19.0 && f.t < 20.0) EXPECT_EQ(m.status(), SafetyStatus::Warn);
  }
  EXPECT_EQ(m.status(), SafetyStatus::Ok);
  const auto r = m.report();
  EXPECT_EQ(r.warnCount, 1);
  EXPECT_EQ(r.pausedS, 0.0);
  EXPECT_NEAR(r.maxDriftM, 0.42, 1e-6);
}

TEST(Safety, PausedTimeAccumulates) {
  const auto cal = profileFor();
  const auto frames = scripted(0.0, 30.0, [](double t, PoseFrame& f) { f[TrackerPoint::Waist].x = t < 10 || t > 20 ? 0.0 : 0.6; });
  const auto m = run(frames, cal);
  const auto r = m.report();
  EXPECT_EQ(r.warnCount, 1);
  EXPECT_NEAR(r.pausedS, 10.0, 0.5);
  EXPECT_EQ(m.status(), SafetyStatus::Ok);
}

TEST(SafetyProperty, NeverSkipsAState) {
  const auto cal = profileFor();
  std::mt19937_64 rng(8);
  std::normal_distribution<double> step(0.0, 0.02);
  double x = 0.0, z = 0.0;
  const auto frames = scripted(0.0, 300.0, [&](double, PoseFrame& f) {
    x = std::clamp(x + step(rng), -1.0, 1.0);
    z = std::clamp(z + step(rng), -1.0, 1.0);
    f[TrackerPoint::Waist].x = x;
    f[TrackerPoint::Waist].z = z;
  });
  const auto m = run(frames, cal);
  EXPECT_GT(m.events().size(), 2u);
  SafetyStatus s = SafetyStatus::Ok;
  for (const auto& e : m.events()) {
    EXPECT_EQ(e.from, s);
    EXPECT_EQ(std::abs(static_cast<int>(e.to) - static_cast<int>(e.from)), 1);
    s = e.to;
  }
}

TEST(SafetyProperty, VerticalMotionIgnored) {
  const auto cal = profileFor();
  const auto flat = scripted(0.0, 8.0, waistAt(0.3));
  const auto bouncing = scripted(0.0, 8.0, [](double t, PoseFrame& f) {
    f[TrackerPoint::Waist].z = -0.3;
    f[TrackerPoint::Waist].y += 0.4 * std::abs(std::sin(3.0 * t));
  });
  SafetyMonitor a(cal), b(cal);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    a.update(flat[i]);
    b.update(bouncing[i]);
    ASSERT_EQ(a.drift(), b.drift());
  }
}

TEST(Safety, InvalidWaistLeavesEstimate) {
  const auto cal = profileFor();
  SafetyMonitor m(cal);
  auto f = standingFrame(0.0);
  m.update(f);
  f.t = 0.5;
  f[TrackerPoint::Waist].z = -2.0;
  f.valid[static_cast<std::size_t>(TrackerPoint::Waist)] = false;
  EXPECT_EQ(m.update(f), SafetyStatus::Ok);
  EXPECT_EQ(m.driftMagnitude(), 0.0);
}

TEST(Safety, CentimetrePerHopPausesBeforeHopSixty) {
  const auto r = hopRun(0.01, 100);
  EXPECT_TRUE(r.warned);
  EXPECT_GT(r.pausedAt, 0);
  EXPECT_LT(r.pausedAt, 60);
}

TEST(Safety, InPlaceHopsNeverTrigger) {
  const auto r = hopRun(0.0, 100);
  EXPECT_FALSE(r.warned);
  EXPECT_EQ(r.pausedAt, 0);
}
