#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jumpcoach/calibration.hpp"
#include "jumpcoach/contact.hpp"
#include "jumpcoach/error.hpp"
#include "jumpcoach/pose_io.hpp"
#include "jumpcoach/sim/player.hpp"

using namespace jumpcoach;
using namespace jumpcoach::test;

namespace {

ErrorCode codeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Calibrate, ConstantWaistGivesThatHeight) {
  const auto cal = calibrate(scripted(0.0, 3.0));
  EXPECT_DOUBLE_EQ(cal.standingWaistY, 1.00);
  EXPECT_DOUBLE_EQ(cal.playerHeight, 1.80);
  EXPECT_DOUBLE_EQ(cal.hipWidth, 0.25);
  EXPECT_DOUBLE_EQ(cal.floorY, 0.35 - kShinMountOffsetM);
  EXPECT_DOUBLE_EQ(cal.shoulderY, 1.00 + 0.70 * 0.80);
  EXPECT_DOUBLE_EQ(cal.zoneCenter.x, 0.0);
  EXPECT_DOUBLE_EQ(cal.zoneCenter.z, 0.0);
}

TEST(Calibrate, OscillatingWaistIsExcessiveMotion) {
  const auto frames = scripted(0.0, 3.0, [](double t, PoseFrame& f) {
    f[TrackerPoint::Waist].y += 0.10 * std::sin(2.0 * std::numbers::pi * t);
  });
  EXPECT_EQ(codeOf([&] { calibrate(frames); }), ErrorCode::ExcessiveMotion);
}

TEST(Calibrate, ShortWindowIsInsufficient) {
  EXPECT_EQ(codeOf([] { calibrate(scripted(0.0, 1.5)); }), ErrorCode::InsufficientDuration);
}

TEST(Calibrate, TooManyDropoutsRejected) {
  auto frames = scripted(0.0, 3.0);
  for (std::size_t i = 0; i < frames.size(); i += 5) frames[i].valid[2] = false;  // 20%
  EXPECT_EQ(codeOf([&] { calibrate(frames); }), ErrorCode::TrackingDropout);
}

TEST(Calibrate, SyntheticPlayerHeightRecovered) {
  PlayerModel m;
  m.heightM = 1.80;
  const auto cal = calibrate(generateStanding(m, 3, 3.0));
  EXPECT_NEAR(cal.playerHeight, 1.80, 0.005);
}

TEST(Calibrate, FrameOrderDoesNotMatter) {
  PlayerModel m;
  m.noiseSigmaM = 0.004;
  auto frames = generateStanding(m, 11, 3.0);
  const auto expected = calibrate(frames);
  std::mt19937 rng(5);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(frames.begin(), frames.end(), rng);
    EXPECT_EQ(calibrate(frames), expected);
  }
}

TEST(Calibrate, ShoulderRatio) { EXPECT_DOUBLE_EQ(shoulderHeightFor(1.8, 1.0), 1.56); }

TEST(ContactState, StandingIsGrounded) {
  const auto cal = profileFor();
  const auto s = contactState(standingFrame(0.0), cal);
  EXPECT_TRUE(s.leftGrounded);
  EXPECT_TRUE(s.rightGrounded);
}

TEST(ContactState, RaisedFootIsAirborne) {
  const auto cal = profileFor();
  auto f = standingFrame(0.0);
  f[TrackerPoint::LeftShin].y += 0.15;
  const auto s = contactState(f, cal);
  EXPECT_FALSE(s.leftGrounded);
  EXPECT_TRUE(s.rightGrounded);
}

TEST(ContactState, HysteresisHoldsStateInsideTheBand) {
  const auto cal = profileFor();
  auto f = standingFrame(0.0);
  // 5 cm up: above the 4 cm threshold but inside the 2 cm band.
  f[TrackerPoint::LeftShin].y = cal.shinY(Leg::Left) + 0.05;
  ContactState grounded;
  EXPECT_TRUE(contactState(f, cal, grounded).leftGrounded);
  ContactState airborne;
  airborne.leftGrounded = false;
  EXPECT_FALSE(contactState(f, cal, airborne).leftGrounded);
  f[TrackerPoint::LeftShin].y = cal.shinY(Leg::Left) + 0.061;
  EXPECT_FALSE(contactState(f, cal, grounded).leftGrounded);
  f[TrackerPoint::LeftShin].y = cal.shinY(Leg::Left) + 0.039;
  EXPECT_TRUE(contactState(f, cal, airborne).leftGrounded);
}

TEST(ContactState, InPlayFieldFollowsTheRectangle) {
  const auto cal = profileFor();
  FieldRect field{-0.5, 0.5, 0.2, 0.7};
  auto f = standingFrame(0.0);
  f[TrackerPoint::RightShin].z = -0.45;  // 0.45 m forward
  const auto s = contactState(f, cal, std::nullopt, field);
  EXPECT_TRUE(s.inField(Leg::Right));
  EXPECT_FALSE(s.inField(Leg::Left));
}

TEST(ContactState, ReplayGivesIdenticalSequence) {
  PlayerModel m;
  m.noiseSigmaM = 0.005;
  const auto frames = generateJump({}, m, 4);
  const auto cal = calibrate(sliceByTime(frames, 0.0, 3.0));
  const auto a = analyzeContacts(frames, cal);
  const auto b = analyzeContacts(frames, cal);
  EXPECT_EQ(a.states, b.states);
  ASSERT_EQ(a.events.size(), b.events.size());
  std::optional<ContactState> prev;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    prev = contactState(frames[i], cal, prev);
    EXPECT_EQ(*prev, a.states[i]);
  }
}

TEST(ContactState, JumpTransitionsMatchScheduleWithinAFrame) {
  // Shins leave at takeoff and return at takeoff + airtime; the state flips
  // when the shin crosses the 6 cm / 4 cm levels, so compare against the
  // crossing times of the generated arc.
  PlayerModel m;
  m.noiseSigmaM = 0.0;
  BallisticJumpSpec spec;
  spec.airtimeS = 0.5;
  const auto frames = generateJump(spec, m, 1);
  const auto cal = calibrate(sliceByTime(frames, 0.0, 3.0));
  const auto tl = analyzeContacts(frames, cal);
  const double t0 = generatedTakeoffT(0);
  std::vector<ContactEvent> left;
  for (const auto& e : tl.events)
    if (e.leg == Leg::Left) left.push_back(e);
  ASSERT_EQ(left.size(), 2u);
  EXPECT_FALSE(left[0].touchdown);
  EXPECT_TRUE(left[1].touchdown);
  const double frame = 1.0 / kNominalRateHz;
  EXPECT_NEAR(left[0].t, t0, frame);
  EXPECT_NEAR(left[1].t, t0 + spec.airtimeS, frame);
}

TEST(Dropouts, ShortGapIsHeld) {
  auto frames = scripted(0.0, 1.0, [](double t, PoseFrame& f) { f[TrackerPoint::Waist].y = 1.0 + t; });
  for (std::size_t i = 40; i < 45; ++i) frames[i].valid[3] = false;  // ~55 ms
  const auto r = holdDropouts(frames);
  EXPECT_TRUE(r.unusable.empty());
  for (std::size_t i = 40; i < 45; ++i) EXPECT_DOUBLE_EQ(r.frames[i][TrackerPoint::Waist].y, frames[39][TrackerPoint::Waist].y);
}

TEST(Dropouts, LongGapIsUnusable) {
  auto frames = scripted(0.0, 1.0);
  for (std::size_t i = 40; i < 55; ++i) frames[i].valid[4] = false;  // ~167 ms
  const auto r = holdDropouts(frames);
  ASSERT_EQ(r.unusable.size(), 1u);
  EXPECT_LE(r.unusable[0].first, frames[40].t);
  EXPECT_GE(r.unusable[0].second, frames[54].t);
}

TEST(PoseIo, RoundTrip) {
  PlayerModel m;
  const auto frames = generateStanding(m, 2, 0.5);
  std::stringstream ss;
  writePoseJsonl(ss, frames);
  const auto back = readPoseJsonl(ss);
  ASSERT_EQ(back.size(), frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    EXPECT_DOUBLE_EQ(back[i].t, frames[i].t);
    for (auto p : kAllTrackers) EXPECT_DOUBLE_EQ(back[i][p].y, frames[i][p].y);
  }
}

TEST(PoseIo, NonMonotoneTimeRejectedWithLine) {
  std::stringstream ss;
  ss << toJsonLine(standingFrame(0.1)) << "\n" << toJsonLine(standingFrame(0.05)) << "\n";
  try {
    readPoseJsonl(ss);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(PoseIo, CorruptLineReportsLineNumber) {
  std::stringstream ss;
  ss << toJsonLine(standingFrame(0.0)) << "\n" << toJsonLine(standingFrame(0.1)) << "\n{\"t\": 0.2, \"head\": [\n";
  try {
    readPoseJsonl(ss);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(PoseIo, CalibrationRoundTrip) {
  const auto cal = profileFor();
  EXPECT_EQ(calibrationFromJson(calibrationToJson(cal)), cal);
  EXPECT_EQ(codeOf([] { calibrationFromJson("{\"playerHeight\": 1.8}"); }), ErrorCode::SchemaViolation);
}

TEST(PoseInvariants, SimulatedStreamsAreWellFormed) {
  PlayerModel m;
  m.noiseSigmaM = 0.005;
  m.flaws = {{FlawKind::HardLanding, 80.0}};
  const auto frames = generateJumps(std::vector<BallisticJumpSpec>(3), m, 9);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (i) EXPECT_GT(frames[i].t, frames[i - 1].t);
    for (auto p : kAllTrackers) EXPECT_GE(frames[i][p].y, kMinPlausibleY);
  }
}
