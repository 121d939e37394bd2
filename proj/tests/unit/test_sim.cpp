#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "jumpcoach/error.hpp"
#include "jumpcoach/session.hpp"
#include "jumpcoach/sim/player.hpp"

using namespace jumpcoach;

namespace {

const LevelMaps& bundled() {
  static const LevelMaps maps = loadBundledMaps(JUMPCOACH_TEST_ASSET_DIR);
  return maps;
}

PlayerModel clean() {
  PlayerModel m;
  m.noiseSigmaM = 0.0;
  return m;
}

using Channel = std::pair<TrackerPoint, int>;  // axis 0 x, 1 y, 2 z

double axis(const Vec3& v, int a) { return a == 0 ? v.x : a == 1 ? v.y : v.z; }

std::set<Channel> changedChannels(const PoseStream& a, const PoseStream& b) {
  std::set<Channel> out;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    for (auto p : kAllTrackers)
      for (int k = 0; k < 3; ++k)
        if (std::abs(axis(a[i][p], k) - axis(b[i][p], k)) > 1e-12) out.insert({p, k});
  return out;
}

}  // namespace

TEST(SimPlayer, SameSeedSameStream) {
  PlayerModel m;
  m.noiseSigmaM = 0.005;
  m.flaws = {{FlawKind::ArmAsync, 90.0}};
  EXPECT_EQ(generateJumps(std::vector<BallisticJumpSpec>(2), m, 77), generateJumps(std::vector<BallisticJumpSpec>(2), m, 77));
  EXPECT_NE(generateJump({}, m, 77), generateJump({}, m, 78));
}

TEST(SimPlayer, ApexFromAirtime) {
  BallisticJumpSpec spec;
  spec.airtimeS = 0.557;
  EXPECT_DOUBLE_EQ(spec.apexM(), 9.81 * 0.557 * 0.557 / 8.0);
  const auto frames = generateJump(spec, clean(), 1);
  double peak = 0.0;
  for (const auto& f : frames) peak = std::max(peak, f[TrackerPoint::Waist].y);
  EXPECT_NEAR(peak - frames.front()[TrackerPoint::Waist].y, 0.3804, 0.003);
}

TEST(SimPlayer, AirtimeOutsideRangeRejected) {
  for (double bad : {0.1, 1.0, -0.5}) {
    BallisticJumpSpec spec;
    spec.airtimeS = bad;
    try {
      generateJump(spec, clean(), 1);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidAirtime);
    }
  }
}

TEST(SimPlayer, HardLandingDipsShinBelowStanding) {
  PlayerModel m = clean();
  m.flaws = {{FlawKind::HardLanding, 60.0}};
  const auto frames = generateJump({}, m, 2);
  const double standing = frames.front()[TrackerPoint::LeftShin].y;
  double lowest = standing;
  for (const auto& f : frames) lowest = std::min(lowest, f[TrackerPoint::LeftShin].y);
  // The trough falls between frames.
  EXPECT_NEAR(standing - lowest, 0.060, 0.001);
}

TEST(SimPlayer, FlawsTouchOnlyTheirChannels) {
  using enum TrackerPoint;
  const auto base = generateJump({}, clean(), 3);
  struct Case {
    Flaw flaw;
    std::set<Channel> allowed;
  };
  const Case cases[] = {
      {{FlawKind::StaggeredFeet, 80.0}, {{LeftShin, 1}}},
      {{FlawKind::HardLanding, 60.0}, {{LeftShin, 1}, {RightShin, 1}}},
      {{FlawKind::KneeCollapse, 0.6}, {{LeftShin, 0}, {RightShin, 0}}},
      {{FlawKind::ArmOverswing, 0.2}, {{LeftHand, 1}, {RightHand, 1}}},
      {{FlawKind::ArmAsync, 150.0}, {{LeftHand, 1}, {LeftHand, 2}}},
  };
  for (const auto& c : cases) {
    PlayerModel m = clean();
    m.flaws = {c.flaw};
    const auto changed = changedChannels(base, generateJump({}, m, 3));
    EXPECT_FALSE(changed.empty()) << toString(c.flaw.kind);
    for (const auto& ch : changed) EXPECT_TRUE(c.allowed.count(ch)) << toString(c.flaw.kind) << " moved " << trackerName(ch.first) << " axis " << ch.second;
  }
}

TEST(SimPlayer, InvalidModelRejected) {
  PlayerModel m;
  m.baseSkill = 1.5;
  EXPECT_THROW(SimPlayer(m, 1), Error);
  m = {};
  m.flaws = {{FlawKind::KneeCollapse, 1.5}};
  EXPECT_THROW(SimPlayer(m, 1), Error);
}

TEST(SimPlayer, SuccessProbabilityPerTier) {
  PlayerModel m;
  m.baseSkill = 0.8;
  EXPECT_DOUBLE_EQ(m.successProbability(Tier::Easy), 0.95);
  EXPECT_DOUBLE_EQ(m.successProbability(Tier::Medium), 0.8);
  EXPECT_DOUBLE_EQ(m.successProbability(Tier::Hard), 0.65);
}

TEST(SimPlayer, PerfectPlayerHitsEveryTier) {
  PlayerModel m = clean();
  m.timingJitterMs = 0.0;
  for (Tier t : {Tier::Easy, Tier::Medium, Tier::Hard}) {
    SessionConfig cfg;
    cfg.fixedTier = t;
    cfg.playJumpLevel = false;
    const auto s = generateSession(m, bundled(), 42, cfg);
    for (const auto& l : s.report.levels) EXPECT_EQ(l.score.hitRatio, 1.0) << toString(l.kind) << " " << toString(t);
  }
}

TEST(SimPlayer, MediumSkillHitRatioMatchesProbability) {
  PlayerModel m;
  m.baseSkill = 0.8;
  SessionConfig cfg;
  cfg.fixedTier = Tier::Medium;
  cfg.playJumpLevel = false;
  int hits = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto s = generateSession(m, bundled(), seed, cfg);
    for (const auto& l : s.report.levels) {
      hits += l.score.hits;
      total += l.score.total;
    }
  }
  EXPECT_NEAR(static_cast<double>(hits) / total, 0.80, 0.03);
}
