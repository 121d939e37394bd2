#include <algorithm>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "jumpcoach/beatmap.hpp"
#include "jumpcoach/error.hpp"
#include "jumpcoach/lint.hpp"

using namespace jumpcoach;

namespace {

const LevelMaps& bundled() {
  static const LevelMaps maps = loadBundledMaps(JUMPCOACH_TEST_ASSET_DIR);
  return maps;
}

std::size_t count(const BeatMap& m, Tier t) { return m.notes(t).size(); }

ErrorCode codeOf(std::string_view text) {
  try {
    loadMap(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

nlohmann::json tapMapJson(const std::vector<double>& beats) {
  nlohmann::json notes = nlohmann::json::array();
  int k = 0;
  for (double b : beats) notes.push_back({{"beat", b}, {"lane", k % 4}, {"kind", k++ % 2 ? "RightFoot" : "LeftFoot"}});
  return {{"levelKind", "Tap"}, {"bpm", 128}, {"durationS", 114}, {"tiers", {notes, notes, notes}}};
}

bool hasRule(const std::vector<LintFinding>& f, LintRule r) {
  return std::any_of(f.begin(), f.end(), [&](const LintFinding& x) { return x.rule == r; });
}

}  // namespace

TEST(BundledMaps, TapCounts) {
  const auto& m = bundled().tap;
  EXPECT_EQ(count(m, Tier::Easy), 110u);
  EXPECT_EQ(count(m, Tier::Hard), 135u);
  EXPECT_LE(count(m, Tier::Easy), count(m, Tier::Medium));
  EXPECT_LE(count(m, Tier::Medium), count(m, Tier::Hard));
}

TEST(BundledMaps, HopCountsInRange) {
  const auto& m = bundled().hop;
  for (int t = 0; t < kTierCount; ++t) {
    EXPECT_GE(count(m, tierFromIndex(t)), 108u);
    EXPECT_LE(count(m, tierFromIndex(t)), 129u);
  }
}

TEST(BundledMaps, ObstacleCountsAndSharedTiming) {
  const auto& m = bundled().obstacle;
  for (int t = 0; t < kTierCount; ++t) {
    const auto& notes = m.notes(tierFromIndex(t));
    EXPECT_EQ(notes.size(), 65u);
    EXPECT_EQ(std::count_if(notes.begin(), notes.end(), [](const Note& n) { return n.kind == NoteKind::Hurdle; }), 24);
    EXPECT_EQ(notes, m.notes(Tier::Easy));
  }
  for (const auto& n : m.notes(Tier::Easy)) EXPECT_EQ(std::fmod(n.beat, kBeatsPerBar), 0.0);
}

TEST(BundledMaps, TempoAndDurations) {
  EXPECT_EQ(bundled().tap.bpm, 128.0);
  EXPECT_EQ(bundled().tap.durationS, 114.0);
  EXPECT_EQ(bundled().hop.durationS, 116.0);
  EXPECT_EQ(bundled().obstacle.durationS, 128.0);
}

TEST(BundledMaps, PassTheirOwnLint) {
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(lintMap(bundled().at(i)).empty()) << i;
}

TEST(BundledMaps, ColorsMatchFeet) {
  EXPECT_EQ(colorOf(NoteKind::LeftFoot), TileColor::Yellow);
  EXPECT_EQ(colorOf(NoteKind::RightFoot), TileColor::Purple);
}

TEST(LoadMap, RoundTripsThroughJson) {
  for (int i = 0; i < 3; ++i) EXPECT_EQ(loadMap(toJson(bundled().at(i))), bundled().at(i));
}

TEST(LoadMap, MalformedJsonIsParseError) { EXPECT_EQ(codeOf("{\"levelKind\": "), ErrorCode::ParseError); }

TEST(LoadMap, SchemaViolations) {
  auto j = tapMapJson({4, 6, 8});
  j["tiers"][0][1]["lane"] = 7;
  EXPECT_EQ(codeOf(j.dump()), ErrorCode::SchemaViolation);

  j = tapMapJson({4, 6, 8});
  j["tiers"][0][1]["kind"] = "BothFeet";
  EXPECT_EQ(codeOf(j.dump()), ErrorCode::SchemaViolation);

  j = tapMapJson({4, 8, 6});
  EXPECT_EQ(codeOf(j.dump()), ErrorCode::SchemaViolation);

  j = tapMapJson({4, 6, 8});
  j["tiers"].erase(2);
  EXPECT_EQ(codeOf(j.dump()), ErrorCode::SchemaViolation);

  j = tapMapJson({4, 6, 8});
  j["tiers"][2] = nlohmann::json::array();
  EXPECT_EQ(codeOf(j.dump()), ErrorCode::SchemaViolation);  // hard tier shrinks
}

TEST(LoadMap, ObstacleTiersMustShareTiming) {
  nlohmann::json a = {{{"beat", 4}, {"lane", 0}, {"kind", "Hurdle"}}};
  nlohmann::json b = {{{"beat", 8}, {"lane", 0}, {"kind", "Hurdle"}}};
  nlohmann::json j = {{"levelKind", "Obstacle"}, {"bpm", 128}, {"durationS", 128}, {"tiers", {a, a, b}}};
  EXPECT_EQ(codeOf(j.dump()), ErrorCode::SchemaViolation);
}

TEST(LoadMap, BundledFlagEnforcesCounts) {
  std::vector<double> beats;
  for (int i = 0; i < 90; ++i) beats.push_back(4 + 2 * i);
  auto j = tapMapJson(beats);
  EXPECT_NO_THROW(loadMap(j.dump()));
  j["bundled"] = true;
  EXPECT_EQ(codeOf(j.dump()), ErrorCode::CountMismatch);
}

TEST(ObstacleSize, TierDefaultsAndOverrides) {
  Note n{4, 0, NoteKind::Hurdle, {}};
  EXPECT_DOUBLE_EQ(obstacleFraction(n, Tier::Easy), 0.12);
  EXPECT_DOUBLE_EQ(obstacleFraction(n, Tier::Hard), 0.20);
  n.kind = NoteKind::CeilingBar;
  EXPECT_DOUBLE_EQ(obstacleFraction(n, Tier::Medium), 0.90);
  n.size.clearance = 0.8;
  EXPECT_DOUBLE_EQ(obstacleFraction(n, Tier::Medium), 0.8);
}

TEST(Lint, AlternatingIntervalsEveryBar) {
  std::vector<double> beats;
  double b = 4;
  for (int bar = 0; bar < 40; ++bar) {
    const double step = bar % 2 ? 2.0 : 1.0;
    for (double x = 0; x < 4; x += step) beats.push_back(b + x);
    b += 4;
  }
  const auto f = lintMap(parseMap(tapMapJson(beats).dump()));
  EXPECT_TRUE(hasRule(f, LintRule::IntervalChange));
  EXPECT_EQ(ruleTag(LintRule::IntervalChange), 'a');
}

TEST(Lint, OddIntervalIsFlagged) {
  std::vector<double> beats;
  for (int i = 0; i < 60; ++i) beats.push_back(4 + 3 * i);
  EXPECT_TRUE(hasRule(lintMap(parseMap(tapMapJson(beats).dump())), LintRule::IntervalSet));
}

TEST(Lint, FrequentLegSwitchesInHop) {
  nlohmann::json notes = nlohmann::json::array();
  for (int i = 0; i < 100; ++i) {
    const bool single = (i / 4) % 2 == 0;  // switch every 8 beats
    notes.push_back({{"beat", 4 + 2 * i}, {"lane", 2}, {"kind", single ? (i % 2 ? "RightFoot" : "LeftFoot") : "BothFeet"}});
  }
  nlohmann::json j = {{"levelKind", "Hop"}, {"bpm", 128}, {"durationS", 116}, {"tiers", {notes, notes, notes}}};
  const auto f = lintMap(parseMap(j.dump()));
  EXPECT_TRUE(hasRule(f, LintRule::LegSwitch));
  EXPECT_EQ(ruleTag(LintRule::LegSwitch), 'b');
}

TEST(Lint, MissingRestingPassage) {
  std::vector<double> beats;
  for (int i = 0; i < 110; ++i) beats.push_back(4 + 2 * i);
  const auto f = lintMap(parseMap(tapMapJson(beats).dump()));
  EXPECT_TRUE(hasRule(f, LintRule::RestingPassage));
  EXPECT_FALSE(hasRule(f, LintRule::IntervalChange));
}

TEST(Lint, BundledCountIsRuleD) {
  std::vector<double> beats;
  for (int i = 0; i < 90; ++i) beats.push_back(4 + 2 * i);
  auto j = tapMapJson(beats);
  j["bundled"] = true;
  const auto f = lintMap(parseMap(j.dump()));
  EXPECT_TRUE(hasRule(f, LintRule::BundledCount));
}
