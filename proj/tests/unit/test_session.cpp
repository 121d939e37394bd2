#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "jumpcoach/session.hpp"

using namespace jumpcoach;

namespace {

const LevelMaps& bundled() {
  static const LevelMaps maps = loadBundledMaps(JUMPCOACH_TEST_ASSET_DIR);
  return maps;
}

PlayerModel perfect() {
  PlayerModel m;
  m.noiseSigmaM = 0.0;
  m.timingJitterMs = 0.0;
  return m;
}

const GeneratedSession& perfectSession() {
  static const GeneratedSession s = generateSession(perfect(), bundled(), 42);
  return s;
}

const GeneratedSession& typicalSession() {
  static const GeneratedSession s = [] {
    PlayerModel m;
    m.baseSkill = 0.75;
    return generateSession(m, bundled(), 7);
  }();
  return s;
}

bool pausedAt(const std::vector<SafetyEvent>& events, double t) {
  bool paused = false;
  for (const auto& e : events) {
    if (e.t > t) break;
    paused = e.to == SafetyStatus::Paused;
  }
  return paused;
}

}  // namespace

TEST(Session, PerfectPlayer) {
  const auto& r = perfectSession().report;
  ASSERT_EQ(r.levels.size(), 3u);
  EXPECT_EQ(r.levels[0].kind, LevelKind::Tap);
  EXPECT_EQ(r.levels[1].kind, LevelKind::Hop);
  EXPECT_EQ(r.levels[2].kind, LevelKind::Obstacle);
  for (const auto& l : r.levels) EXPECT_EQ(l.score.hitRatio, 1.0);
  ASSERT_EQ(r.jumps.size(), 5u);
  for (const auto& j : r.jumps)
    for (Criterion c : kAllCriteria) EXPECT_TRUE(j.record.result(c).pass);
  ASSERT_TRUE(r.jumpLevel.has_value());
  // The game ends soon after the fifth landing, well before the timeout.
  EXPECT_LT(r.jumpLevel->endT, r.jumps.back().record.landingT + 1.5);
  EXPECT_FALSE(r.partial);
}

TEST(Session, LevelOrderAndBreaks) {
  const auto& r = perfectSession().report;
  std::vector<int> breaks;
  for (const auto& m : r.messages)
    if (m.slot == MessageSlot::InterLevelBreak) breaks.push_back(m.after);
  EXPECT_EQ(breaks, (std::vector<int>{1, 2, 3}));
  for (std::size_t i = 1; i < r.levels.size(); ++i) EXPECT_GE(r.levels[i].startT, r.levels[i - 1].endT + 15.0);
  EXPECT_GE(r.jumpLevel->startT, r.levels.back().endT + 15.0);
}

TEST(Session, HighscoreSortedDescending) {
  const auto& r = typicalSession().report;
  ASSERT_EQ(r.highscore.size(), r.jumps.size());
  EXPECT_TRUE(std::is_sorted(r.highscore.begin(), r.highscore.end(),
                             [](const auto& a, const auto& b) { return a.jumpScore > b.jumpScore; }));
}

TEST(Session, BreakMessageBands) {
  EXPECT_EQ(breakMessage(0.95), breakMessage(0.9));
  EXPECT_NE(breakMessage(0.9), breakMessage(0.89));
  EXPECT_EQ(breakMessage(0.6), breakMessage(0.75));
  EXPECT_NE(breakMessage(0.6), breakMessage(0.59));
}

TEST(Session, CalibrationRequired) {
  RecordedSource src(perfectSession().frames);
  try {
    runSession(src, bundled(), std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CalibrationMissing);
  }
}

TEST(Session, TruncatedStreamGivesPartialReport) {
  const auto& s = perfectSession();
  const double cut = s.report.levels[1].startT + 30.0;
  const PoseStream head(s.frames.begin(), s.frames.begin() + static_cast<std::ptrdiff_t>(lowerIndex(s.frames, cut)));
  RecordedSource src(head);
  try {
    runSession(src, bundled(), s.calibration);
    FAIL();
  } catch (const StreamExhaustedError& e) {
    EXPECT_EQ(e.code(), ErrorCode::StreamExhausted);
    EXPECT_TRUE(e.partial().partial);
    ASSERT_EQ(e.partial().levels.size(), 1u);
    EXPECT_EQ(e.partial().levels[0], s.report.levels[0]);
  }
}

TEST(Session, ReplayReproducesReport) {
  const auto& s = typicalSession();
  RecordedSource src(s.frames);
  EXPECT_EQ(runSession(src, bundled(), s.calibration), s.report);
}

TEST(Session, DeterministicForSeed) {
  PlayerModel m;
  m.baseSkill = 0.75;
  EXPECT_EQ(generateSession(m, bundled(), 7).report, typicalSession().report);
}

TEST(SessionProperty, JudgedNotesFollowTheActiveTier) {
  for (const auto* s : {&perfectSession(), &typicalSession()}) {
    for (std::size_t level = 0; level < s->report.levels.size(); ++level) {
      const auto& lr = s->report.levels[level];
      const BeatMap& map = bundled().at(static_cast<int>(level));
      DifficultyController ctrl(lr.startT);
      double lastBeat = -1.0;
      for (const auto& j : lr.notes) {
        ASSERT_EQ(j.tier, ctrl.tier());
        const auto& notes = map.notes(j.tier);
        const auto it = std::upper_bound(notes.begin(), notes.end(), lastBeat,
                                         [](double b, const Note& n) { return b < n.beat; });
        ASSERT_NE(it, notes.end());
        EXPECT_EQ(j.note, *it);
        const auto remaining = std::distance(it, notes.end()) - 1;
        ctrl.update(j.outcome, j.time, remaining >= DifficultyController::kFrozenTail);
        lastBeat = j.note.beat;
      }
      // Nothing left in the final tier.
      const auto& tail = map.notes(ctrl.tier());
      EXPECT_TRUE(std::none_of(tail.begin(), tail.end(), [&](const Note& n) { return n.beat > lastBeat; }));
    }
  }
}

TEST(SessionProperty, DwellFractionsSumToOne) {
  for (const auto* s : {&perfectSession(), &typicalSession()}) {
    for (const auto& l : s->report.levels) EXPECT_NEAR(std::accumulate(l.dwell.begin(), l.dwell.end(), 0.0), 1.0, 1e-9);
    const auto all = s->report.overallDwell();
    EXPECT_NEAR(std::accumulate(all.begin(), all.end(), 0.0), 1.0, 1e-9);
  }
}

TEST(SessionProperty, NoHitsWhilePaused) {
  PlayerModel m;
  m.baseSkill = 0.9;
  m.driftRatePerAction = 0.03;
  const auto s = generateSession(m, bundled(), 5);
  const auto& r = s.report;
  ASSERT_GT(r.safety.pausedS, 0.0);
  int suspended = 0;
  for (const auto& l : r.levels) {
    for (const auto& j : l.notes) {
      if (pausedAt(r.safetyEvents, j.time)) EXPECT_EQ(j.outcome, Outcome::Miss);
      if (j.suspended) {
        ++suspended;
        EXPECT_EQ(j.outcome, Outcome::Miss);
      }
    }
  }
  EXPECT_GT(suspended, 0);
  RecordedSource src(s.frames);
  EXPECT_EQ(runSession(src, bundled(), s.calibration), r);
}

TEST(Session, OnlyJumpLevel) {
  SessionConfig cfg;
  cfg.playLevel = {false, false, false};
  const auto s = generateSession(perfect(), bundled(), 3, cfg);
  EXPECT_TRUE(s.report.levels.empty());
  EXPECT_EQ(s.report.jumps.size(), 5u);
  EXPECT_EQ(s.report.overallHitRatio(), 1.0);
}
