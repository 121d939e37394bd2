#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jumpcoach/beatmap.hpp"
#include "jumpcoach/calibration.hpp"
#include "jumpcoach/difficulty.hpp"
#include "jumpcoach/error.hpp"
#include "jumpcoach/judge.hpp"
#include "jumpcoach/jump.hpp"
#include "jumpcoach/safety.hpp"
#include "jumpcoach/sim/player.hpp"
#include "jumpcoach/source.hpp"
#include "jumpcoach/technique.hpp"

namespace jumpcoach {

/// Frames before this time form the calibration window.
inline constexpr double kCalibrationWindowS = 3.0;

struct SessionConfig {
  double startT = 5.0;               // level 1 begins
  double restS = 15.0;               // break after each rhythmic level
  std::array<bool, 3> playLevel{true, true, true};   // Tap, Hop, Obstacle
  bool playJumpLevel = true;
  int jumpCount = 5;
  double jumpLevelTimeoutS = 60.0;
  std::optional<Tier> fixedTier;     // pins the tier, bypassing the controller
  JudgeConfig judge;
  TechniqueThresholds thresholds;
  SafetyConfig safety;
};

struct LevelReport {
  LevelKind kind = LevelKind::Tap;
  double startT = 0.0;
  double endT = 0.0;
  LevelScore score;
  DwellFractions dwell{1.0, 0.0, 0.0};
  std::vector<DwellInterval> dwellLog;
  std::vector<JudgedNote> notes;

  friend bool operator==(const LevelReport&, const LevelReport&) = default;
};

struct JumpLevelReport {
  double startT = 0.0;
  double endT = 0.0;
  int target = 5;

  friend bool operator==(const JumpLevelReport&, const JumpLevelReport&) = default;
};

/// A jump as reported: the record without its raw samples, plus feedback.
struct JumpEntry {
  JumpRecord record;
  JumpFeedback feedback;

  friend bool operator==(const JumpEntry&, const JumpEntry&) = default;
};

struct HighscoreEntry {
  int jumpScore = 0;
  double heightM = 0.0;
  int jump = 0;                      // 1-based jump number

  friend bool operator==(const HighscoreEntry&, const HighscoreEntry&) = default;
};

enum class MessageSlot { InterLevelBreak, PostJump };

struct FeedbackMessage {
  MessageSlot slot = MessageSlot::InterLevelBreak;
  int after = 0;                     // level number (1-3) or jump number (1-5)
  std::string text;

  friend bool operator==(const FeedbackMessage&, const FeedbackMessage&) = default;
};

struct SessionReport {
  std::vector<LevelReport> levels;   // rhythmic levels in play order
  std::optional<JumpLevelReport> jumpLevel;
  std::vector<JumpEntry> jumps;
  std::vector<HighscoreEntry> highscore;   // descending jumpScore
  DriftReport safety;
  std::vector<SafetyEvent> safetyEvents;
  std::vector<FeedbackMessage> messages;
  double startT = 0.0;
  double endT = 0.0;
  bool partial = false;
  std::string partialReason;

  /// Hits over judged notes across all rhythmic levels (1.0 when none).
  double overallHitRatio() const;
  /// Time-weighted tier shares across all rhythmic levels.
  DwellFractions overallDwell() const;

  friend bool operator==(const SessionReport&, const SessionReport&) = default;
};

/// Thrown when the stream ends before the session does; carries what was
/// completed so far.
class StreamExhaustedError : public Error {
 public:
  StreamExhaustedError(std::string what, SessionReport partial)
      : Error(ErrorCode::StreamExhausted, std::move(what)), partial_(std::move(partial)) {}
  const SessionReport& partial() const { return partial_; }

 private:
  SessionReport partial_;
};

std::string breakMessage(double hitRatio);

/// Plays tap, hop and obstacle levels (per config) followed by the jump level.
/// Throws CalibrationMissing without a profile, StreamExhaustedError when the
/// source runs dry.
SessionReport runSession(PoseSource& source, const LevelMaps& maps, const std::optional<CalibrationProfile>& cal,
                         const SessionConfig& config = {});

/// Calibration from the frames before kCalibrationWindowS.
CalibrationProfile calibrateFromStream(std::span<const PoseFrame> stream, const CalibrationOptions& options = {});

struct GeneratedSession {
  PoseStream frames;                 // exactly the frames the session consumed
  CalibrationProfile calibration;
  SessionReport report;
};

/// Closed-loop run of a synthetic player. Replaying `frames` through
/// runSession with the same maps and config reproduces `report`.
GeneratedSession generateSession(const PlayerModel& model, const LevelMaps& maps, std::uint64_t seed,
                                 const SessionConfig& config = {});

}  // namespace jumpcoach
