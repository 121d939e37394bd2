#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "jumpcoach/beatmap.hpp"
#include "jumpcoach/calibration.hpp"
#include "jumpcoach/contact.hpp"
#include "jumpcoach/playfield.hpp"
#include "jumpcoach/pose.hpp"

namespace jumpcoach {

enum class Outcome { Hit, Miss };
enum class Violation { WrongFoot, BothFeetInField, PoseNotHeld, BodyContact, NoAction };

std::string_view toString(Outcome o);
std::string_view toString(Violation v);
std::optional<Violation> violationFromString(std::string_view s);

struct JudgedNote {
  Note note;
  Tier tier = Tier::Easy;
  double time = 0.0;        // stream time the note was due
  Outcome outcome = Outcome::Miss;
  double errorMs = 0.0;     // contact time minus due time; meaningful for Hit only
  std::optional<Violation> violation;
  bool suspended = false;   // judging was suspended by the safety monitor

  friend bool operator==(const JudgedNote&, const JudgedNote&) = default;
};

struct JudgeConfig {
  double windowS = 0.150;
  /// Frames before the window used to settle the contact hysteresis.
  double settleS = 0.5;
  PlayfieldGeometry geometry{};
  ContactConfig contact{};
};

/// A note whose pose must be held until the next note's window opens.
struct HeldNote {
  Note note;
  double time = 0.0;
};

// All judges take the note's due time in stream seconds; with no pauses this
// is the level start plus beat * 60 / bpm. They throw StreamGap when the
// stream does not cover the judgment interval or a dropout inside it lasts
// longer than the hold limit.

JudgedNote judgeTap(std::span<const PoseFrame> stream, const Note& note, double dueTime,
                    const CalibrationProfile& cal, Tier tier = Tier::Easy, const JudgeConfig& config = {});

JudgedNote judgeHop(std::span<const PoseFrame> stream, const Note& note, double dueTime,
                    const std::optional<HeldNote>& previous, const CalibrationProfile& cal, Tier tier = Tier::Easy,
                    const JudgeConfig& config = {});

/// `halfCrossingS` is half a bar: the obstacle is tracked over dueTime +/- that.
JudgedNote judgeObstacle(std::span<const PoseFrame> stream, const Note& note, double dueTime,
                         const CalibrationProfile& cal, Tier tier, double halfCrossingS,
                         const JudgeConfig& config = {});

/// Suspended note: judged Miss without inspecting the stream.
JudgedNote suspendedNote(const Note& note, double dueTime, Tier tier);

struct LevelScore {
  int hits = 0;
  int total = 0;
  double hitRatio = 1.0;  // 1.0 for an empty level
  double score = 0.0;

  friend bool operator==(const LevelScore&, const LevelScore&) = default;
};

/// 100 points per hit, +25% per difficulty tier above Easy.
LevelScore levelScore(std::span<const JudgedNote> judged);

}  // namespace jumpcoach
