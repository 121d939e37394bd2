#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jumpcoach {

enum class LevelKind { Tap, Hop, Obstacle };
enum class NoteKind { LeftFoot, RightFoot, BothFeet, Hurdle, WallLeft, WallRight, CeilingBar };
enum class Tier { Easy = 0, Medium = 1, Hard = 2 };
enum class TileColor { None, Yellow, Purple, Both };

inline constexpr int kTierCount = 3;
inline constexpr double kBundledBpm = 128.0;
inline constexpr int kTapLanes = 4;
inline constexpr int kHopLanes = 5;
inline constexpr double kBeatsPerBar = 4.0;

std::string_view toString(LevelKind k);
std::string_view toString(NoteKind k);
std::string_view toString(Tier t);
std::optional<LevelKind> levelKindFromString(std::string_view s);
std::optional<NoteKind> noteKindFromString(std::string_view s);

inline int index(Tier t) { return static_cast<int>(t); }
inline Tier tierFromIndex(int i) { return static_cast<Tier>(i); }

TileColor colorOf(NoteKind k);
bool isSingleLeg(NoteKind k);
bool isObstacle(NoteKind k);

/// Obstacle dimensions as fractions of the calibrated player height. Unset
/// fields fall back to the per-tier defaults below.
struct SizeParams {
  std::optional<double> height;     // Hurdle: top of the wall above the floor
  std::optional<double> clearance;  // CeilingBar: underside of the bar above the floor
  std::optional<double> edge;       // WallLeft/WallRight: inner edge distance from center

  friend bool operator==(const SizeParams&, const SizeParams&) = default;
};

inline constexpr std::array<double, kTierCount> kHurdleHeight = {0.12, 0.16, 0.20};
inline constexpr std::array<double, kTierCount> kCeilingClearance = {0.95, 0.90, 0.85};
inline constexpr std::array<double, kTierCount> kWallEdge = {0.10, 0.07, 0.04};

struct Note {
  double beat = 0.0;
  int lane = 0;
  NoteKind kind = NoteKind::LeftFoot;
  SizeParams size{};

  friend bool operator==(const Note&, const Note&) = default;
};

/// Size fraction actually used for `note` at `tier`.
double obstacleFraction(const Note& note, Tier tier);

struct BeatMap {
  LevelKind kind = LevelKind::Tap;
  double bpm = kBundledBpm;
  double durationS = 120.0;
  bool bundled = false;
  std::array<std::vector<Note>, kTierCount> tiers;

  double secondsPerBeat() const { return 60.0 / bpm; }
  double timeOf(double beat) const { return beat * secondsPerBeat(); }
  double lastBeat() const { return durationS * bpm / 60.0; }
  const std::vector<Note>& notes(Tier t) const { return tiers[static_cast<std::size_t>(index(t))]; }

  friend bool operator==(const BeatMap&, const BeatMap&) = default;
};

/// Schema validation only: types, ranges, ordering, per-kind invariants.
/// Throws ParseError / SchemaViolation.
BeatMap parseMap(std::string_view bytes);

/// Count rules that apply to maps flagged `bundled`. Empty when satisfied.
std::vector<std::string> bundledCountFindings(const BeatMap& map);

/// parseMap plus the bundled count rules (CountMismatch).
BeatMap loadMap(std::string_view bytes);
BeatMap loadMapFile(const std::filesystem::path& path);

std::string toJson(const BeatMap& map);

/// The three rhythmic levels in play order.
struct LevelMaps {
  BeatMap tap;
  BeatMap hop;
  BeatMap obstacle;

  const BeatMap& at(int level) const { return level == 0 ? tap : level == 1 ? hop : obstacle; }
};

/// Loads tap.json, hop.json and obstacle.json from `<assetDir>/maps`.
LevelMaps loadBundledMaps(const std::filesystem::path& assetDir);

}  // namespace jumpcoach
