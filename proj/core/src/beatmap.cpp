#include "jumpcoach/beatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "jumpcoach/error.hpp"

namespace jumpcoach {

std::string_view toString(LevelKind k) {
  switch (k) {
    case LevelKind::Tap: return "Tap";
    case LevelKind::Hop: return "Hop";
    case LevelKind::Obstacle: return "Obstacle";
  }
  return "?";
}

std::string_view toString(NoteKind k) {
  switch (k) {
    case NoteKind::LeftFoot: return "LeftFoot";
    case NoteKind::RightFoot: return "RightFoot";
    case NoteKind::BothFeet: return "BothFeet";
    case NoteKind::Hurdle: return "Hurdle";
    case NoteKind::WallLeft: return "WallLeft";
    case NoteKind::WallRight: return "WallRight";
    case NoteKind::CeilingBar: return "CeilingBar";
  }
  return "?";
}

std::string_view toString(Tier t) {
  switch (t) {
    case Tier::Easy: return "Easy";
    case Tier::Medium: return "Medium";
    case Tier::Hard: return "Hard";
  }
  return "?";
}

std::optional<LevelKind> levelKindFromString(std::string_view s) {
  for (LevelKind k : {LevelKind::Tap, LevelKind::Hop, LevelKind::Obstacle}) {
    if (toString(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<NoteKind> noteKindFromString(std::string_view s) {
  for (NoteKind k : {NoteKind::LeftFoot, NoteKind::RightFoot, NoteKind::BothFeet, NoteKind::Hurdle,
                     NoteKind::WallLeft, NoteKind::WallRight, NoteKind::CeilingBar}) {
    if (toString(k) == s) return k;
  }
  return std::nullopt;
}

TileColor colorOf(NoteKind k) {
  switch (k) {
    case NoteKind::LeftFoot: return TileColor::Yellow;
    case NoteKind::RightFoot: return TileColor::Purple;
    case NoteKind::BothFeet: return TileColor::Both;
    default: return TileColor::None;
  }
}

bool isSingleLeg(NoteKind k) { return k == NoteKind::LeftFoot || k == NoteKind::RightFoot; }

bool isObstacle(NoteKind k) {
  return k == NoteKind::Hurdle || k == NoteKind::WallLeft || k == NoteKind::WallRight || k == NoteKind::CeilingBar;
}

double obstacleFraction(const Note& note, Tier tier) {
  const auto t = static_cast<std::size_t>(index(tier));
  switch (note.kind) {
    case NoteKind::Hurdle: return note.size.height.value_or(kHurdleHeight[t]);
    case NoteKind::CeilingBar: return note.size.clearance.value_or(kCeilingClearance[t]);
    case NoteKind::WallLeft:
    case NoteKind::WallRight: return note.size.edge.value_or(kWallEdge[t]);
    default: return 0.0;
  }
}

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::SchemaViolation, msg); }

bool kindAllowed(LevelKind level, NoteKind note) {
  switch (level) {
    case LevelKind::Tap: return note == NoteKind::LeftFoot || note == NoteKind::RightFoot;
    case LevelKind::Hop: return note == NoteKind::LeftFoot || note == NoteKind::RightFoot || note == NoteKind::BothFeet;
    case LevelKind::Obstacle: return isObstacle(note);
  }
  return false;
}

int laneCount(LevelKind level) {
  switch (level) {
    case LevelKind::Tap: return kTapLanes;
    case LevelKind::Hop: return kHopLanes;
    case LevelKind::Obstacle: return 1;
  }
  return 1;
}

double requireNumber(const nlohmann::json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) schema(where + ": missing numeric \"" + key + "\"");
  const double v = it->get<double>();
  if (!std::isfinite(v)) schema(where + ": non-finite \"" + key + "\"");
  return v;
}

Note parseNote(const nlohmann::json& j, LevelKind level, double lastBeat, const std::string& where) {
  if (!j.is_object()) schema(where + ": note must be an object");
  Note n;
  n.beat = requireNumber(j, "beat", where);
  if (n.beat < 0.0 || n.beat > lastBeat + 1e-9) schema(where + ": beat outside the song");

  auto lane = j.find("lane");
  if (lane == j.end() || !lane->is_number_integer()) schema(where + ": missing integer \"lane\"");
  n.lane = lane->get<int>();
  if (n.lane < 0 || n.lane >= laneCount(level)) schema(where + ": lane out of range");

  auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) schema(where + ": missing \"kind\"");
  auto nk = noteKindFromString(kind->get<std::string>());
  if (!nk) schema(where + ": unknown kind \"" + kind->get<std::string>() + "\"");
  if (!kindAllowed(level, *nk)) schema(where + ": kind " + std::string(toString(*nk)) + " not allowed here");
  n.kind = *nk;

  if (auto sp = j.find("sizeParams"); sp != j.end() && !sp->is_null()) {
    if (!sp->is_object()) schema(where + ": sizeParams must be an object");
    for (auto it = sp->begin(); it != sp->end(); ++it) {
      if (!it->is_number()) schema(where + ": sizeParams." + it.key() + " must be numeric");
      const double v = it->get<double>();
      if (!(v > 0.0 && v < 2.0)) schema(where + ": sizeParams." + it.key() + " out of range");
      if (it.key() == "height") n.size.height = v;
      else if (it.key() == "clearance") n.size.clearance = v;
      else if (it.key() == "edge") n.size.edge = v;
      else schema(where + ": unknown sizeParams key \"" + it.key() + "\"");
    }
  }
  return n;
}

}  // namespace

BeatMap parseMap(std::string_view bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1 + static_cast<std::size_t>(std::count(bytes.begin(), bytes.begin() +
        static_cast<std::ptrdiff_t>(std::min<std::size_t>(e.byte, bytes.size())), '\n'));
    throw ParseError(line, e.what());
  }
  if (!j.is_object()) schema("map must be a JSON object");

  BeatMap map;
  auto kind = j.find("levelKind");
  if (kind == j.end() || !kind->is_string()) schema("missing \"levelKind\"");
  auto lk = levelKindFromString(kind->get<std::string>());
  if (!lk) schema("unknown levelKind \"" + kind->get<std::string>() + "\"");
  map.kind = *lk;
  map.bpm = requireNumber(j, "bpm", "map");
  map.durationS = requireNumber(j, "durationS", "map");
  if (!(map.bpm > 0.0)) schema("bpm must be positive");
  if (!(map.durationS > 0.0)) schema("durationS must be positive");
  if (auto b = j.find("bundled"); b != j.end()) {
    if (!b->is_boolean()) schema("\"bundled\" must be a boolean");
    map.bundled = b->get<bool>();
  }

  auto tiers = j.find("tiers");
  if (tiers == j.end() || !tiers->is_array() || tiers->size() != kTierCount) schema("\"tiers\" must hold 3 note lists");
  for (std::size_t t = 0; t < kTierCount; ++t) {
    const auto& list = (*tiers)[t];
    if (!list.is_array()) schema("tier " + std::to_string(t) + " must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "tier " + std::to_string(t) + " note " + std::to_string(i);
      map.tiers[t].push_back(parseNote(list[i], map.kind, map.lastBeat(), where));
      if (i > 0 && map.tiers[t][i].beat < map.tiers[t][i - 1].beat) schema(where + ": notes not sorted by beat");
    }
  }

  if (map.kind == LevelKind::Obstacle) {
    for (std::size_t t = 1; t < kTierCount; ++t) {
      if (map.tiers[t].size() != map.tiers[0].size()) schema("obstacle tiers must have identical note counts");
      for (std::size_t i = 0; i < map.tiers[0].size(); ++i) {
        const Note& a = map.tiers[0][i];
        const Note& b = map.tiers[t][i];
        if (a.beat != b.beat || a.kind != b.kind || a.lane != b.lane) {
          schema("obstacle tiers must share timing and kinds (note " + std::to_string(i) + ")");
        }
      }
    }
  } else {
    for (std::size_t t = 1; t < kTierCount; ++t) {
      if (map.tiers[t].size() < map.tiers[t - 1].size()) schema("tier note counts must not decrease with difficulty");
    }
  }
  return map;
}

std::vector<std::string> bundledCountFindings(const BeatMap& map) {
  std::vector<std::string> out;
  if (!map.bundled) return out;
  auto count = [&](int t) { return map.tiers[static_cast<std::size_t>(t)].size(); };
  if (map.bpm != kBundledBpm) out.push_back("bundled maps run at 128 BPM, found " + std::to_string(map.bpm));
  switch (map.kind) {
    case LevelKind::Tap:
      if (count(0) != 110) out.push_back("easy tier must hold 110 tiles, found " + std::to_string(count(0)));
      if (count(2) != 135) out.push_back("hard tier must hold 135 tiles, found " + std::to_string(count(2)));
      break;
    case LevelKind::Hop:
      for (int t = 0; t < kTierCount; ++t) {
        if (count(t) < 108 || count(t) > 129) {
          out.push_back("tier " + std::to_string(t) + " must hold 108..129 hops, found " + std::to_string(count(t)));
        }
      }
      break;
    case LevelKind::Obstacle: {
      for (int t = 0; t < kTierCount; ++t) {
        if (count(t) != 65) out.push_back("tier " + std::to_string(t) + " must hold 65 obstacles, found " +
                                          std::to_string(count(t)));
        const auto hurdles = std::count_if(map.tiers[static_cast<std::size_t>(t)].begin(),
                                           map.tiers[static_cast<std::size_t>(t)].end(),
                                           [](const Note& n) { return n.kind == NoteKind::Hurdle; });
        if (hurdles != 24) out.push_back("tier " + std::to_string(t) + " must hold 24 hurdles, found " +
                                         std::to_string(hurdles));
      }
      break;
    }
  }
  return out;
}

BeatMap loadMap(std::string_view bytes) {
  BeatMap map = parseMap(bytes);
  if (auto findings = bundledCountFindings(map); !findings.empty()) {
    throw Error(ErrorCode::CountMismatch, findings.front());
  }
  return map;
}

BeatMap loadMapFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return loadMap(ss.str());
}

std::string toJson(const BeatMap& map) {
  nlohmann::ordered_json j;
  j["levelKind"] = toString(map.kind);
  j["bpm"] = map.bpm;
  j["durationS"] = map.durationS;
  j["bundled"] = map.bundled;
  j["tiers"] = nlohmann::ordered_json::array();
  for (const auto& tier : map.tiers) {
    auto list = nlohmann::ordered_json::array();
    for (const Note& n : tier) {
      nlohmann::ordered_json note;
      note["beat"] = n.beat;
      note["lane"] = n.lane;
      note["kind"] = toString(n.kind);
      nlohmann::ordered_json size = nlohmann::ordered_json::object();
      if (n.size.height) size["height"] = *n.size.height;
      if (n.size.clearance) size["clearance"] = *n.size.clearance;
      if (n.size.edge) size["edge"] = *n.size.edge;
      if (!size.empty()) note["sizeParams"] = size;
      list.push_back(note);
    }
    j["tiers"].push_back(list);
  }
  return j.dump(1);
}

LevelMaps loadBundledMaps(const std::filesystem::path& assetDir) {
  const auto dir = assetDir / "maps";
  return {loadMapFile(dir / "tap.json"), loadMapFile(dir / "hop.json"), loadMapFile(dir / "obstacle.json")};
}

}  // namespace jumpcoach
