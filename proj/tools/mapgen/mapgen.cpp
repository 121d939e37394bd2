// Writes the bundled beat maps. Output is deterministic; rerun after editing
// the section tables and commit the regenerated assets.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "jumpcoach/beatmap.hpp"

using namespace jumpcoach;

namespace {

enum class Legs { Both, Single, Alternate };

struct Section {
  double from;
  double to;  // exclusive
  double interval;
  Legs legs = Legs::Both;
};

constexpr double kBlockBeats = 16.0;

std::vector<Note> tapTier(const std::vector<Section>& sections) {
  std::vector<Note> out;
  int k = 0;
  for (const auto& s : sections) {
    for (double b = s.from; b < s.to; b += s.interval, ++k) {
      const bool left = k % 2 == 0;
      // Left foot works the two left lanes, right foot the two right lanes.
      const int lane = left ? (k / 2) % 2 : 2 + (k / 2 + 1) % 2;
      out.push_back({b, lane, left ? NoteKind::LeftFoot : NoteKind::RightFoot, {}});
    }
  }
  return out;
}

std::vector<Note> hopTier(const std::vector<Section>& sections) {
  static constexpr int kBothLanes[] = {2, 1, 2, 3};
  std::vector<Note> out;
  int k = 0;
  int single = 0;
  for (const auto& s : sections) {
    for (double b = s.from; b < s.to; b += s.interval, ++k) {
      bool isSingle = s.legs == Legs::Single;
      if (s.legs == Legs::Alternate) isSingle = static_cast<int>((b - s.from) / kBlockBeats) % 2 == 0;
      if (isSingle) {
        const bool left = single++ % 2 == 0;
        const int lane = left ? 1 + (single / 2) % 2 : 3 - (single / 2) % 2;
        out.push_back({b, lane, left ? NoteKind::LeftFoot : NoteKind::RightFoot, {}});
      } else {
        single = 0;
        out.push_back({b, kBothLanes[k % 4], NoteKind::BothFeet, {}});
      }
    }
  }
  return out;
}

BeatMap tapMap() {
  BeatMap m;
  m.kind = LevelKind::Tap;
  m.durationS = 114.0;
  m.bundled = true;
  m.tiers[0] = tapTier({{4, 72, 2}, {72, 104, 4}, {104, 240, 2}});
  m.tiers[1] = tapTier({{4, 72, 2}, {72, 104, 4}, {104, 136, 2}, {136, 168, 1}, {168, 232, 2}});
  m.tiers[2] = tapTier({{4, 40, 2}, {40, 72, 1}, {72, 104, 4}, {104, 136, 2}, {136, 197, 1}});
  return m;
}

BeatMap hopMap() {
  BeatMap m;
  m.kind = LevelKind::Hop;
  m.durationS = 116.0;
  m.bundled = true;
  m.tiers[0] = hopTier({{4, 68, 2}, {68, 100, 4}, {100, 236, 2, Legs::Alternate}});
  m.tiers[1] = hopTier({{4, 68, 2}, {68, 100, 4}, {100, 132, 2, Legs::Alternate}, {132, 164, 1, Legs::Single},
                        {164, 224, 2, Legs::Alternate}});
  m.tiers[2] = hopTier({{4, 36, 2}, {36, 68, 1, Legs::Single}, {68, 100, 4}, {100, 132, 2, Legs::Alternate},
                        {132, 164, 1, Legs::Single}, {164, 214, 2, Legs::Alternate}});
  return m;
}

BeatMap obstacleMap() {
  constexpr int kFirstBar = 1, kLastBar = 67, kRestBar = 33;  // bars 33 and 34 stay empty
  constexpr int kCount = 65, kHurdles = 24;
  static constexpr NoteKind kOthers[] = {NoteKind::WallLeft, NoteKind::CeilingBar, NoteKind::WallRight};
  std::vector<Note> notes;
  int i = 0, others = 0;
  for (int bar = kFirstBar; bar <= kLastBar; ++bar) {
    if (bar == kRestBar || bar == kRestBar + 1) continue;
    // Spread the hurdles evenly through the song.
    const bool hurdle = (i + 1) * kHurdles / kCount != i * kHurdles / kCount;
    const NoteKind kind = hurdle ? NoteKind::Hurdle : kOthers[others++ % 3];
    notes.push_back({bar * kBeatsPerBar, 0, kind, {}});
    ++i;
  }
  BeatMap m;
  m.kind = LevelKind::Obstacle;
  m.durationS = 128.0;
  m.bundled = true;
  m.tiers = {notes, notes, notes};
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the bundled beat maps"};
  std::filesystem::path outDir = "assets/maps";
  app.add_option("-o,--out", outDir, "output directory");
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(outDir);
  const std::pair<const char*, BeatMap> maps[] = {{"tap.json", tapMap()}, {"hop.json", hopMap()},
                                                  {"obstacle.json", obstacleMap()}};
  for (const auto& [name, map] : maps) {
    const std::string text = toJson(map);
    loadMap(text);  // throws if the tables drift away from the bundled counts
    std::ofstream(outDir / name) << text;
    std::cout << (outDir / name).string() << ": " << map.notes(Tier::Easy).size() << "/"
              << map.notes(Tier::Medium).size() << "/" << map.notes(Tier::Hard).size() << " notes\n";
  }
  return 0;
}
