#include <benchmark/benchmark.h>

#include "jumpcoach/judge.hpp"
#include "jumpcoach/session.hpp"

using namespace jumpcoach;

namespace {

// One recorded tap note per iteration, taken from a perfect session.
struct TapFixture {
  GeneratedSession session;
  const LevelReport* level = nullptr;
};

const TapFixture& fixture() {
  static const TapFixture f = [] {
    TapFixture out;
    PlayerModel m;
    SessionConfig cfg;
    cfg.playLevel = {true, false, false};
    cfg.playJumpLevel = false;
    out.session = generateSession(m, loadBundledMaps(JUMPCOACH_BENCH_ASSET_DIR), 3, cfg);
    out.level = &out.session.report.levels.front();
    return out;
  }();
  return f;
}

void BM_JudgeTap(benchmark::State& state) {
  const auto& f = fixture();
  const auto& notes = f.level->notes;
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& n = notes[i++ % notes.size()];
    benchmark::DoNotOptimize(judgeTap(f.session.frames, n.note, n.time, f.session.calibration, n.tier));
  }
}
BENCHMARK(BM_JudgeTap);

}  // namespace
