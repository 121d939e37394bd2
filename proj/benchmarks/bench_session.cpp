#include <benchmark/benchmark.h>

#include "jumpcoach/session.hpp"

using namespace jumpcoach;

namespace {

const LevelMaps& maps() {
  static const LevelMaps m = loadBundledMaps(JUMPCOACH_BENCH_ASSET_DIR);
  return m;
}

void BM_GenerateSession(benchmark::State& state) {
  PlayerModel m;
  m.baseSkill = 0.75;
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(generateSession(m, maps(), seed++));
}
BENCHMARK(BM_GenerateSession)->Unit(benchmark::kMillisecond);

void BM_ReplaySession(benchmark::State& state) {
  PlayerModel m;
  m.baseSkill = 0.75;
  const auto s = generateSession(m, maps(), 7);
  for (auto _ : state) {
    RecordedSource src(s.frames);
    benchmark::DoNotOptimize(runSession(src, maps(), s.calibration));
  }
}
BENCHMARK(BM_ReplaySession)->Unit(benchmark::kMillisecond);

}  // namespace
