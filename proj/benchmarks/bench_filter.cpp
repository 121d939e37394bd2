#include <benchmark/benchmark.h>

#include "jumpcoach/filter.hpp"
#include "jumpcoach/jump.hpp"
#include "jumpcoach/safety.hpp"
#include "jumpcoach/sim/player.hpp"

using namespace jumpcoach;

namespace {

const PoseStream& jumps() {
  static const PoseStream frames = [] {
    PlayerModel m;
    return generateJumps(std::vector<BallisticJumpSpec>(5), m, 1);
  }();
  return frames;
}

void BM_ZeroPhaseLowPass(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lowpass(jumps(), 6.0));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(jumps().size()));
}
BENCHMARK(BM_ZeroPhaseLowPass);

void BM_SafetyMonitor(benchmark::State& state) {
  const auto cal = calibrate(sliceByTime(jumps(), 0.0, 3.0));
  for (auto _ : state) {
    SafetyMonitor mon(cal);
    for (const auto& f : jumps()) mon.update(f);
    benchmark::DoNotOptimize(mon.status());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(jumps().size()));
}
BENCHMARK(BM_SafetyMonitor);

void BM_AnalyzeJumps(benchmark::State& state) {
  const auto cal = calibrate(sliceByTime(jumps(), 0.0, 3.0));
  for (auto _ : state) benchmark::DoNotOptimize(analyzeJumps(jumps(), cal));
}
BENCHMARK(BM_AnalyzeJumps)->Unit(benchmark::kMillisecond);

}  // namespace
