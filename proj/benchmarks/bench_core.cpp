#include <benchmark/benchmark.h>

#include <numeric>

#include "progressftx/bounds.hpp"
#include "progressftx/harness.hpp"
#include "progressftx/stopping.hpp"

using namespace pftx;

namespace {

const ExperimentConfig& config() {
  static const ExperimentConfig cfg;
  return cfg;
}

void BM_ExpectedHUb(benchmark::State& state) {
  const double gain = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expected_h_ub(1.2, gain));
}
BENCHMARK(BM_ExpectedHUb)->Arg(1)->Arg(10)->Arg(40);

void BM_CalibrateForState(benchmark::State& state) {
  const GainTable table(default_profile(40));
  const IndexList received{0, 1, 2, 3, 4};
  for (auto _ : state)
    benchmark::DoNotOptimize(calibrate_for_state(0.8, table, received, 5, 5));
}
BENCHMARK(BM_CalibrateForState)->Unit(benchmark::kMicrosecond);

void BM_Select(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GainTable table(default_profile(n));
  IndexList received(n / 4);
  std::iota(received.begin(), received.end(), std::size_t{0});
  const std::vector<std::size_t> rates(8, 5);
  for (auto _ : state) benchmark::DoNotOptimize(select(table, received, rates));
}
BENCHMARK(BM_Select)->Arg(40)->Arg(400)->Arg(4000);

void BM_RunTrial(benchmark::State& state) {
  const auto& cfg = config();
  const GmModel model = cfg.build_model();
  const auto kind = static_cast<Scheme::Kind>(state.range(0));
  StoppingPolicy policy;
  policy.uncertainty_target = 0.1;
  const Protocol protocol(model, GainTable::from_model(model), ChannelModel(cfg.channel), policy,
                          Scheme{kind, 0.1});
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng srng = make_stream(1, i, StreamPurpose::Sample);
    Rng prng = make_stream(1, i++, StreamPurpose::Protocol);
    benchmark::DoNotOptimize(protocol.run_trial(sample(model, srng), prng));
  }
}
BENCHMARK(BM_RunTrial)
    ->Arg(static_cast<int>(Scheme::Kind::ProgressFtx))
    ->Arg(static_cast<int>(Scheme::Kind::OneShot))
    ->Arg(static_cast<int>(Scheme::Kind::RandomFeatureStopping))
    ->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
