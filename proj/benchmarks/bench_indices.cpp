#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "votepower/coalitions.hpp"
#include "votepower/indices.hpp"
#include "votepower/senate.hpp"
#include "votepower/stats.hpp"

using namespace votepower;

namespace {

// a dense synthetic game: n voters, weights cycling 1..9, majority quota
WeightedVotingGame synthetic_game(int n) {
  std::vector<long long> weights(static_cast<size_t>(n));
  long long total = 0;
  for (int i = 0; i < n; ++i) {
    weights[static_cast<size_t>(i)] = 1 + (i * 7 + 3) % 9;
    total += weights[static_cast<size_t>(i)];
  }
  return WeightedVotingGame(total / 2 + 1, std::move(weights));
}

void BM_ShapleyShubikDP(benchmark::State& state) {
  const auto game = synthetic_game(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shapley_shubik(game));
}
BENCHMARK(BM_ShapleyShubikDP)->Arg(8)->Arg(16)->Arg(32)->Arg(48)->Arg(64);

void BM_ShapleyPermutationOracle(benchmark::State& state) {
  const auto game = synthetic_game(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_shapley(game));
}
BENCHMARK(BM_ShapleyPermutationOracle)->Arg(6)->Arg(8)->Arg(9);

void BM_BanzhafDP(benchmark::State& state) {
  const auto game = synthetic_game(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(banzhaf(game));
}
BENCHMARK(BM_BanzhafDP)->Arg(16)->Arg(32)->Arg(64);

void BM_MinimalWinningDFS(benchmark::State& state) {
  const auto game = synthetic_game(static_cast<int>(state.range(0)));
  EnumerationLimits limits;
  limits.max_enumeration_voters = 24;
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_minimal_winning(game, limits));
}
BENCHMARK(BM_MinimalWinningDFS)->Arg(12)->Arg(16)->Arg(20);

void BM_DeeganPackel16(benchmark::State& state) {
  const auto ds = SenateDataset::bundled();
  const auto game = ds.party_game(0, LawType::QualifiedQuorum1of2);
  for (auto _ : state) benchmark::DoNotOptimize(deegan_packel(game));
}
BENCHMARK(BM_DeeganPackel16);

// the full 288-game batch with both primary indices (the reproduce workload)
void BM_FullBatchPrimaryIndices(benchmark::State& state) {
  const auto ds = SenateDataset::bundled();
  const auto games = ds.all_games();
  for (auto _ : state) {
    for (const auto& g : games) {
      benchmark::DoNotOptimize(shapley_shubik(g.game));
      benchmark::DoNotOptimize(deegan_packel(g.game));
    }
  }
}
BENCHMARK(BM_FullBatchPrimaryIndices)->Unit(benchmark::kMillisecond);

void BM_KendallSeries36(benchmark::State& state) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Series x{"x", {}}, y{"y", {}};
  for (int i = 0; i < 36; ++i) {
    x.values.push_back(dist(rng));
    y.values.push_back(dist(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(kendall(x, y));
}
BENCHMARK(BM_KendallSeries36);

void BM_CorrelateAllParties(benchmark::State& state) {
  const auto ds = SenateDataset::bundled();
  for (auto _ : state)
    benchmark::DoNotOptimize(ds.correlate_parties(
        IndexKind::ShapleyShubik, LawType::QualifiedQuorum1of2, CorrelationMethod::Kendall));
  state.SetLabel("120 pairs incl. timeline construction");
}
BENCHMARK(BM_CorrelateAllParties)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
