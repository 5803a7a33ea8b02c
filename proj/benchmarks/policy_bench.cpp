#include <benchmark/benchmark.h>

#include <vector>

#include "banditsim/environment.hpp"
#include "banditsim/policies.hpp"

namespace {

using banditsim::BernoulliBandit;
using banditsim::OutcomeModel;
using banditsim::PolicyKind;
using banditsim::RandomStream;
using banditsim::TrialRecord;

BernoulliBandit warmed_bandit(std::size_t arms) {
  BernoulliBandit bandit(arms);
  RandomStream rng(7);
  for (int i = 0; i < 1000; ++i) {
    bandit.update(rng.uniform_below(arms), rng.bernoulli(0.6) ? 1 : 0);
  }
  return bandit;
}

void BM_ThompsonSelect(benchmark::State& state) {
  const BernoulliBandit bandit = warmed_bandit(std::size_t(state.range(0)));
  const auto policy = banditsim::make_policy(PolicyKind::Thompson);
  RandomStream rng(11);
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(policy->select(bandit, t++, rng));
  }
}
BENCHMARK(BM_ThompsonSelect)->Arg(4)->Arg(16)->Arg(64);

void BM_UcbSelect(benchmark::State& state) {
  const BernoulliBandit bandit = warmed_bandit(std::size_t(state.range(0)));
  const auto policy = banditsim::make_policy(PolicyKind::Ucb);
  RandomStream rng(11);
  std::uint64_t t = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(policy->select(bandit, t++, rng));
  }
}
BENCHMARK(BM_UcbSelect)->Arg(4)->Arg(16)->Arg(64);

void BM_BetaSample(benchmark::State& state) {
  RandomStream rng(13);
  double alpha = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.beta(alpha, 3.0));
    alpha = alpha < 500.0 ? alpha + 0.25 : 1.0;
  }
}
BENCHMARK(BM_BetaSample);

void BM_EstimateModel(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  std::vector<TrialRecord> records(n);
  RandomStream rng(17);
  for (std::size_t i = 0; i < n; ++i) {
    records[i].context = {int(rng.uniform_below(2))};
    records[i].arm = rng.uniform_below(4);
    records[i].outcome = rng.bernoulli(0.6) ? 1 : 0;
    records[i].sequence = i;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(OutcomeModel::estimate(records, 4, false));
  }
}
BENCHMARK(BM_EstimateModel)->Arg(1000)->Arg(19435);

}  // namespace

BENCHMARK_MAIN();
