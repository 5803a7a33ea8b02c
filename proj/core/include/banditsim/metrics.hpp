#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "banditsim/policies.hpp"

namespace banditsim {

// One replay step: what was observed, what was chosen, and the ground truth
// it is scored against. step is 1-based.
struct StepLog {
  std::uint64_t step = 0;
  std::size_t context = 0;
  std::size_t arm = 0;
  int outcome = 0;
  std::size_t optimal_arm = 0;
  double theta_opt = 0.0;
  double theta_chosen = 0.0;
};

// Expected per-step shortfall against the best arm of the step's context.
double step_regret(double theta_opt, double theta_chosen);

// 1 when the chosen arm differs from the context's best arm.
int suboptimal_indicator(std::size_t chosen, std::size_t optimal);

// One policy's trajectory over one seeded run: cumulative regret and
// cumulative suboptimal-draw curves, one entry per step.
struct RunSummary {
  PolicyKind policy = PolicyKind::Random;
  std::uint64_t run_index = 0;
  std::uint64_t run_seed = 0;
  std::vector<double> cumulative_regret;
  std::vector<double> cumulative_suboptimal;

  double final_regret() const { return cumulative_regret.back(); }
  double final_suboptimal() const { return cumulative_suboptimal.back(); }
};

// Pointwise mean and percentile-band curves plus across-run moments of the
// final values, for one policy over its runs.
struct AggregateSummary {
  PolicyKind policy = PolicyKind::Random;
  std::size_t num_runs = 0;
  double band_low_pct = 25.0;
  double band_high_pct = 75.0;
  std::vector<double> mean_regret;
  std::vector<double> regret_band_low;
  std::vector<double> regret_band_high;
  std::vector<double> mean_suboptimal;
  std::vector<double> suboptimal_band_low;
  std::vector<double> suboptimal_band_high;
  double mean_final_regret = 0.0;
  double std_final_regret = 0.0;
  double mean_final_suboptimal = 0.0;
  double std_final_suboptimal = 0.0;
};

// Empirical percentile with linear interpolation between order statistics:
// rank = pct/100 * (n - 1) over the sorted values. pct in [0, 100].
double percentile(std::span<const double> values, double pct);

// Mean and sample standard deviation (n - 1 denominator; zero for a single
// value).
std::pair<double, double> mean_and_std(std::span<const double> values);

// Pointwise aggregation across runs of one policy. Requires at least two
// runs of equal length and identical policy.
AggregateSummary aggregate(std::span<const RunSummary> runs, double band_low_pct,
                           double band_high_pct);

// Per-run ratio of a policy's final value to the random baseline's, paired
// by run index, reported in percent as (mean, sample std). A zero baseline
// final makes the ratio meaningless and raises std::domain_error.
struct RatioStats {
  double mean_pct = 0.0;
  double std_pct = 0.0;
};

RatioStats relative_ratio(std::span<const double> policy_finals,
                          std::span<const double> random_finals);

}  // namespace banditsim
