#include "banditsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace banditsim {

double step_regret(double theta_opt, double theta_chosen) {
  if (!(theta_opt >= 0.0 && theta_opt <= 1.0) || !(theta_chosen >= 0.0 && theta_chosen <= 1.0)) {
    throw std::invalid_argument("step_regret: probabilities must lie in [0, 1]");
  }
  if (theta_chosen > theta_opt) {
    throw std::invalid_argument("step_regret: chosen arm cannot beat the optimal arm");
  }
  return theta_opt - theta_chosen;
}

int suboptimal_indicator(std::size_t chosen, std::size_t optimal) {
  return chosen == optimal ? 0 : 1;
}

double percentile(std::span<const double> values, double pct) {
  if (values.empty()) throw std::invalid_argument("percentile: no values");
  if (!(pct >= 0.0 && pct <= 100.0)) {
    throw std::invalid_argument("percentile: pct must lie in [0, 100]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = pct / 100.0 * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(rank);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::pair<double, double> mean_and_std(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean_and_std: no values");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

AggregateSummary aggregate(std::span<const RunSummary> runs, double band_low_pct,
                           double band_high_pct) {
  if (runs.size() < 2) throw std::invalid_argument("aggregate: need at least two runs");
  if (!(band_low_pct >= 0.0 && band_low_pct <= band_high_pct && band_high_pct <= 100.0)) {
    throw std::invalid_argument("aggregate: band percentiles must satisfy 0 <= low <= high <= 100");
  }
  const std::size_t n = runs.front().cumulative_regret.size();
  if (n == 0) throw std::invalid_argument("aggregate: empty curves");
  for (const RunSummary& run : runs) {
    if (run.policy != runs.front().policy) {
      throw std::invalid_argument("aggregate: runs mix policies");
    }
    if (run.cumulative_regret.size() != n || run.cumulative_suboptimal.size() != n) {
      throw std::invalid_argument("aggregate: ragged curve lengths");
    }
  }

  AggregateSummary out;
  out.policy = runs.front().policy;
  out.num_runs = runs.size();
  out.band_low_pct = band_low_pct;
  out.band_high_pct = band_high_pct;
  out.mean_regret.resize(n);
  out.regret_band_low.resize(n);
  out.regret_band_high.resize(n);
  out.mean_suboptimal.resize(n);
  out.suboptimal_band_low.resize(n);
  out.suboptimal_band_high.resize(n);

  std::vector<double> column(runs.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < runs.size(); ++r) column[r] = runs[r].cumulative_regret[i];
    out.mean_regret[i] = mean_and_std(column).first;
    out.regret_band_low[i] = percentile(column, band_low_pct);
    out.regret_band_high[i] = percentile(column, band_high_pct);

    for (std::size_t r = 0; r < runs.size(); ++r) column[r] = runs[r].cumulative_suboptimal[i];
    out.mean_suboptimal[i] = mean_and_std(column).first;
    out.suboptimal_band_low[i] = percentile(column, band_low_pct);
    out.suboptimal_band_high[i] = percentile(column, band_high_pct);
  }

  std::vector<double> finals(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) finals[r] = runs[r].final_regret();
  std::tie(out.mean_final_regret, out.std_final_regret) = mean_and_std(finals);
  for (std::size_t r = 0; r < runs.size(); ++r) finals[r] = runs[r].final_suboptimal();
  std::tie(out.mean_final_suboptimal, out.std_final_suboptimal) = mean_and_std(finals);
  return out;
}

RatioStats relative_ratio(std::span<const double> policy_finals,
                          std::span<const double> random_finals) {
  if (policy_finals.empty() || policy_finals.size() != random_finals.size()) {
    throw std::invalid_argument("relative_ratio: need equal, non-empty run counts");
  }
  std::vector<double> ratios(policy_finals.size());
  for (std::size_t r = 0; r < ratios.size(); ++r) {
    if (random_finals[r] == 0.0) {
      throw std::domain_error("relative_ratio: random baseline final is zero at run " +
                              std::to_string(r));
    }
    ratios[r] = policy_finals[r] / random_finals[r] * 100.0;
  }
  const auto [mean, sd] = mean_and_std(ratios);
  return RatioStats{mean, sd};
}

}  // namespace banditsim
