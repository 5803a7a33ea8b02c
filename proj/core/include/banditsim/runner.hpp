#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "banditsim/config.hpp"
#include "banditsim/environment.hpp"
#include "banditsim/metrics.hpp"

namespace banditsim {

// Everything one (policy, run) job needs besides its seeds. In replay mode
// `records` supplies the context sequence and the horizon; in synthetic mode
// contexts are drawn from `context_weights` (one env-stream uniform per step
// when there is more than one context) for `horizon` steps.
struct RunSpec {
  const OutcomeModel* model = nullptr;
  const std::vector<TrialRecord>* records = nullptr;
  std::uint64_t horizon = 0;
  std::span<const double> context_weights;
  bool contextual = false;
  RegretMode regret_mode = RegretMode::Pseudo;
};

// Plays one policy through the whole sequence once: per participant, observe
// the context, select an arm, draw a Bernoulli outcome from the ground-truth
// model, update the posterior, and log the step. The environment stream is
// seeded independently of the policy stream so outcome randomness is shared
// across policies of the same run.
RunSummary run_single(const RunSpec& spec, PolicyKind policy, std::uint64_t run_index,
                      std::uint64_t env_seed, std::uint64_t policy_seed,
                      std::vector<StepLog>* steps_out);

std::uint64_t environment_seed(std::uint64_t master_seed, std::uint64_t run_index);
std::uint64_t policy_seed(std::uint64_t master_seed, PolicyKind policy, std::uint64_t run_index);

struct PolicyResults {
  PolicyKind policy = PolicyKind::Random;
  std::vector<RunSummary> runs;
  AggregateSummary aggregate;
};

// Table-style comparison of one policy's finals against the random
// baseline's, paired run by run.
struct RatioReport {
  PolicyKind policy = PolicyKind::Random;
  RatioStats regret;
  RatioStats suboptimal;
};

struct ResultsBundle {
  ExperimentMode mode = ExperimentMode::Replay;
  bool contextual = false;
  std::uint64_t horizon = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t num_runs = 0;
  double band_low_pct = 25.0;
  double band_high_pct = 75.0;
  RegretMode regret_mode = RegretMode::Pseudo;
  std::vector<PolicyResults> policies;
  std::vector<RatioReport> ratios;

  const PolicyResults& results_for(PolicyKind policy) const;
  const RatioReport& ratio_for(PolicyKind policy) const;
};

// Runs every (policy, run) job, in parallel up to config.workers, and
// aggregates. When config.out_dir is non-empty the full results bundle is
// also serialized there: steps_<policy>_<run>.csv per job,
// summary_<policy>.csv per policy, aggregate.txt, and the plot data files.
// Identical config and seed reproduce every file byte for byte.
ResultsBundle run_experiment(const ExperimentConfig& config);

// Writes plot_<policy>_<metric>.dat files (metric: regret, suboptimal) with
// columns `step mean band_low band_high`, one row per step.
void emit_plot_data(const ResultsBundle& bundle, const std::string& out_dir);

// Fixed-width-free decimal rendering used in every emitted file: shortest
// form at 9 significant digits.
std::string format_real(double value);

void write_step_csv(std::ostream& out, std::span<const StepLog> steps);

}  // namespace banditsim
