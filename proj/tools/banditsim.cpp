#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "banditsim/config.hpp"
#include "banditsim/runner.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::uint64_t seed = 0;
  std::uint64_t runs = 0;
  std::string policies;
  bool contextual = false;
  std::string out_dir;
  std::size_t workers = 0;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* runs_opt = nullptr;
  CLI::Option* policies_opt = nullptr;
  CLI::Option* contextual_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
};

void add_common_options(CLI::App& cmd, Overrides& ov) {
  cmd.add_option("--config", ov.config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  ov.seed_opt = cmd.add_option("--seed", ov.seed, "master seed override");
  ov.runs_opt = cmd.add_option("--runs", ov.runs, "run count override");
  ov.policies_opt =
      cmd.add_option("--policies", ov.policies,
                     "comma-separated policy list override (random,greedy,thompson,ucb)");
  ov.contextual_opt =
      cmd.add_option("--contextual", ov.contextual, "per-context bandits on/off override");
  ov.out_opt = cmd.add_option("--out", ov.out_dir, "output directory override");
  ov.workers_opt = cmd.add_option("--workers", ov.workers, "parallel worker count override");
}

banditsim::ExperimentConfig build_config(const Overrides& ov, banditsim::ExperimentMode mode) {
  banditsim::ExperimentConfig config = banditsim::load_config(ov.config_path);
  if (config.mode_specified && config.mode != mode) {
    throw std::invalid_argument("config file fixes the other mode; use the matching subcommand");
  }
  config.mode = mode;
  if (*ov.seed_opt) config.master_seed = ov.seed;
  if (*ov.runs_opt) config.runs = ov.runs;
  if (*ov.policies_opt) config.policies = banditsim::parse_policy_list(ov.policies);
  if (*ov.contextual_opt) config.contextual = ov.contextual;
  if (*ov.out_opt) config.out_dir = ov.out_dir;
  if (*ov.workers_opt) config.workers = ov.workers;
  banditsim::validate_config(config);
  return config;
}

void print_bundle(const banditsim::ResultsBundle& bundle, const std::string& out_dir) {
  using banditsim::format_real;
  std::cout << "mode=" << (bundle.mode == banditsim::ExperimentMode::Replay ? "replay" : "synth")
            << " contextual=" << (bundle.contextual ? "true" : "false")
            << " runs=" << bundle.num_runs << " seed=" << bundle.master_seed
            << " horizon=" << bundle.horizon << "\n";
  for (const banditsim::PolicyResults& pr : bundle.policies) {
    std::cout << "policy=" << banditsim::policy_name(pr.policy)
              << " mean_final_regret=" << format_real(pr.aggregate.mean_final_regret)
              << " std=" << format_real(pr.aggregate.std_final_regret)
              << " mean_final_suboptimal=" << format_real(pr.aggregate.mean_final_suboptimal)
              << " std=" << format_real(pr.aggregate.std_final_suboptimal);
    for (const banditsim::RatioReport& rr : bundle.ratios) {
      if (rr.policy != pr.policy) continue;
      std::cout << " regret_vs_random=" << format_real(rr.regret.mean_pct) << "%"
                << " suboptimal_vs_random=" << format_real(rr.suboptimal.mean_pct) << "%";
    }
    std::cout << "\n";
  }
  if (!out_dir.empty()) std::cout << "results written to " << out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beta-Bernoulli bandit replay and synthetic experiment runner"};
  app.require_subcommand(1);

  Overrides replay_ov;
  Overrides synth_ov;
  CLI::App* replay = app.add_subcommand("replay", "replay a recorded trial dataset");
  CLI::App* synth = app.add_subcommand("synth", "run against a synthetic outcome table");
  add_common_options(*replay, replay_ov);
  add_common_options(*synth, synth_ov);

  CLI11_PARSE(app, argc, argv);

  try {
    const bool is_replay = replay->parsed();
    const Overrides& ov = is_replay ? replay_ov : synth_ov;
    const banditsim::ExperimentConfig config = build_config(
        ov, is_replay ? banditsim::ExperimentMode::Replay : banditsim::ExperimentMode::Synth);
    const banditsim::ResultsBundle bundle = banditsim::run_experiment(config);
    print_bundle(bundle, config.out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
