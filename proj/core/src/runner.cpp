#include "banditsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "banditsim/contextual.hpp"

namespace banditsim {
namespace {

// Domain tags keeping environment and policy streams disjoint even for
// run 0 / policy 0.
constexpr std::uint64_t kEnvDomain = 0x656E76;
constexpr std::uint64_t kPolicyDomain = 0x706F6C;

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::uint64_t environment_seed(std::uint64_t master_seed, std::uint64_t run_index) {
  return derive_seed(master_seed, {kEnvDomain, run_index});
}

std::uint64_t policy_seed(std::uint64_t master_seed, PolicyKind policy, std::uint64_t run_index) {
  return derive_seed(master_seed, {kPolicyDomain, policy_stream_key(policy), run_index});
}

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

void write_step_csv(std::ostream& out, std::span<const StepLog> steps) {
  out << "step,context,arm,outcome,optimal_arm,theta_opt,theta_chosen\n";
  for (const StepLog& s : steps) {
    out << s.step << ',' << s.context << ',' << s.arm << ',' << s.outcome << ',' << s.optimal_arm
        << ',' << format_real(s.theta_opt) << ',' << format_real(s.theta_chosen) << '\n';
  }
}

RunSummary run_single(const RunSpec& spec, PolicyKind policy, std::uint64_t run_index,
                      std::uint64_t env_seed, std::uint64_t pol_seed,
                      std::vector<StepLog>* steps_out) {
  if (spec.model == nullptr) throw std::invalid_argument("run_single: no outcome model");
  if (spec.horizon == 0) throw std::invalid_argument("run_single: zero horizon");
  const OutcomeModel& model = *spec.model;
  const bool replay = spec.records != nullptr;
  if (replay && spec.records->size() != spec.horizon) {
    throw std::invalid_argument("run_single: horizon does not match record count");
  }

  RandomStream env_rng(env_seed);
  RandomStream pol_rng(pol_seed);
  const std::unique_ptr<Policy> selector = make_policy(policy);

  const bool draw_context = !replay && model.num_features() > 0;
  std::vector<double> uniform_weights;
  std::span<const double> weights = spec.context_weights;
  if (draw_context && weights.empty()) {
    uniform_weights.assign(model.num_contexts(), 1.0);
    weights = uniform_weights;
  }

  ContextualBandit per_context(model.num_arms(), model.num_features());
  BernoulliBandit flat(model.num_arms());
  std::unordered_map<ContextIndex, std::pair<std::size_t, double>> optimal_cache;

  RunSummary summary;
  summary.policy = policy;
  summary.run_index = run_index;
  summary.run_seed = pol_seed;
  summary.cumulative_regret.reserve(spec.horizon);
  summary.cumulative_suboptimal.reserve(spec.horizon);
  if (steps_out) steps_out->reserve(spec.horizon);

  double cum_regret = 0.0;
  double cum_suboptimal = 0.0;
  for (std::uint64_t i = 0; i < spec.horizon; ++i) {
    ContextIndex ctx = 0;
    if (replay) {
      ctx = encode_context((*spec.records)[i].context);
    } else if (draw_context) {
      ctx = sample_context(weights, env_rng);
    }

    std::size_t arm;
    if (spec.contextual) {
      arm = per_context.select(ctx, *selector, pol_rng);
    } else {
      arm = selector->select(flat, i, pol_rng);
    }

    const int outcome = model.draw_outcome(ctx, arm, env_rng);

    if (spec.contextual) {
      per_context.update(ctx, arm, outcome);
    } else {
      flat.update(arm, outcome);
    }

    auto it = optimal_cache.find(ctx);
    if (it == optimal_cache.end()) {
      it = optimal_cache.emplace(ctx, model.optimal_arm(ctx)).first;
    }
    const auto [optimal, theta_opt] = it->second;
    const double theta_chosen = model.theta(ctx, arm);

    const double regret = spec.regret_mode == RegretMode::Pseudo
                              ? step_regret(theta_opt, theta_chosen)
                              : theta_opt - static_cast<double>(outcome);
    cum_regret += regret;
    cum_suboptimal += suboptimal_indicator(arm, optimal);
    summary.cumulative_regret.push_back(cum_regret);
    summary.cumulative_suboptimal.push_back(cum_suboptimal);
    if (steps_out) {
      steps_out->push_back(StepLog{i + 1, ctx, arm, outcome, optimal, theta_opt, theta_chosen});
    }
  }
  return summary;
}

const PolicyResults& ResultsBundle::results_for(PolicyKind policy) const {
  for (const PolicyResults& pr : policies) {
    if (pr.policy == policy) return pr;
  }
  throw std::invalid_argument("no results for policy " + std::string(policy_name(policy)));
}

const RatioReport& ResultsBundle::ratio_for(PolicyKind policy) const {
  for (const RatioReport& rr : ratios) {
    if (rr.policy == policy) return rr;
  }
  throw std::invalid_argument("no ratio report for policy " + std::string(policy_name(policy)));
}

namespace {

// aggregate() wants two runs; a single run aggregates to itself.
AggregateSummary aggregate_runs(std::span<const RunSummary> runs, double band_low,
                                double band_high) {
  if (runs.size() >= 2) return aggregate(runs, band_low, band_high);
  const RunSummary& only = runs.front();
  AggregateSummary out;
  out.policy = only.policy;
  out.num_runs = 1;
  out.band_low_pct = band_low;
  out.band_high_pct = band_high;
  out.mean_regret = only.cumulative_regret;
  out.regret_band_low = only.cumulative_regret;
  out.regret_band_high = only.cumulative_regret;
  out.mean_suboptimal = only.cumulative_suboptimal;
  out.suboptimal_band_low = only.cumulative_suboptimal;
  out.suboptimal_band_high = only.cumulative_suboptimal;
  out.mean_final_regret = only.final_regret();
  out.mean_final_suboptimal = only.final_suboptimal();
  return out;
}

void write_summary_csv(const fs::path& dir, const PolicyResults& pr) {
  std::ofstream out =
      open_output(dir / ("summary_" + std::string(policy_name(pr.policy)) + ".csv"));
  out << "run,seed,final_regret,final_suboptimal\n";
  for (const RunSummary& run : pr.runs) {
    out << run.run_index << ',' << run.run_seed << ',' << format_real(run.final_regret()) << ','
        << format_real(run.final_suboptimal()) << '\n';
  }
}

void write_aggregate_txt(const fs::path& dir, const ResultsBundle& bundle) {
  std::ofstream out = open_output(dir / "aggregate.txt");
  out << "mode = " << (bundle.mode == ExperimentMode::Replay ? "replay" : "synth") << '\n';
  out << "contextual = " << (bundle.contextual ? "true" : "false") << '\n';
  out << "runs = " << bundle.num_runs << '\n';
  out << "seed = " << bundle.master_seed << '\n';
  out << "horizon = " << bundle.horizon << '\n';
  out << "band_pct = " << format_real(bundle.band_low_pct) << ',' << format_real(bundle.band_high_pct)
      << '\n';
  out << "regret_mode = " << (bundle.regret_mode == RegretMode::Pseudo ? "pseudo" : "realized")
      << '\n';
  for (const PolicyResults& pr : bundle.policies) {
    out << '\n';
    out << "policy = " << policy_name(pr.policy) << '\n';
    out << "mean_final_regret = " << format_real(pr.aggregate.mean_final_regret) << '\n';
    out << "std_final_regret = " << format_real(pr.aggregate.std_final_regret) << '\n';
    out << "mean_final_suboptimal = " << format_real(pr.aggregate.mean_final_suboptimal) << '\n';
    out << "std_final_suboptimal = " << format_real(pr.aggregate.std_final_suboptimal) << '\n';
    for (const RatioReport& rr : bundle.ratios) {
      if (rr.policy != pr.policy) continue;
      out << "ratio_regret_vs_random_pct = " << format_real(rr.regret.mean_pct) << '\n';
      out << "ratio_regret_vs_random_std_pct = " << format_real(rr.regret.std_pct) << '\n';
      out << "ratio_suboptimal_vs_random_pct = " << format_real(rr.suboptimal.mean_pct) << '\n';
      out << "ratio_suboptimal_vs_random_std_pct = " << format_real(rr.suboptimal.std_pct)
          << '\n';
    }
  }
}

void write_plot_file(const fs::path& path, std::span<const double> mean,
                     std::span<const double> low, std::span<const double> high) {
  std::ofstream out = open_output(path);
  out << "step mean band_low band_high\n";
  for (std::size_t i = 0; i < mean.size(); ++i) {
    out << (i + 1) << ' ' << format_real(mean[i]) << ' ' << format_real(low[i]) << ' '
        << format_real(high[i]) << '\n';
  }
}

}  // namespace

void emit_plot_data(const ResultsBundle& bundle, const std::string& out_dir) {
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  for (const PolicyResults& pr : bundle.policies) {
    const std::string name(policy_name(pr.policy));
    write_plot_file(dir / ("plot_" + name + "_regret.dat"), pr.aggregate.mean_regret,
                    pr.aggregate.regret_band_low, pr.aggregate.regret_band_high);
    write_plot_file(dir / ("plot_" + name + "_suboptimal.dat"), pr.aggregate.mean_suboptimal,
                    pr.aggregate.suboptimal_band_low, pr.aggregate.suboptimal_band_high);
  }
}

ResultsBundle run_experiment(const ExperimentConfig& config) {
  validate_config(config);

  std::optional<OutcomeModel> model;
  std::vector<TrialRecord> records;
  std::vector<double> weights;
  std::uint64_t horizon = 0;

  if (config.mode == ExperimentMode::Replay) {
    Dataset dataset = load_csv(config.dataset_path, config.mapping);
    if (dataset.records.empty()) {
      throw std::invalid_argument("run_experiment: dataset has no usable records");
    }
    records = std::move(dataset.records);
    if (!config.contextual) {
      // Context-free runs score against pooled ground truth, so the context
      // bits are cleared before estimation and replay.
      for (TrialRecord& rec : records) rec.context.clear();
    }
    model = OutcomeModel::estimate(records, dataset.k, config.smoothing);
    horizon = records.size();
  } else {
    model = OutcomeModel::from_table(config.synth.num_features, config.synth.theta);
    weights = config.synth.context_weights;
    horizon = config.synth.num_steps;
  }

  RunSpec spec;
  spec.model = &*model;
  spec.records = config.mode == ExperimentMode::Replay ? &records : nullptr;
  spec.horizon = horizon;
  spec.context_weights = weights;
  spec.contextual = config.contextual;
  spec.regret_mode = config.regret_mode;

  const bool write_files = !config.out_dir.empty();
  const fs::path out_dir(config.out_dir);
  if (write_files) fs::create_directories(out_dir);

  const std::size_t num_jobs = config.policies.size() * static_cast<std::size_t>(config.runs);
  std::vector<RunSummary> job_results(num_jobs);
  std::atomic<std::size_t> next_job{0};

  auto run_jobs = [&] {
    for (;;) {
      const std::size_t job = next_job.fetch_add(1);
      if (job >= num_jobs) return;
      const PolicyKind kind = config.policies[job / config.runs];
      const std::uint64_t run = job % config.runs;
      std::vector<StepLog> steps;
      RunSummary summary =
          run_single(spec, kind, run, environment_seed(config.master_seed, run),
                     policy_seed(config.master_seed, kind, run), write_files ? &steps : nullptr);
      if (write_files) {
        std::ofstream out = open_output(out_dir / ("steps_" + std::string(policy_name(kind)) +
                                                   "_" + std::to_string(run) + ".csv"));
        write_step_csv(out, steps);
      }
      job_results[job] = std::move(summary);
    }
  };

  const std::size_t worker_count = std::min<std::size_t>(config.workers, num_jobs);
  if (worker_count <= 1) {
    run_jobs();
  } else {
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto guarded = [&] {
      try {
        run_jobs();
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    };
    {
      std::vector<std::jthread> pool;
      pool.reserve(worker_count);
      for (std::size_t w = 0; w < worker_count; ++w) pool.emplace_back(guarded);
    }
    if (first_error) std::rethrow_exception(first_error);
  }

  ResultsBundle bundle;
  bundle.mode = config.mode;
  bundle.contextual = config.contextual;
  bundle.horizon = horizon;
  bundle.master_seed = config.master_seed;
  bundle.num_runs = config.runs;
  bundle.band_low_pct = config.band_low_pct;
  bundle.band_high_pct = config.band_high_pct;
  bundle.regret_mode = config.regret_mode;

  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    PolicyResults pr;
    pr.policy = config.policies[p];
    const auto first = job_results.begin() + static_cast<std::ptrdiff_t>(p * config.runs);
    pr.runs.assign(std::make_move_iterator(first),
                   std::make_move_iterator(first + static_cast<std::ptrdiff_t>(config.runs)));
    pr.aggregate = aggregate_runs(pr.runs, config.band_low_pct, config.band_high_pct);
    bundle.policies.push_back(std::move(pr));
  }

  const auto random_it =
      std::find(config.policies.begin(), config.policies.end(), PolicyKind::Random);
  if (random_it != config.policies.end()) {
    const PolicyResults& baseline = bundle.results_for(PolicyKind::Random);
    std::vector<double> random_regret(baseline.runs.size());
    std::vector<double> random_suboptimal(baseline.runs.size());
    for (std::size_t r = 0; r < baseline.runs.size(); ++r) {
      random_regret[r] = baseline.runs[r].final_regret();
      random_suboptimal[r] = baseline.runs[r].final_suboptimal();
    }
    for (const PolicyResults& pr : bundle.policies) {
      std::vector<double> regret(pr.runs.size());
      std::vector<double> suboptimal(pr.runs.size());
      for (std::size_t r = 0; r < pr.runs.size(); ++r) {
        regret[r] = pr.runs[r].final_regret();
        suboptimal[r] = pr.runs[r].final_suboptimal();
      }
      RatioReport rr;
      rr.policy = pr.policy;
      rr.regret = relative_ratio(regret, random_regret);
      rr.suboptimal = relative_ratio(suboptimal, random_suboptimal);
      bundle.ratios.push_back(rr);
    }
  }

  if (write_files) {
    for (const PolicyResults& pr : bundle.policies) write_summary_csv(out_dir, pr);
    write_aggregate_txt(out_dir, bundle);
    emit_plot_data(bundle, config.out_dir);
  }
  return bundle;
}

}  // namespace banditsim
