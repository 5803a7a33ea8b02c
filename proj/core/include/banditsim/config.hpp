#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "banditsim/ingest.hpp"
#include "banditsim/metrics.hpp"
#include "banditsim/policies.hpp"

namespace banditsim {

enum class ExperimentMode { Replay, Synth };

// How per-step regret is scored: against the chosen arm's true success
// probability (deterministic, non-negative) or against the realized binary
// outcome (noisy; for sensitivity checks).
enum class RegretMode { Pseudo, Realized };

// Synthetic environment: an explicit theta table over 2^num_features
// contexts, optional context weights (uniform when empty), and a step count.
struct SyntheticSpec {
  std::size_t num_features = 0;
  std::size_t num_arms = 0;
  std::vector<std::vector<double>> theta;
  std::vector<double> context_weights;
  std::uint64_t num_steps = 0;
};

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::Replay;
  bool mode_specified = false;

  std::string dataset_path;
  ColumnMapping mapping;
  SyntheticSpec synth;

  std::vector<PolicyKind> policies{PolicyKind::Random, PolicyKind::Greedy,
                                   PolicyKind::Thompson, PolicyKind::Ucb};
  bool contextual = false;
  std::uint64_t runs = 20;
  std::uint64_t master_seed = 1;
  double band_low_pct = 25.0;
  double band_high_pct = 75.0;
  RegretMode regret_mode = RegretMode::Pseudo;
  bool smoothing = false;
  std::string out_dir;
  std::size_t workers = 1;
};

// Parses the flat key-value experiment file: one `key = value` pair per
// line, `#` starts a comment, blank lines ignored. Unknown or duplicated
// keys raise SchemaError naming the line. See the README for the key
// reference.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

// Cross-field validation beyond parse-level syntax: mode-specific required
// fields, probability ranges, policy duplicates. Throws std::invalid_argument.
void validate_config(const ExperimentConfig& config);

// Comma-separated policy names to kinds; duplicates rejected.
std::vector<PolicyKind> parse_policy_list(const std::string& names);

}  // namespace banditsim
