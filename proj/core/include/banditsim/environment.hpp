#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "banditsim/contextual.hpp"
#include "banditsim/errors.hpp"
#include "banditsim/random.hpp"

namespace banditsim {

// One participant of a recorded trial: observed context bits, the treatment
// arm actually given, the binary outcome, and the admission ordinal.
struct TrialRecord {
  std::vector<int> context;
  std::size_t arm = 0;
  int outcome = 0;
  std::uint64_t sequence = 0;
};

// Ground-truth success probabilities per (context, arm) cell. Either
// estimated from trial records as empirical fractions (optionally with
// add-one smoothing) or constructed from an explicit probability table for
// synthetic experiments. Immutable once built.
class OutcomeModel {
 public:
  // Empirical estimate over the records: theta = successes / trials per
  // cell, or (successes + 1) / (trials + 2) with smoothing on. Without
  // smoothing, every context that appears in the records must cover all
  // arms; an uncovered cell raises MissingCellError.
  static OutcomeModel estimate(std::span<const TrialRecord> records, std::size_t num_arms,
                               bool smoothing);

  // Explicit table, one row of num_arms probabilities per context; the table
  // must have exactly 2^num_features rows and every entry in [0, 1].
  static OutcomeModel from_table(std::size_t num_features,
                                 std::vector<std::vector<double>> theta);

  std::size_t num_arms() const noexcept { return num_arms_; }
  std::size_t num_features() const noexcept { return num_features_; }
  std::size_t num_contexts() const noexcept { return std::size_t{1} << num_features_; }

  bool has_cell(ContextIndex ctx, std::size_t arm) const;

  // Success probability of one cell; raises MissingCellError when the cell
  // was never observed and smoothing is off.
  double theta(ContextIndex ctx, std::size_t arm) const;

  // (successes, trials) seen by the estimator for one cell; (0, 0) for
  // table-built models.
  std::pair<std::uint64_t, std::uint64_t> counts(ContextIndex ctx, std::size_t arm) const;

  // Best arm and its theta for one context; ties go to the lowest arm index.
  std::pair<std::size_t, double> optimal_arm(ContextIndex ctx) const;

  // One Bernoulli(theta) draw; consumes exactly one uniform from the stream
  // regardless of theta, so outcome streams stay aligned across policies.
  int draw_outcome(ContextIndex ctx, std::size_t arm, RandomStream& rng) const;

 private:
  struct Cell {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
  };

  OutcomeModel() = default;
  void check_cell_index(ContextIndex ctx, std::size_t arm) const;

  std::size_t num_arms_ = 0;
  std::size_t num_features_ = 0;
  bool smoothing_ = false;
  bool table_mode_ = false;
  std::vector<std::vector<double>> table_;
  std::unordered_map<std::size_t, Cell> cells_;
};

// Draws a context index proportionally to the given non-negative weights
// (they need not sum to one). Consumes exactly one uniform per call.
ContextIndex sample_context(std::span<const double> weights, RandomStream& rng);

}  // namespace banditsim
