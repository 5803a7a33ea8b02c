#include "banditsim/environment.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace banditsim {

OutcomeModel OutcomeModel::estimate(std::span<const TrialRecord> records, std::size_t num_arms,
                                    bool smoothing) {
  if (records.empty()) throw std::invalid_argument("OutcomeModel: no records to estimate from");
  if (num_arms == 0) throw std::invalid_argument("OutcomeModel: need at least one arm");

  OutcomeModel model;
  model.num_arms_ = num_arms;
  model.num_features_ = records.front().context.size();
  model.smoothing_ = smoothing;

  std::set<ContextIndex> seen;
  for (const TrialRecord& rec : records) {
    if (rec.context.size() != model.num_features_) {
      throw std::invalid_argument("OutcomeModel: record " + std::to_string(rec.sequence) +
                                  " has context length " + std::to_string(rec.context.size()) +
                                  ", expected " + std::to_string(model.num_features_));
    }
    if (rec.arm >= num_arms) {
      throw std::invalid_argument("OutcomeModel: record " + std::to_string(rec.sequence) +
                                  " names arm " + std::to_string(rec.arm) + " of " +
                                  std::to_string(num_arms));
    }
    if (rec.outcome != 0 && rec.outcome != 1) {
      throw std::invalid_argument("OutcomeModel: record " + std::to_string(rec.sequence) +
                                  " has non-binary outcome");
    }
    const ContextIndex ctx = encode_context(rec.context);
    seen.insert(ctx);
    Cell& cell = model.cells_[ctx * num_arms + rec.arm];
    cell.successes += static_cast<std::uint64_t>(rec.outcome);
    cell.trials += 1;
  }

  if (!smoothing) {
    for (ContextIndex ctx : seen) {
      for (std::size_t arm = 0; arm < num_arms; ++arm) {
        if (!model.cells_.contains(ctx * num_arms + arm)) throw MissingCellError(ctx, arm);
      }
    }
  }
  return model;
}

OutcomeModel OutcomeModel::from_table(std::size_t num_features,
                                      std::vector<std::vector<double>> theta) {
  if (num_features > kMaxContextFeatures) {
    throw std::invalid_argument("OutcomeModel: at most " + std::to_string(kMaxContextFeatures) +
                                " features, got " + std::to_string(num_features));
  }
  const std::size_t expected_rows = std::size_t{1} << num_features;
  if (theta.size() != expected_rows) {
    throw std::invalid_argument("OutcomeModel: table needs " + std::to_string(expected_rows) +
                                " rows for " + std::to_string(num_features) + " features, got " +
                                std::to_string(theta.size()));
  }
  const std::size_t num_arms = theta.front().size();
  if (num_arms == 0) throw std::invalid_argument("OutcomeModel: need at least one arm");
  for (std::size_t ctx = 0; ctx < theta.size(); ++ctx) {
    if (theta[ctx].size() != num_arms) {
      throw std::invalid_argument("OutcomeModel: table row " + std::to_string(ctx) + " has " +
                                  std::to_string(theta[ctx].size()) + " entries, expected " +
                                  std::to_string(num_arms));
    }
    for (double p : theta[ctx]) {
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw std::invalid_argument("OutcomeModel: table row " + std::to_string(ctx) +
                                    " has a probability outside [0, 1]");
      }
    }
  }

  OutcomeModel model;
  model.num_arms_ = num_arms;
  model.num_features_ = num_features;
  model.table_mode_ = true;
  model.table_ = std::move(theta);
  return model;
}

void OutcomeModel::check_cell_index(ContextIndex ctx, std::size_t arm) const {
  if (ctx >= num_contexts()) {
    throw std::out_of_range("OutcomeModel: context " + std::to_string(ctx) + " of " +
                            std::to_string(num_contexts()));
  }
  if (arm >= num_arms_) {
    throw std::out_of_range("OutcomeModel: arm " + std::to_string(arm) + " of " +
                            std::to_string(num_arms_));
  }
}

bool OutcomeModel::has_cell(ContextIndex ctx, std::size_t arm) const {
  check_cell_index(ctx, arm);
  if (table_mode_ || smoothing_) return true;
  return cells_.contains(ctx * num_arms_ + arm);
}

double OutcomeModel::theta(ContextIndex ctx, std::size_t arm) const {
  check_cell_index(ctx, arm);
  if (table_mode_) return table_[ctx][arm];
  const auto it = cells_.find(ctx * num_arms_ + arm);
  const std::uint64_t s = it == cells_.end() ? 0 : it->second.successes;
  const std::uint64_t n = it == cells_.end() ? 0 : it->second.trials;
  if (smoothing_) {
    return (static_cast<double>(s) + 1.0) / (static_cast<double>(n) + 2.0);
  }
  if (n == 0) throw MissingCellError(ctx, arm);
  return static_cast<double>(s) / static_cast<double>(n);
}

std::pair<std::uint64_t, std::uint64_t> OutcomeModel::counts(ContextIndex ctx,
                                                             std::size_t arm) const {
  check_cell_index(ctx, arm);
  const auto it = cells_.find(ctx * num_arms_ + arm);
  if (it == cells_.end()) return {0, 0};
  return {it->second.successes, it->second.trials};
}

std::pair<std::size_t, double> OutcomeModel::optimal_arm(ContextIndex ctx) const {
  std::size_t best_arm = 0;
  double best_theta = theta(ctx, 0);
  for (std::size_t arm = 1; arm < num_arms_; ++arm) {
    const double p = theta(ctx, arm);
    if (p > best_theta) {
      best_theta = p;
      best_arm = arm;
    }
  }
  return {best_arm, best_theta};
}

int OutcomeModel::draw_outcome(ContextIndex ctx, std::size_t arm, RandomStream& rng) const {
  const double p = theta(ctx, arm);
  return rng.bernoulli(p) ? 1 : 0;
}

ContextIndex sample_context(std::span<const double> weights, RandomStream& rng) {
  if (weights.empty()) throw std::invalid_argument("sample_context: no weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("sample_context: weights must be finite and non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("sample_context: weights sum to zero");

  const double u = rng.uniform01() * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (u < cumulative) return i;
  }
  return weights.size() - 1;
}

}  // namespace banditsim
