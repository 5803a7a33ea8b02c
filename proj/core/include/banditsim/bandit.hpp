#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace banditsim {

// Beta posterior parameters for one Bernoulli arm.
struct ArmState {
  double alpha = 1.0;
  double beta = 1.0;
  std::uint64_t pulls = 0;

  bool operator==(const ArmState&) const = default;
};

// Posterior state for a k-armed Bernoulli bandit under the Beta(1,1) prior.
// Tracks (alpha, beta, pulls) per arm; observing reward r adds r to alpha and
// 1 - r to beta.
class BernoulliBandit {
 public:
  explicit BernoulliBandit(std::size_t num_arms);

  // Rebuilds a bandit from previously captured arm states, e.g. to resume a
  // run or to pin a posterior in a test.
  explicit BernoulliBandit(std::vector<ArmState> arms);

  std::size_t num_arms() const noexcept { return arms_.size(); }

  const ArmState& arm(std::size_t index) const;
  const std::vector<ArmState>& arms() const noexcept { return arms_; }

  // Records a binary reward for one arm. reward must be 0 or 1.
  void update(std::size_t arm, int reward);

  // Posterior mean alpha / (alpha + beta) for one arm.
  double posterior_mean(std::size_t arm) const;

  // Total updates across all arms.
  std::uint64_t total_pulls() const noexcept { return total_pulls_; }

 private:
  std::vector<ArmState> arms_;
  std::uint64_t total_pulls_ = 0;
};

}  // namespace banditsim
