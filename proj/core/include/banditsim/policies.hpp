#pragma once

#include <cstdint>
#include <memory>
#include <string_view>

#include "banditsim/bandit.hpp"
#include "banditsim/random.hpp"

namespace banditsim {

enum class PolicyKind { Random, Greedy, Thompson, Ucb };

// Parses "random", "greedy", "thompson", or "ucb" (case-sensitive).
PolicyKind parse_policy_kind(std::string_view name);
std::string_view policy_name(PolicyKind kind);

// Stable small integer used when deriving a policy's private seed, so adding
// or reordering policies in a run never reshuffles another policy's stream.
std::uint64_t policy_stream_key(PolicyKind kind);

// Arm-selection rule over a Bernoulli bandit posterior. Policies are
// stateless beyond the posterior itself; the selection clock t (number of
// completed selections by this policy instance) is passed in by the caller.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual PolicyKind kind() const = 0;
  virtual std::size_t select(const BernoulliBandit& bandit, std::uint64_t t,
                             RandomStream& rng) = 0;
};

// Uniform-random arm choice. One uniform_below(k) draw per selection.
class RandomPolicy final : public Policy {
 public:
  PolicyKind kind() const override { return PolicyKind::Random; }
  std::size_t select(const BernoulliBandit& bandit, std::uint64_t t,
                     RandomStream& rng) override;
};

// Picks the arm with the highest posterior mean; exact ties are broken
// uniformly at random (one extra draw, only when a tie exists).
class GreedyPolicy final : public Policy {
 public:
  PolicyKind kind() const override { return PolicyKind::Greedy; }
  std::size_t select(const BernoulliBandit& bandit, std::uint64_t t,
                     RandomStream& rng) override;
};

// Thompson sampling: one Beta(alpha, beta) draw per arm in arm-index order,
// then argmax; exact ties are broken uniformly at random.
class ThompsonPolicy final : public Policy {
 public:
  PolicyKind kind() const override { return PolicyKind::Thompson; }
  std::size_t select(const BernoulliBandit& bandit, std::uint64_t t,
                     RandomStream& rng) override;
};

// UCB1 on the posterior mean. The first k selections visit arms 0..k-1 in
// order; afterwards the score is mean + sqrt(ln(t + 1) / pulls), with
// never-pulled arms scored infinite and ties going to the lowest index.
class UcbPolicy final : public Policy {
 public:
  PolicyKind kind() const override { return PolicyKind::Ucb; }
  std::size_t select(const BernoulliBandit& bandit, std::uint64_t t,
                     RandomStream& rng) override;
};

std::unique_ptr<Policy> make_policy(PolicyKind kind);

}  // namespace banditsim
