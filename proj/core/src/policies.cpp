#include "banditsim/policies.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace banditsim {
namespace {

// Argmax with uniform-random tie-breaking over exactly equal scores. Consumes
// one rng draw only when two or more arms share the maximum.
std::size_t argmax_random_ties(const std::vector<double>& scores, RandomStream& rng) {
  double best = scores[0];
  for (double s : scores) {
    if (s > best) best = s;
  }
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == best) ties.push_back(i);
  }
  if (ties.size() == 1) return ties[0];
  return ties[rng.uniform_below(ties.size())];
}

}  // namespace

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "random") return PolicyKind::Random;
  if (name == "greedy") return PolicyKind::Greedy;
  if (name == "thompson") return PolicyKind::Thompson;
  if (name == "ucb") return PolicyKind::Ucb;
  throw std::invalid_argument("unknown policy: " + std::string(name));
}

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Random: return "random";
    case PolicyKind::Greedy: return "greedy";
    case PolicyKind::Thompson: return "thompson";
    case PolicyKind::Ucb: return "ucb";
  }
  throw std::invalid_argument("unknown policy kind");
}

std::uint64_t policy_stream_key(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Random: return 1;
    case PolicyKind::Greedy: return 2;
    case PolicyKind::Thompson: return 3;
    case PolicyKind::Ucb: return 4;
  }
  throw std::invalid_argument("unknown policy kind");
}

std::size_t RandomPolicy::select(const BernoulliBandit& bandit, std::uint64_t,
                                 RandomStream& rng) {
  return static_cast<std::size_t>(rng.uniform_below(bandit.num_arms()));
}

std::size_t GreedyPolicy::select(const BernoulliBandit& bandit, std::uint64_t,
                                 RandomStream& rng) {
  std::vector<double> means(bandit.num_arms());
  for (std::size_t i = 0; i < means.size(); ++i) means[i] = bandit.posterior_mean(i);
  return argmax_random_ties(means, rng);
}

std::size_t ThompsonPolicy::select(const BernoulliBandit& bandit, std::uint64_t,
                                   RandomStream& rng) {
  std::vector<double> samples(bandit.num_arms());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const ArmState& a = bandit.arm(i);
    samples[i] = rng.beta(a.alpha, a.beta);
  }
  return argmax_random_ties(samples, rng);
}

std::size_t UcbPolicy::select(const BernoulliBandit& bandit, std::uint64_t t,
                              RandomStream&) {
  const std::size_t k = bandit.num_arms();
  if (t < k) return static_cast<std::size_t>(t);

  std::size_t best_arm = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  const double log_term = std::log(static_cast<double>(t) + 1.0);
  for (std::size_t i = 0; i < k; ++i) {
    const ArmState& a = bandit.arm(i);
    double score;
    if (a.pulls == 0) {
      score = std::numeric_limits<double>::infinity();
    } else {
      score = bandit.posterior_mean(i) + std::sqrt(log_term / static_cast<double>(a.pulls));
    }
    if (score > best_score) {
      best_score = score;
      best_arm = i;
    }
  }
  return best_arm;
}

std::unique_ptr<Policy> make_policy(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Random: return std::make_unique<RandomPolicy>();
    case PolicyKind::Greedy: return std::make_unique<GreedyPolicy>();
    case PolicyKind::Thompson: return std::make_unique<ThompsonPolicy>();
    case PolicyKind::Ucb: return std::make_unique<UcbPolicy>();
  }
  throw std::invalid_argument("unknown policy kind");
}

}  // namespace banditsim
