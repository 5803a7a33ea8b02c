#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>

#include "banditsim/bandit.hpp"
#include "banditsim/policies.hpp"
#include "banditsim/random.hpp"

namespace banditsim {

using ContextIndex = std::size_t;

// Maximum number of binary context features; 2^20 contexts is the largest
// table the per-context machinery is willing to address.
inline constexpr std::size_t kMaxContextFeatures = 20;

// Packs binary features into a context index, little-endian: feature j
// contributes bits[j] * 2^j. Every bit must be 0 or 1.
ContextIndex encode_context(std::span<const int> bits);

// A family of independent Bernoulli bandits, one per observed context,
// created lazily on first touch. Each context keeps its own selection clock,
// so index-based policies explore fresh contexts from scratch. With zero
// features there is exactly one context and the behaviour degenerates to a
// single flat bandit.
class ContextualBandit {
 public:
  ContextualBandit(std::size_t num_arms, std::size_t num_features);

  std::size_t num_arms() const noexcept { return num_arms_; }
  std::size_t num_features() const noexcept { return num_features_; }
  std::size_t num_contexts() const noexcept { return std::size_t{1} << num_features_; }

  // Number of contexts touched so far by select/update/bandit_for.
  std::size_t touched_contexts() const noexcept { return entries_.size(); }

  // Posterior state for one context, created fresh (flat prior, zero clock)
  // on first access.
  BernoulliBandit& bandit_for(ContextIndex ctx);

  // Read-only lookup; nullptr if the context has never been touched.
  const BernoulliBandit* find(ContextIndex ctx) const;

  // Selections made so far within one context (zero if untouched).
  std::uint64_t context_clock(ContextIndex ctx) const;

  // Runs the policy against this context's own posterior and clock, then
  // advances the clock.
  std::size_t select(ContextIndex ctx, Policy& policy, RandomStream& rng);

  void update(ContextIndex ctx, std::size_t arm, int reward);

 private:
  struct Entry {
    BernoulliBandit bandit;
    std::uint64_t clock = 0;
  };

  Entry& entry_for(ContextIndex ctx);
  void check_context(ContextIndex ctx) const;

  std::size_t num_arms_;
  std::size_t num_features_;
  std::unordered_map<ContextIndex, Entry> entries_;
};

}  // namespace banditsim
