#include "banditsim/contextual.hpp"

#include <stdexcept>
#include <string>

namespace banditsim {

ContextIndex encode_context(std::span<const int> bits) {
  if (bits.size() > kMaxContextFeatures) {
    throw std::invalid_argument("encode_context: at most " +
                                std::to_string(kMaxContextFeatures) + " features, got " +
                                std::to_string(bits.size()));
  }
  ContextIndex index = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] != 0 && bits[j] != 1) {
      throw std::invalid_argument("encode_context: feature " + std::to_string(j) +
                                  " must be 0 or 1, got " + std::to_string(bits[j]));
    }
    index |= static_cast<ContextIndex>(bits[j]) << j;
  }
  return index;
}

ContextualBandit::ContextualBandit(std::size_t num_arms, std::size_t num_features)
    : num_arms_(num_arms), num_features_(num_features) {
  if (num_arms == 0) throw std::invalid_argument("ContextualBandit: need at least one arm");
  if (num_features > kMaxContextFeatures) {
    throw std::invalid_argument("ContextualBandit: at most " +
                                std::to_string(kMaxContextFeatures) + " features, got " +
                                std::to_string(num_features));
  }
}

void ContextualBandit::check_context(ContextIndex ctx) const {
  if (ctx >= num_contexts()) {
    throw std::out_of_range("ContextualBandit: context " + std::to_string(ctx) + " of " +
                            std::to_string(num_contexts()));
  }
}

ContextualBandit::Entry& ContextualBandit::entry_for(ContextIndex ctx) {
  check_context(ctx);
  auto it = entries_.find(ctx);
  if (it == entries_.end()) {
    it = entries_.emplace(ctx, Entry{BernoulliBandit(num_arms_), 0}).first;
  }
  return it->second;
}

BernoulliBandit& ContextualBandit::bandit_for(ContextIndex ctx) {
  return entry_for(ctx).bandit;
}

const BernoulliBandit* ContextualBandit::find(ContextIndex ctx) const {
  check_context(ctx);
  auto it = entries_.find(ctx);
  return it == entries_.end() ? nullptr : &it->second.bandit;
}

std::uint64_t ContextualBandit::context_clock(ContextIndex ctx) const {
  check_context(ctx);
  auto it = entries_.find(ctx);
  return it == entries_.end() ? 0 : it->second.clock;
}

std::size_t ContextualBandit::select(ContextIndex ctx, Policy& policy, RandomStream& rng) {
  Entry& entry = entry_for(ctx);
  const std::size_t arm = policy.select(entry.bandit, entry.clock, rng);
  entry.clock += 1;
  return arm;
}

void ContextualBandit::update(ContextIndex ctx, std::size_t arm, int reward) {
  entry_for(ctx).bandit.update(arm, reward);
}

}  // namespace banditsim
