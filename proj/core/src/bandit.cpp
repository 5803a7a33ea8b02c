#include "banditsim/bandit.hpp"

#include <stdexcept>
#include <string>

namespace banditsim {

BernoulliBandit::BernoulliBandit(std::size_t num_arms) : arms_(num_arms) {
  if (num_arms == 0) throw std::invalid_argument("BernoulliBandit: need at least one arm");
}

BernoulliBandit::BernoulliBandit(std::vector<ArmState> arms) : arms_(std::move(arms)) {
  if (arms_.empty()) throw std::invalid_argument("BernoulliBandit: need at least one arm");
  for (const ArmState& a : arms_) {
    if (!(a.alpha > 0.0) || !(a.beta > 0.0)) {
      throw std::invalid_argument("BernoulliBandit: arm shape parameters must be positive");
    }
    total_pulls_ += a.pulls;
  }
}

const ArmState& BernoulliBandit::arm(std::size_t index) const {
  if (index >= arms_.size()) {
    throw std::out_of_range("BernoulliBandit: arm " + std::to_string(index) + " of " +
                            std::to_string(arms_.size()));
  }
  return arms_[index];
}

void BernoulliBandit::update(std::size_t arm, int reward) {
  if (arm >= arms_.size()) {
    throw std::out_of_range("BernoulliBandit: arm " + std::to_string(arm) + " of " +
                            std::to_string(arms_.size()));
  }
  if (reward != 0 && reward != 1) {
    throw std::invalid_argument("BernoulliBandit: reward must be 0 or 1");
  }
  arms_[arm].alpha += reward;
  arms_[arm].beta += 1 - reward;
  arms_[arm].pulls += 1;
  total_pulls_ += 1;
}

double BernoulliBandit::posterior_mean(std::size_t arm) const {
  const ArmState& a = this->arm(arm);
  return a.alpha / (a.alpha + a.beta);
}

}  // namespace banditsim
