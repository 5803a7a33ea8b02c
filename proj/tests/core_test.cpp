#include <stdexcept>

#include "banditsim/bandit.hpp"
#include "doctest.h"

using banditsim::ArmState;
using banditsim::BernoulliBandit;

TEST_SUITE("core") {
  TEST_CASE("fresh bandit starts every arm at the flat prior") {
    const BernoulliBandit bandit(4);
    CHECK(bandit.num_arms() == 4);
    CHECK(bandit.total_pulls() == 0);
    for (std::size_t u = 0; u < 4; ++u) {
      CHECK(bandit.arm(u).alpha == 1.0);
      CHECK(bandit.arm(u).beta == 1.0);
      CHECK(bandit.arm(u).pulls == 0);
      CHECK(bandit.posterior_mean(u) == 0.5);
    }
  }

  TEST_CASE("single-arm bandit is allowed, empty bandit is not") {
    CHECK(BernoulliBandit(1).num_arms() == 1);
    CHECK_THROWS_AS(BernoulliBandit(std::size_t{0}), std::invalid_argument);
    CHECK_THROWS_AS(BernoulliBandit(std::vector<ArmState>{}), std::invalid_argument);
  }

  TEST_CASE("reward moves exactly one shape parameter by one") {
    BernoulliBandit bandit(2);
    bandit.update(0, 1);
    CHECK(bandit.arm(0).alpha == 2.0);
    CHECK(bandit.arm(0).beta == 1.0);
    CHECK(bandit.arm(1).alpha == 1.0);
    CHECK(bandit.arm(1).beta == 1.0);

    BernoulliBandit other({ArmState{3.0, 2.0, 3}});
    other.update(0, 0);
    CHECK(other.arm(0).alpha == 3.0);
    CHECK(other.arm(0).beta == 3.0);
  }

  TEST_CASE("folding seven successes and three failures lands on (8,4)") {
    BernoulliBandit bandit(1);
    for (int i = 0; i < 7; ++i) bandit.update(0, 1);
    for (int i = 0; i < 3; ++i) bandit.update(0, 0);
    CHECK(bandit.arm(0).alpha == 8.0);
    CHECK(bandit.arm(0).beta == 4.0);
    CHECK(bandit.arm(0).pulls == 10);
    CHECK(bandit.posterior_mean(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  }

  TEST_CASE("posterior mean is alpha over alpha plus beta") {
    BernoulliBandit bandit(1);
    CHECK(bandit.posterior_mean(0) == 0.5);
    bandit.update(0, 1);
    CHECK(bandit.posterior_mean(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }

  TEST_CASE("success and failure counts stay exact integers inside the reals") {
    BernoulliBandit bandit(3);
    int successes = 0;
    int failures = 0;
    const int pattern[] = {1, 0, 0, 1, 1, 1, 0, 1, 0, 0, 1, 1};
    for (int r : pattern) {
      bandit.update(1, r);
      successes += r;
      failures += 1 - r;
      CHECK(bandit.arm(1).alpha == 1.0 + successes);
      CHECK(bandit.arm(1).beta == 1.0 + failures);
      CHECK(bandit.arm(1).alpha + bandit.arm(1).beta == 2.0 + bandit.arm(1).pulls);
    }
    CHECK(bandit.total_pulls() == std::size_t(successes + failures));
  }

  TEST_CASE("posterior concentration is (1+s)/(2+n) exactly") {
    BernoulliBandit bandit(1);
    int s = 0;
    for (int n = 1; n <= 50; ++n) {
      const int reward = (n * 7) % 3 == 0 ? 1 : 0;
      bandit.update(0, reward);
      s += reward;
      CHECK(bandit.posterior_mean(0) == double(1 + s) / double(2 + n));
    }
  }

  TEST_CASE("invalid updates are rejected") {
    BernoulliBandit bandit(2);
    CHECK_THROWS_AS(bandit.update(2, 1), std::out_of_range);
    CHECK_THROWS_AS(bandit.update(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(bandit.update(0, -1), std::invalid_argument);
    CHECK_THROWS_AS(bandit.arm(5), std::out_of_range);
  }

  TEST_CASE("bandits can be rebuilt from captured arm states") {
    const std::vector<ArmState> arms{{10.8, 1.2, 10}, {1.5, 1.5, 1}};
    const BernoulliBandit bandit(arms);
    CHECK(bandit.num_arms() == 2);
    CHECK(bandit.total_pulls() == 11);
    CHECK(bandit.arm(0).alpha == 10.8);
    CHECK(bandit.posterior_mean(0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK_THROWS_AS(BernoulliBandit({ArmState{0.0, 1.0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(BernoulliBandit({ArmState{1.0, -1.0, 0}}), std::invalid_argument);
  }

  TEST_CASE("identical update sequences give equal states") {
    BernoulliBandit a(3);
    BernoulliBandit b(3);
    const int arms[] = {0, 2, 1, 2, 0, 0, 1};
    const int rewards[] = {1, 0, 1, 1, 0, 1, 0};
    for (int i = 0; i < 7; ++i) {
      a.update(arms[i], rewards[i]);
      b.update(arms[i], rewards[i]);
    }
    CHECK(a.arms() == b.arms());
  }
}
