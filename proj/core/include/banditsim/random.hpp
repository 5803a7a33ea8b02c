#pragma once

#include <cstdint>
#include <random>

namespace banditsim {

// One step of the splitmix64 generator; also used to mix keys when deriving
// child seeds from a master seed.
std::uint64_t splitmix64_next(std::uint64_t& state);

// Deterministically derives a child seed by folding each key into the master
// seed through splitmix64. Same inputs give the same child on every platform.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

// A seeded random stream with fixed, hand-specified sampling algorithms so
// that draw sequences are reproducible across compilers and standard
// libraries. The raw engine is std::mt19937_64; every distribution on top of
// it is implemented here rather than delegated to std:: distribution objects.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1): top 53 bits of one engine draw scaled by 2^-53.
  double uniform01();

  // Uniform integer on [0, bound) by rejection on the high bits; bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Bernoulli(p) as uniform01() < p.
  bool bernoulli(double p);

  // Standard normal via Box-Muller; consumes two uniforms per pair and caches
  // the second value.
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 uses the boost
  // Gamma(shape + 1) * U^(1/shape). shape must be positive.
  double gamma(double shape);

  // Beta(alpha, beta) as Ga/(Ga+Gb) with the alpha gamma drawn first.
  double beta(double alpha, double beta);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace banditsim
