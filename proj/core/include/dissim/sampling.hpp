#pragma once

#include <cstdint>
#include <random>

#include "dissim/density_matrix.hpp"
#include "dissim/types.hpp"

namespace dissim {

/// splitmix64 of (seed, tag): decorrelated sub-seeds so parallel sweep
/// points never share a stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  long binomial(long trials, double p) {
    return std::binomial_distribution<long>(trials, p)(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

/// Random full-rank state GG^dag / tr (Ginibre ensemble).
DensityMatrix random_density(Rng& rng, int dim);

/// Random pure state from Gaussian amplitudes.
DensityMatrix random_pure(Rng& rng, int dim);

/// Random CPTP channel: Gaussian blocks whitened so the sum rule holds
/// to machine precision.
KrausChannel random_channel(Rng& rng, int dim, int n_operators);

}  // namespace dissim
