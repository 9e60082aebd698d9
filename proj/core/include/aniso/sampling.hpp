#pragma once

#include <cstdint>
#include <random>

#include "aniso/geometry.hpp"

namespace aniso {

/// Seeded generator for random triangles, forms and linear maps.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// Vertices uniform in [0,1]^2; rejects area < 0.01 and euclidean rho > 100.
  Triangle triangle();

  /// R^T diag(10^s0, 10^s1) R with s_i uniform in [-3, 3] and a uniform angle.
  QuadForm pd_form();

  /// Random invertible matrix with |det| bounded away from zero.
  Mat2 linear_map();

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Rotation by angle theta.
Mat2 rotation(double theta);

}  // namespace aniso
