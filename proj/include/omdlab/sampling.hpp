#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "omdlab/geometry.hpp"

namespace omdlab {

/// Seeded point/direction generator over a FeasibleSet. Every estimator owns
/// a private Sampler so its output depends only on (inputs, seed).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform01();
  /// Integer in [0, n).
  std::size_t index(std::size_t n);

  /// Uniform point of the set. For the truncated simplex: uniform point of the
  /// full simplex via normalized exponential spacings, mixed toward the
  /// centroid by (1 - d*eps) and shifted by eps.
  Vector uniform(const FeasibleSet& set);

  /// Point concentrated near the relative boundary: sparse simplex weights
  /// (uniforms raised to a random power) or log-uniform box coordinates.
  Vector boundary_biased(const FeasibleSet& set);

  /// Uniformly chosen vertex.
  Vector random_vertex(const FeasibleSet& set);

  /// Unit l2 direction in the tangent space of the set.
  Vector direction(const FeasibleSet& set);

  /// Unit l2 direction in R^dim.
  Vector unit_vector(int dim);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Independent seed for sub-stream `stream` of `seed` (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// n points: uniform, boundary-biased and vertices mixed in fixed proportion
/// (40% / 40% / 20%), the layout used by the sup-estimators.
std::vector<Vector> mixed_points(const FeasibleSet& set, std::size_t n, Sampler& sampler);

}  // namespace omdlab
