#include "omdlab/sampling.hpp"

#include <cmath>

#include "omdlab/errors.hpp"

namespace omdlab {

double Sampler::uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

std::size_t Sampler::index(std::size_t n) {
  if (n == 0) throw InputError("cannot draw an index from an empty range");
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

Vector Sampler::uniform(const FeasibleSet& set) {
  const int d = set.dim();
  Vector x(d);
  if (set.is_simplex()) {
    for (int i = 0; i < d; ++i) x[i] = -std::log1p(-uniform01());
    x /= x.sum();
    return (1.0 - d * set.epsilon()) * x.array() + set.epsilon();
  }
  for (int i = 0; i < d; ++i) {
    x[i] = set.lower()[i] + uniform01() * (set.upper()[i] - set.lower()[i]);
  }
  return x;
}

Vector Sampler::boundary_biased(const FeasibleSet& set) {
  const int d = set.dim();
  Vector x(d);
  if (set.is_simplex()) {
    const double power = std::exp(uniform01() * std::log(40.0));
    for (int i = 0; i < d; ++i) x[i] = std::pow(1.0 - uniform01(), power);
    x /= x.sum();
    return (1.0 - d * set.epsilon()) * x.array() + set.epsilon();
  }
  for (int i = 0; i < d; ++i) {
    const double lo = set.lower()[i];
    const double hi = set.upper()[i];
    x[i] = std::min(hi, lo * std::exp(uniform01() * std::log(hi / lo)));
  }
  return x;
}

Vector Sampler::random_vertex(const FeasibleSet& set) {
  if (set.is_simplex()) return set.vertex(index(static_cast<std::size_t>(set.dim())));
  Vector v(set.dim());
  for (int i = 0; i < set.dim(); ++i) v[i] = uniform01() < 0.5 ? set.lower()[i] : set.upper()[i];
  return v;
}

Vector Sampler::unit_vector(int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = normal(rng_);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

Vector Sampler::direction(const FeasibleSet& set) {
  if (set.is_simplex()) {
    if (set.dim() < 2) throw InputError("a one-dimensional simplex has no directions");
    Vector v = unit_vector(set.dim());
    v.array() -= v.mean();
    while (v.norm() < 1e-12) {
      v = unit_vector(set.dim());
      v.array() -= v.mean();
    }
    return v / v.norm();
  }
  return unit_vector(set.dim());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Vector> mixed_points(const FeasibleSet& set, std::size_t n, Sampler& sampler) {
  std::vector<Vector> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    switch (k % 5) {
      case 0:
      case 2:
        pts.push_back(sampler.uniform(set));
        break;
      case 1:
      case 3:
        pts.push_back(sampler.boundary_biased(set));
        break;
      default:
        pts.push_back(sampler.random_vertex(set));
        break;
    }
  }
  return pts;
}

}  // namespace omdlab
