#pragma once

#include <cstdint>
#include <string>

#include "omdlab/geometry.hpp"
#include "omdlab/parallel.hpp"

namespace omdlab {

enum class RegularizerKind { kEuclidean, kNegEntropy, kBurg, kL1Squared };

/// Short name used on the command line and in file names: l2sq, kl, burg, l1sq.
std::string short_name(RegularizerKind kind);
RegularizerKind parse_regularizer(const std::string& name);

/// Legendre-type mirror map r with its induced Bregman divergence.
///
///   Euclidean   r(x) = 1/2 |x|_2^2
///   NegEntropy  r(x) = sum x_i ln x_i - x_i        (x > 0)
///   Burg        r(x) = -sum ln x_i                 (x > 0)
///   L1Squared   r(x) = 1/2 (sum x_i)^2             (x >= 0)
///
/// Stateless value type; all member functions are pure.
class Regularizer {
 public:
  Regularizer(RegularizerKind kind, int dim);

  RegularizerKind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::string name() const { return short_name(kind_); }

  /// Norm the regularizer is paired with for gamma, path length and M:
  /// l2 for Euclidean, l1 for the others.
  NormKind primal_norm() const;
  NormKind dual_norm() const { return dual(primal_norm()); }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  /// v^T Hess r(x) v.
  double hessian_quadratic(const Vector& x, const Vector& v) const;
  Matrix hessian(const Vector& x) const;

  /// D_r(x, y) = r(x) - r(y) - <grad r(y), x - y>, evaluated in a
  /// cancellation-free closed form per kind.
  double bregman(const Vector& x, const Vector& y) const;

  bool operator==(const Regularizer&) const = default;

 private:
  /// Throws DomainError unless x is in the interior of dom r (closure when
  /// allow_boundary).
  void check_domain(const Vector& x, bool allow_boundary, const char* what) const;

  RegularizerKind kind_;
  int dim_;
};

/// Geometry the mirror step actually runs in. L1Squared has a divergence
/// 1/2 (sum(x - y))^2 that is not strictly convex once d >= 2, so it is
/// replaced by the Euclidean map; every other kind maps to itself.
Regularizer effective_regularizer(const Regularizer& r, const FeasibleSet& set);

struct BregmanConstants {
  double gamma = 0.0;          // Lipschitz constant of D_r(., z) on the set
  double gamma_envelope = 0.0; // 2 sup_z |grad r(z)|_*
  double gamma_sampled = 0.0;  // max sampled |D(x,z) - D(y,z)| / |x - y|
  double R = 0.0;              // max_{x,y} D_r(x, y)
  double R_sampled = 0.0;
  double R_vertex = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// sup over the set of |grad r(z)|_* (dual of the regularizer's primal
/// norm): max over every vertex and `samples` sampled interior points.
double max_gradient_dual_norm(const Regularizer& r, const FeasibleSet& set, std::size_t samples,
                              std::uint64_t seed, Execution ex = Execution::kParallel);

/// gamma = max(2 sup|grad r|_*, sampled Lipschitz ratio over triples).
double estimate_gamma(const Regularizer& r, const FeasibleSet& set, std::size_t samples,
                      std::uint64_t seed, Execution ex = Execution::kParallel);

/// R = max(sampled pair maximum, vertex-pair maximum).
double estimate_R(const Regularizer& r, const FeasibleSet& set, std::size_t samples,
                  std::uint64_t seed, Execution ex = Execution::kParallel);

/// Maximum of D_r over all pairs of vertices of the set.
double vertex_pair_max_divergence(const Regularizer& r, const FeasibleSet& set);

BregmanConstants estimate_constants(const Regularizer& r, const FeasibleSet& set,
                                    std::size_t samples = 2000, std::uint64_t seed = 42,
                                    Execution ex = Execution::kParallel);

}  // namespace omdlab
