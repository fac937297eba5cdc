#include "omdlab/regularizers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omdlab/errors.hpp"
#include "omdlab/sampling.hpp"

namespace omdlab {

namespace {

// t - log(1 + t), accurate near t = 0. Burg divergence per coordinate with
// t = (x - y) / y.
double burg_term(double x, double y) {
  const double t = (x - y) / y;
  return t - std::log1p(t);
}

// y * ((1 + t) log(1 + t) - t): generalized KL per coordinate.
double kl_term(double x, double y) {
  if (x == 0.0) return y;
  const double t = (x - y) / y;
  return y * ((1.0 + t) * std::log1p(t) - t);
}

}  // namespace

std::string short_name(RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::kEuclidean:
      return "l2sq";
    case RegularizerKind::kNegEntropy:
      return "kl";
    case RegularizerKind::kBurg:
      return "burg";
    case RegularizerKind::kL1Squared:
      return "l1sq";
  }
  return "?";
}

RegularizerKind parse_regularizer(const std::string& name) {
  if (name == "l2sq" || name == "euclidean") return RegularizerKind::kEuclidean;
  if (name == "kl" || name == "negentropy") return RegularizerKind::kNegEntropy;
  if (name == "burg") return RegularizerKind::kBurg;
  if (name == "l1sq") return RegularizerKind::kL1Squared;
  throw InputError("unknown regularizer '" + name + "' (expected burg, kl, l2sq or l1sq)");
}

Regularizer::Regularizer(RegularizerKind kind, int dim) : kind_(kind), dim_(dim) {
  if (dim < 1) throw InputError("regularizer dimension must be positive");
}

NormKind Regularizer::primal_norm() const {
  return kind_ == RegularizerKind::kEuclidean ? NormKind::kL2 : NormKind::kL1;
}

void Regularizer::check_domain(const Vector& x, bool allow_boundary, const char* what) const {
  require_dim(x, dim_, what);
  require_finite(x, what);
  if (kind_ == RegularizerKind::kEuclidean) return;
  // L1Squared is smooth on the closed orthant, so its domain check is x >= 0.
  const bool closed = allow_boundary || kind_ == RegularizerKind::kL1Squared;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const bool ok = closed ? x[i] >= 0.0 : x[i] > 0.0;
    if (!ok) {
      std::ostringstream os;
      os << what << " coordinate " << i << " = " << x[i] << " is outside the domain of "
         << name();
      throw DomainError(os.str());
    }
  }
}

double Regularizer::value(const Vector& x) const {
  switch (kind_) {
    case RegularizerKind::kEuclidean:
      check_domain(x, false, "point");
      return 0.5 * x.squaredNorm();
    case RegularizerKind::kNegEntropy: {
      check_domain(x, true, "point");
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        s += (x[i] > 0.0 ? x[i] * std::log(x[i]) : 0.0) - x[i];
      }
      return s;
    }
    case RegularizerKind::kBurg:
      check_domain(x, false, "point");
      return -x.array().log().sum();
    case RegularizerKind::kL1Squared: {
      check_domain(x, false, "point");
      const double s = x.sum();
      return 0.5 * s * s;
    }
  }
  return 0.0;
}

Vector Regularizer::gradient(const Vector& x) const {
  check_domain(x, false, "point");
  switch (kind_) {
    case RegularizerKind::kEuclidean:
      return x;
    case RegularizerKind::kNegEntropy:
      return x.array().log();
    case RegularizerKind::kBurg:
      return -x.array().inverse();
    case RegularizerKind::kL1Squared:
      return Vector::Constant(dim_, x.sum());
  }
  return x;
}

double Regularizer::hessian_quadratic(const Vector& x, const Vector& v) const {
  check_domain(x, false, "point");
  require_dim(v, dim_, "direction");
  switch (kind_) {
    case RegularizerKind::kEuclidean:
      return v.squaredNorm();
    case RegularizerKind::kNegEntropy:
      return (v.array().square() / x.array()).sum();
    case RegularizerKind::kBurg:
      return (v.array().square() / x.array().square()).sum();
    case RegularizerKind::kL1Squared: {
      const double s = v.sum();
      return s * s;
    }
  }
  return 0.0;
}

Matrix Regularizer::hessian(const Vector& x) const {
  check_domain(x, false, "point");
  switch (kind_) {
    case RegularizerKind::kEuclidean:
      return Matrix::Identity(dim_, dim_);
    case RegularizerKind::kNegEntropy:
      return x.array().inverse().matrix().asDiagonal();
    case RegularizerKind::kBurg:
      return x.array().square().inverse().matrix().asDiagonal();
    case RegularizerKind::kL1Squared:
      return Matrix::Ones(dim_, dim_);
  }
  return Matrix::Identity(dim_, dim_);
}

double Regularizer::bregman(const Vector& x, const Vector& y) const {
  check_domain(x, true, "first argument");
  check_domain(y, false, "second argument");
  double s = 0.0;
  switch (kind_) {
    case RegularizerKind::kEuclidean:
      return 0.5 * (x - y).squaredNorm();
    case RegularizerKind::kNegEntropy:
      for (Eigen::Index i = 0; i < x.size(); ++i) s += kl_term(x[i], y[i]);
      return s;
    case RegularizerKind::kBurg:
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0) throw DomainError("Burg divergence is infinite at a zero coordinate");
        s += burg_term(x[i], y[i]);
      }
      return s;
    case RegularizerKind::kL1Squared: {
      const double diff = x.sum() - y.sum();
      return 0.5 * diff * diff;
    }
  }
  return s;
}

Regularizer effective_regularizer(const Regularizer& r, const FeasibleSet& set) {
  if (r.kind() == RegularizerKind::kL1Squared && set.dim() >= 2) {
    return Regularizer(RegularizerKind::kEuclidean, r.dim());
  }
  return r;
}

double max_gradient_dual_norm(const Regularizer& r, const FeasibleSet& set, std::size_t samples,
                              std::uint64_t seed, Execution ex) {
  if (r.dim() != set.dim()) throw InputError("regularizer and set dimensions differ");
  const NormKind dn = r.dual_norm();
  std::vector<Vector> pts;
  if (set.is_simplex() || set.dim() <= 12) {
    pts = set.vertices();
  }
  Sampler sampler(seed);
  for (Vector& p : mixed_points(set, samples, sampler)) pts.push_back(std::move(p));
  const auto values =
      map_indices<double>(pts.size(), ex, [&](std::size_t i) { return norm(r.gradient(pts[i]), dn); });
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

namespace {

double sampled_lipschitz_ratio(const Regularizer& r, const FeasibleSet& set, std::size_t samples,
                               std::uint64_t seed, Execution ex) {
  Sampler sampler(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::vector<Vector> pts = mixed_points(set, 3 * samples, sampler);
  const NormKind pn = r.primal_norm();
  const auto ratios = map_indices<double>(samples, ex, [&](std::size_t k) {
    const Vector& x = pts[3 * k];
    const Vector& y = pts[3 * k + 1];
    const Vector& z = pts[3 * k + 2];
    const double dist = norm(x - y, pn);
    if (dist < 1e-12) return 0.0;
    return std::abs(r.bregman(x, z) - r.bregman(y, z)) / dist;
  });
  return *std::max_element(ratios.begin(), ratios.end());
}

double sampled_pair_max(const Regularizer& r, const FeasibleSet& set, std::size_t samples,
                        std::uint64_t seed, Execution ex) {
  Sampler sampler(seed);
  const std::vector<Vector> pts = mixed_points(set, 2 * samples, sampler);
  const auto values = map_indices<double>(
      samples, ex, [&](std::size_t k) { return r.bregman(pts[2 * k], pts[2 * k + 1]); });
  return *std::max_element(values.begin(), values.end());
}

}  // namespace

double estimate_gamma(const Regularizer& r, const FeasibleSet& set, std::size_t samples,
                      std::uint64_t seed, Execution ex) {
  if (samples < 1) throw InputError("estimate_gamma needs at least one sample");
  const double envelope = 2.0 * max_gradient_dual_norm(r, set, samples, seed, ex);
  return std::max(envelope, sampled_lipschitz_ratio(r, set, samples, seed, ex));
}

double vertex_pair_max_divergence(const Regularizer& r, const FeasibleSet& set) {
  if (r.dim() != set.dim()) throw InputError("regularizer and set dimensions differ");
  if (set.is_simplex()) {
    const auto verts = set.vertices();
    double best = 0.0;
    for (const Vector& x : verts) {
      for (const Vector& y : verts) best = std::max(best, r.bregman(x, y));
    }
    return best;
  }
  // Box corners are products of per-coordinate choices. The separable kinds
  // decompose coordinate-wise; L1Squared depends only on the sums.
  if (r.kind() == RegularizerKind::kL1Squared) {
    const double span = set.upper().sum() - set.lower().sum();
    return 0.5 * span * span;
  }
  const Regularizer scalar(r.kind(), 1);
  double total = 0.0;
  for (int i = 0; i < set.dim(); ++i) {
    const double ends[2] = {set.lower()[i], set.upper()[i]};
    double best = 0.0;
    for (double a : ends) {
      for (double b : ends) {
        best = std::max(best, scalar.bregman(Vector::Constant(1, a), Vector::Constant(1, b)));
      }
    }
    total += best;
  }
  return total;
}

double estimate_R(const Regularizer& r, const FeasibleSet& set, std::size_t samples,
                  std::uint64_t seed, Execution ex) {
  if (samples < 1) throw InputError("estimate_R needs at least one sample");
  return std::max(sampled_pair_max(r, set, samples, seed, ex), vertex_pair_max_divergence(r, set));
}

BregmanConstants estimate_constants(const Regularizer& r, const FeasibleSet& set,
                                    std::size_t samples, std::uint64_t seed, Execution ex) {
  if (samples < 1) throw InputError("constant estimation needs at least one sample");
  BregmanConstants c;
  c.samples = samples;
  c.seed = seed;
  c.gamma_envelope = 2.0 * max_gradient_dual_norm(r, set, samples, seed, ex);
  c.gamma_sampled = sampled_lipschitz_ratio(r, set, samples, seed, ex);
  c.gamma = std::max(c.gamma_envelope, c.gamma_sampled);
  c.R_sampled = sampled_pair_max(r, set, samples, seed, ex);
  c.R_vertex = vertex_pair_max_divergence(r, set);
  c.R = std::max(c.R_sampled, c.R_vertex);
  return c;
}

}  // namespace omdlab
