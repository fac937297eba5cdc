#include "omdlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Dense>

#include "omdlab/errors.hpp"

namespace omdlab {

NormKind dual(NormKind kind) {
  switch (kind) {
    case NormKind::kL1:
      return NormKind::kLInf;
    case NormKind::kL2:
      return NormKind::kL2;
    case NormKind::kLInf:
      return NormKind::kL1;
  }
  return NormKind::kL2;
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::kL1:
      return "l1";
    case NormKind::kL2:
      return "l2";
    case NormKind::kLInf:
      return "linf";
  }
  return "?";
}

NormKind parse_norm(const std::string& name) {
  if (name == "l1") return NormKind::kL1;
  if (name == "l2") return NormKind::kL2;
  if (name == "linf") return NormKind::kLInf;
  throw InputError("unknown norm '" + name + "'");
}

void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite()) {
    throw InputError(std::string(what) + " has a non-finite coordinate");
  }
}

void require_dim(const Vector& x, int dim, const char* what) {
  if (x.size() != dim) {
    std::ostringstream os;
    os << what << " has dimension " << x.size() << ", expected " << dim;
    throw InputError(os.str());
  }
}

double norm(const Vector& x, NormKind kind) {
  require_finite(x, "norm argument");
  switch (kind) {
    case NormKind::kL1:
      return x.lpNorm<1>();
    case NormKind::kL2:
      return x.norm();
    case NormKind::kLInf:
      return x.size() == 0 ? 0.0 : x.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

FeasibleSet FeasibleSet::truncated_simplex(int dim, double epsilon) {
  if (dim < 1) throw InputError("simplex dimension must be positive");
  if (!(epsilon >= 0.0) || !(epsilon * dim < 1.0)) {
    std::ostringstream os;
    os << "truncated simplex needs 0 <= epsilon < 1/d (epsilon=" << epsilon << ", d=" << dim
       << ")";
    throw InputError(os.str());
  }
  FeasibleSet s;
  s.kind_ = Kind::kTruncatedSimplex;
  s.dim_ = dim;
  s.epsilon_ = epsilon;
  s.lower_ = Vector::Constant(dim, epsilon);
  s.upper_ = Vector::Constant(dim, 1.0 - (dim - 1) * epsilon);
  return s;
}

FeasibleSet FeasibleSet::positive_box(Vector lower, Vector upper) {
  if (lower.size() < 1 || lower.size() != upper.size()) {
    throw InputError("box bounds must be non-empty and of equal length");
  }
  require_finite(lower, "box lower bound");
  require_finite(upper, "box upper bound");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] > 0.0) || !(lower[i] < upper[i])) {
      std::ostringstream os;
      os << "box needs 0 < lower < upper in every coordinate (coordinate " << i << ": ["
         << lower[i] << ", " << upper[i] << "])";
      throw InputError(os.str());
    }
  }
  FeasibleSet s;
  s.kind_ = Kind::kPositiveBox;
  s.dim_ = static_cast<int>(lower.size());
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

FeasibleSet FeasibleSet::positive_box(int dim, double lower, double upper) {
  if (dim < 1) throw InputError("box dimension must be positive");
  return positive_box(Vector::Constant(dim, lower), Vector::Constant(dim, upper));
}

Vector FeasibleSet::center() const {
  if (is_simplex()) return Vector::Constant(dim_, 1.0 / dim_);
  return 0.5 * (lower_ + upper_);
}

std::size_t FeasibleSet::vertex_count() const {
  if (is_simplex()) return static_cast<std::size_t>(dim_);
  if (dim_ > 20) throw InputError("box vertex enumeration limited to dim <= 20");
  return std::size_t{1} << dim_;
}

Vector FeasibleSet::vertex(std::size_t k) const {
  if (k >= vertex_count()) throw InputError("vertex index out of range");
  if (is_simplex()) {
    Vector v = lower_;
    v[static_cast<Eigen::Index>(k)] = upper_[0];
    return v;
  }
  Vector v(dim_);
  for (int i = 0; i < dim_; ++i) v[i] = ((k >> i) & 1U) ? upper_[i] : lower_[i];
  return v;
}

std::vector<Vector> FeasibleSet::vertices() const {
  std::vector<Vector> out;
  const std::size_t n = vertex_count();
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(vertex(k));
  return out;
}

Vector FeasibleSet::project(const Vector& y) const {
  require_dim(y, dim_, "projected point");
  if (is_simplex()) return project_truncated_simplex(y, epsilon_).point;
  return y.cwiseMax(lower_).cwiseMin(upper_);
}

Matrix FeasibleSet::tangent_basis() const {
  if (!is_simplex() || dim_ == 1) {
    if (is_simplex()) return Matrix(dim_, 0);
    return Matrix::Identity(dim_, dim_);
  }
  // Householder-style orthonormal basis of {v : sum(v) = 0}.
  Matrix q = Matrix::Identity(dim_, dim_) - Matrix::Constant(dim_, dim_, 1.0 / dim_);
  Eigen::HouseholderQR<Matrix> qr(q.leftCols(dim_ - 1));
  return qr.householderQ() * Matrix::Identity(dim_, dim_ - 1);
}

std::string FeasibleSet::describe() const {
  std::ostringstream os;
  if (is_simplex()) {
    os << "truncated_simplex(d=" << dim_ << ", epsilon=" << epsilon_ << ")";
  } else {
    os << "positive_box(d=" << dim_ << ", lower=[" << lower_.minCoeff() << ".." << lower_.maxCoeff()
       << "], upper=[" << upper_.minCoeff() << ".." << upper_.maxCoeff() << "])";
  }
  return os.str();
}

bool contains(const FeasibleSet& set, const Vector& x, double tol) {
  require_dim(x, set.dim(), "point");
  if (!(tol >= 0.0)) throw InputError("tolerance must be nonnegative");
  if (!x.allFinite()) return false;
  if (set.is_simplex()) {
    if (std::abs(x.sum() - 1.0) > tol) return false;
    return (x.array() >= set.epsilon() - tol).all();
  }
  return (x.array() >= set.lower().array() - tol).all() &&
         (x.array() <= set.upper().array() + tol).all();
}

double diameter(const FeasibleSet& set, NormKind kind) {
  // Norms are convex, so the maximum over a polytope sits at a vertex. The
  // simplex vertices are permutations of one another and every norm here is
  // permutation invariant; the box lies in the positive orthant where all
  // three norms increase coordinate-wise, so the upper corner wins.
  if (set.is_simplex()) return norm(set.vertex(0), kind);
  return norm(set.upper(), kind);
}

SimplexProjection project_truncated_simplex(const Vector& y, double epsilon) {
  require_finite(y, "projected point");
  const Eigen::Index d = y.size();
  if (d < 1) throw InputError("cannot project an empty vector");
  const double radius = 1.0 - static_cast<double>(d) * epsilon;
  if (!(radius > 0.0)) throw InputError("truncated simplex is empty or a single point");

  // Shift by epsilon to the scaled simplex {z >= 0, sum(z) = radius}.
  std::vector<double> u(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) u[static_cast<std::size_t>(i)] = y[i] - epsilon;
  std::sort(u.begin(), u.end(), std::greater<>());

  double running = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    running += u[j];
    const double candidate = (running - radius) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }

  SimplexProjection out;
  out.point.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    out.point[i] = std::max(y[i] - epsilon - theta, 0.0) + epsilon;
  }
  out.threshold = theta;
  return out;
}

}  // namespace omdlab
