#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace omdlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class NormKind { kL1, kL2, kLInf };

NormKind dual(NormKind kind);
std::string to_string(NormKind kind);
NormKind parse_norm(const std::string& name);

/// Standard l1 / l2 / l-infinity norm. Throws InputError on non-finite input.
double norm(const Vector& x, NormKind kind);

void require_finite(const Vector& x, const char* what);
void require_dim(const Vector& x, int dim, const char* what);

/// Compact convex decision set: the epsilon-truncated probability simplex
/// {x : sum(x) = 1, x_i >= epsilon} or an axis-aligned box inside the open
/// positive orthant. Immutable after construction.
class FeasibleSet {
 public:
  enum class Kind { kTruncatedSimplex, kPositiveBox };

  /// Requires dim >= 1 and 0 <= epsilon < 1/dim. epsilon = 0 gives the plain
  /// simplex, which is only usable with regularizers finite on its boundary.
  static FeasibleSet truncated_simplex(int dim, double epsilon);

  /// Requires 0 < lower_i < upper_i for every coordinate.
  static FeasibleSet positive_box(Vector lower, Vector upper);
  static FeasibleSet positive_box(int dim, double lower, double upper);

  Kind kind() const { return kind_; }
  bool is_simplex() const { return kind_ == Kind::kTruncatedSimplex; }
  int dim() const { return dim_; }
  double epsilon() const { return epsilon_; }

  /// Coordinate-wise bounds. For the simplex these are epsilon and
  /// 1 - (dim - 1) * epsilon.
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  /// Centroid of the simplex or midpoint of the box.
  Vector center() const;

  /// Simplex: the dim vertices. Box: all 2^dim corners (dim <= 20).
  std::vector<Vector> vertices() const;
  std::size_t vertex_count() const;
  /// k-th vertex in the order used by vertices().
  Vector vertex(std::size_t k) const;

  /// Euclidean projection onto the set.
  Vector project(const Vector& y) const;

  /// Orthonormal basis (columns) of the directions spanned by the set:
  /// the sum-zero subspace for the simplex, the identity for the box.
  Matrix tangent_basis() const;

  std::string describe() const;

 private:
  FeasibleSet() = default;

  Kind kind_ = Kind::kPositiveBox;
  int dim_ = 0;
  double epsilon_ = 0.0;
  Vector lower_;
  Vector upper_;
};

bool contains(const FeasibleSet& set, const Vector& x, double tol);

/// max over the set of norm(x, kind). Both set kinds attain it at a vertex.
double diameter(const FeasibleSet& set, NormKind kind);

struct SimplexProjection {
  Vector point;
  double threshold = 0.0;  // Lagrange multiplier of the sum constraint
};

/// Euclidean projection of y onto {sum(x) = 1, x_i >= epsilon} by sorting.
SimplexProjection project_truncated_simplex(const Vector& y, double epsilon);

}  // namespace omdlab
