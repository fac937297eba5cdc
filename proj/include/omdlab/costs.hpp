#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "omdlab/geometry.hpp"
#include "omdlab/parallel.hpp"
#include "omdlab/regularizers.hpp"

namespace omdlab {

enum class CostKind { kDOptimal, kPoissonInverse, kSyntheticQuadratic };

std::string to_string(CostKind kind);
CostKind parse_cost_kind(const std::string& name);

/// Data defining one round's cost function.
struct RoundData {
  Matrix matrix;  // H_t (D-optimal) or A_t (Poisson), m x d
  Vector b;       // Poisson measurements, length m
  Vector scale;   // quadratic curvature s, length d
  Vector center;  // quadratic center c_t, length d

  bool operator==(const RoundData& other) const;
};

/// Time-indexed family {f_t}, t = 1..T, with value / gradient / Hessian
/// oracles:
///
///   DOptimal            f_t(x) = -ln det(H_t diag(x) H_t^T)
///   PoissonInverse      f_t(x) = sum_i b_i ln(b_i / (A_t x)_i) + (A_t x)_i - b_i
///   SyntheticQuadratic  f_t(x) = 1/2 sum_i s_i (x_i - c_{t,i})^2
///
/// Rounds may share data (a pool of D-optimal matrices); rounds with the same
/// data index are the same function. Immutable; oracles are thread-safe.
class CostSequence {
 public:
  /// Round t uses pool[schedule[t - 1]].
  static CostSequence d_optimal(std::vector<Matrix> pool, std::vector<std::size_t> schedule);
  static CostSequence poisson(std::vector<Matrix> A, std::vector<Vector> b);
  static CostSequence synthetic(const Vector& scale, const std::vector<Vector>& centers);
  /// Generic constructor; validates every data entry for `kind`.
  static CostSequence from_rounds(CostKind kind, std::vector<RoundData> data,
                                  std::vector<std::size_t> schedule);

  CostKind kind() const { return kind_; }
  int horizon() const { return static_cast<int>(schedule_.size()); }
  int dim() const { return dim_; }
  /// Rows m of H_t / A_t; 0 for the quadratic family.
  int rows() const { return rows_; }

  double value(int t, const Vector& x) const;
  Vector gradient(int t, const Vector& x) const;
  double hessian_quadratic(int t, const Vector& x, const Vector& v) const;
  Matrix hessian(int t, const Vector& x) const;

  std::size_t data_index(int t) const;
  std::size_t distinct_count() const { return data_.size(); }
  const RoundData& data(std::size_t index) const { return data_.at(index); }
  const RoundData& round(int t) const { return data_[data_index(t)]; }
  const std::vector<std::size_t>& schedule() const { return schedule_; }

  /// Oracles addressed by data index instead of round.
  double value_at(std::size_t index, const Vector& x) const;
  Vector gradient_at(std::size_t index, const Vector& x) const;
  Matrix hessian_at(std::size_t index, const Vector& x) const;
  double hessian_quadratic_at(std::size_t index, const Vector& x, const Vector& v) const;

  /// The first `rounds` rounds.
  CostSequence prefix(int rounds) const;

 private:
  CostSequence() = default;
  void check_round(int t) const;
  void check_point(const Vector& x) const;

  CostKind kind_ = CostKind::kSyntheticQuadratic;
  int dim_ = 0;
  int rows_ = 0;
  std::vector<RoundData> data_;
  std::vector<std::size_t> schedule_;
};

/// Pool of `pool_size` m x d matrices with iid U[0,1] entries; each round
/// draws one pool member uniformly.
CostSequence generate_d_optimal(int T, int m, int d, int pool_size, std::uint64_t seed);

/// Per-round A_t, b_t with iid U[0,1] entries (b drawn from (0,1]).
CostSequence generate_poisson(int T, int m, int d, std::uint64_t seed);

/// Scales s_i ~ U[0.5, 2]; c_1 uniform in `set`; c_{t+1} = P_X(c_t + drift w_t)
/// with w_t a random unit vector.
CostSequence generate_synthetic(int T, const FeasibleSet& set, double drift, std::uint64_t seed);

struct SmoothnessCertificate {
  double beta = 0.0;
  double lambda = 0.0;
  RegularizerKind relative_to = RegularizerKind::kEuclidean;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double max_quotient_observed = 0.0;
  double min_quotient_observed = 0.0;
  int argmax_round = 0;
  Vector argmax_point;
};

inline constexpr double kBetaSafety = 1.05;
inline constexpr double kLambdaSafety = 0.95;

struct QuotientRange {
  double min = 0.0;
  double max = 0.0;
};

/// Exact extremes over tangent directions v of
/// v^T Hess f_t(x) v / v^T Hess r(x) v at one point. Throws
/// CertificationError if Hess r is singular on the tangent space.
QuotientRange hessian_quotient_range(const CostSequence& c, std::size_t data_index,
                                     const Regularizer& r, const FeasibleSet& set,
                                     const Vector& x);

/// beta = 1.05 * max, lambda = max(0, 0.95 * min) of the Hessian quotient
/// over sampled (x, v, t): x from a uniform / boundary / vertex mixture plus
/// the set's extreme points for every distinct round, v both random tangent
/// directions and the exact extreme generalized eigen-directions at x.
SmoothnessCertificate certify_relative_smoothness(const CostSequence& c, const Regularizer& r,
                                                  const FeasibleSet& set,
                                                  std::size_t samples = 2000,
                                                  std::uint64_t seed = 42,
                                                  Execution ex = Execution::kParallel);

/// One CSV per round (round_0001.csv, ...) with a "kind,m,d" header, plus
/// manifest.csv with kind, T, m, d. Loading merges rounds with identical data
/// into one data index, numbered by first appearance.
void dump_csv_bundle(const CostSequence& c, const std::filesystem::path& dir);
CostSequence load_csv_bundle(const std::filesystem::path& dir);

}  // namespace omdlab
