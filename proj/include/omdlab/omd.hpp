#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "omdlab/costs.hpp"
#include "omdlab/geometry.hpp"
#include "omdlab/parallel.hpp"
#include "omdlab/regularizers.hpp"

namespace omdlab {

struct SolverOptions {
  int max_bisection_iters = 200;
  double bisection_tol = 1e-12;  // on the simplex-sum residual
};

struct StepResult {
  Vector point;
  int iterations = 0;      // bisection iterations (0 for closed forms)
  double multiplier = 0.0; // sum-constraint multiplier, 0 on boxes
};

/// <g, z> + D_r(z, x) / eta, the objective minimized by one mirror step.
double mirror_objective(const Vector& g, const Vector& x, double eta, const Regularizer& r,
                        const Vector& z);

/// argmin_{z in set} <g, z> + D_r(z, x) / eta.
///
/// Solvers per (regularizer, set):
///   Euclidean   box: clamp of x - eta g; simplex: sort-based projection.
///   NegEntropy  box: clamp of x exp(-eta g); simplex: normalized
///               multiplicative update with exact epsilon clipping (sort).
///   Burg        box: 1 / (1/x + eta g) clamped, nonpositive denominator
///               maps to the upper bound; simplex: bisection on the sum
///               multiplier.
///   L1Squared   runs in its effective Euclidean geometry (see
///               effective_regularizer).
/// Throws InputError if x is infeasible, SolverError if bisection fails.
StepResult mirror_step(const Vector& g, const Vector& x, double eta, const Regularizer& r,
                       const FeasibleSet& set, const SolverOptions& opts = {});

/// Exact argmin for the raw L1Squared divergence 1/2 (sum(z) - sum(x))^2 on
/// a box: bisection on s = sum(z), each coordinate at a bound unless its
/// threshold sum(x) - eta g_i equals s.
StepResult l1_squared_box_argmin(const Vector& g, const Vector& x, double eta,
                                 const FeasibleSet& box, const SolverOptions& opts = {});

struct OmdConfig {
  double eta = 1.0;
  Regularizer regularizer{RegularizerKind::kEuclidean, 1};
  FeasibleSet set = FeasibleSet::truncated_simplex(1, 0.0);
  Vector x1;  // defaults to set.center() when empty
  SolverOptions solver;
};

struct StepRecord {
  int iterations = 0;
  double multiplier = 0.0;
};

/// x_1..x_{T+1}, gradients and costs of rounds 1..T.
struct Trajectory {
  std::vector<Vector> points;
  std::vector<Vector> gradients;
  std::vector<double> costs;
  std::vector<StepRecord> steps;
  double eta = 0.0;
  Regularizer regularizer{RegularizerKind::kEuclidean, 1};  // effective geometry

  int horizon() const { return static_cast<int>(costs.size()); }
  /// x_t for t = 1..T+1.
  const Vector& x(int t) const { return points.at(static_cast<std::size_t>(t - 1)); }
};

/// x_{t+1} = mirror_step(grad f_t(x_t), x_t, eta, r, X), t = 1..T.
/// Errors are rethrown with the round index prepended.
Trajectory run_omd(const CostSequence& c, const OmdConfig& cfg);

/// CSV: t, x_1..x_d, cost, step_iterations, multiplier; rows 1..T plus a
/// final row T+1 holding x_{T+1} with the remaining fields empty.
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

struct OfflineOptions {
  double beta = 1.0;  // step is 1 / beta
  double tol = 1e-9;
  int max_iters = 10000;
};

struct OfflineResult {
  Vector point;
  int iterations = 0;
  bool converged = false;
};

/// Minimizer of f_t over the set: repeated mirror steps from the set center
/// until |x+ - x|_2 <= tol. On non-convergence returns the best iterate seen
/// with converged = false.
OfflineResult offline_minimizer(const CostSequence& c, int t, const Regularizer& r,
                                const FeasibleSet& set, const OfflineOptions& opts = {});

/// Minimizer of sum_t f_t (averaged gradient, same iteration).
OfflineResult hindsight_minimizer(const CostSequence& c, const Regularizer& r,
                                  const FeasibleSet& set, const OfflineOptions& opts = {});

enum class ComparatorMode { kPerRoundMin, kFixedHindsight, kFromFile };

struct ComparatorRequest {
  ComparatorMode mode = ComparatorMode::kPerRoundMin;
  Regularizer geometry{RegularizerKind::kEuclidean, 1};
  OfflineOptions offline;
  std::filesystem::path file;  // kFromFile
};

struct ComparatorResult {
  std::vector<Vector> points;  // u_1..u_T
  int unconverged = 0;         // offline solves that hit max_iters
};

ComparatorResult comparator_sequence(const CostSequence& c, const FeasibleSet& set,
                                     const ComparatorRequest& req,
                                     Execution ex = Execution::kParallel);

}  // namespace omdlab
