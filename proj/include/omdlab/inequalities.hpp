#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omdlab/costs.hpp"
#include "omdlab/omd.hpp"
#include "omdlab/parallel.hpp"
#include "omdlab/regularizers.hpp"

namespace omdlab {

/// Outcome of one property check over many instances. `max_violation` is
/// the largest (measured - allowed) seen, clamped below at 0.
struct CheckTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;

  bool passed() const { return failed == 0; }
  void record(double excess);
  void merge(const CheckTally& other);
};

/// <grad r(z) - grad r(y), x - y> = D(x,y) - D(x,z) + D(y,z) on random
/// triples. Error is relative to max(|D(x,y)|, |D(x,z)|, |D(y,z)|, S) with S
/// the sum of |summands| of the left inner product; absolute when all are 0.
CheckTally check_three_point(const Regularizer& r, const FeasibleSet& set, std::size_t triples,
                             std::uint64_t seed, double tol = 1e-9,
                             Execution ex = Execution::kParallel);

/// Every step x_{t+1} of `traj` against `u_per_step` sampled u:
///   eta <x_{t+1} - u, g_t> <= D(u, x_t) - D(u, x_{t+1}) - D(x_{t+1}, x_t).
/// Absolute tolerance. Uses the trajectory's effective geometry.
CheckTally check_step_optimality(const Trajectory& traj, const FeasibleSet& set,
                                 std::size_t u_per_step, std::uint64_t seed, double tol = 1e-8,
                                 Execution ex = Execution::kParallel);

/// Same steps, first-order form of the condition:
///   <eta g_t + grad r(x_{t+1}) - grad r(x_t), u - x_{t+1}> >= 0.
CheckTally check_first_order_optimality(const Trajectory& traj, const FeasibleSet& set,
                                        std::size_t u_per_step, std::uint64_t seed,
                                        double tol = 1e-8, Execution ex = Execution::kParallel);

/// Per-step descent at the trajectory's step size:
///   eta (f_t(x_{t+1}) - f_t(u)) <= D(u, x_t) - D(u, x_{t+1})
///                                   - (1 - beta eta) D(x_{t+1}, x_t).
CheckTally check_step_descent(const Trajectory& traj, const CostSequence& c,
                              const FeasibleSet& set, double beta, std::size_t u_per_step,
                              std::uint64_t seed, double tol = 1e-8,
                              Execution ex = Execution::kParallel);

/// |D(u_{t+1}, x_{t+1}) - D(u_t, x_{t+1})| <= gamma |u_{t+1} - u_t| for
/// t = 1..T-1, norm = the geometry's primal norm. Relative tolerance on the
/// larger divergence.
CheckTally check_bregman_lipschitz(const Trajectory& traj, const std::vector<Vector>& u,
                                   double gamma, double tol = 1e-9);

/// sum_t [D(u_t, x_t) - D(u_t, x_{t+1})] computed directly and as
/// D(u_1, x_1) - D(u_{T+1}, x_{T+1}) + sum_t [D(u_{t+1}, x_{t+1}) - D(u_t, x_{t+1})]
/// with u_{T+1} = u_T. Relative tolerance on the sum of |terms|.
CheckTally check_telescoping(const Trajectory& traj, const std::vector<Vector>& u,
                             double tol = 1e-8);

}  // namespace omdlab
