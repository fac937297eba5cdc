#include "omdlab/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "omdlab/errors.hpp"
#include "omdlab/regret.hpp"
#include "omdlab/sampling.hpp"

namespace omdlab {

void CheckTally::record(double excess) {
  ++checked;
  if (!(excess <= 0.0)) {
    ++failed;
    max_violation = std::isfinite(excess) ? std::max(max_violation, excess) : excess;
  }
}

void CheckTally::merge(const CheckTally& other) {
  checked += other.checked;
  failed += other.failed;
  max_violation = std::max(max_violation, other.max_violation);
}

CheckTally check_three_point(const Regularizer& r, const FeasibleSet& set, std::size_t triples,
                             std::uint64_t seed, double tol, Execution ex) {
  CheckTally tally{"three-point identity", 0, 0, 0.0, tol};
  const auto parts = map_indices<CheckTally>(triples, ex, [&](std::size_t k) {
    Sampler s(derive_seed(seed, k));
    const std::vector<Vector> p = mixed_points(set, 5, s);
    // Rotate through the mixture so triples combine every point type.
    const Vector& x = p[k % 5];
    const Vector& y = p[(k + 1) % 5];
    const Vector& z = p[(k + 2 + (k / 5) % 2) % 5];
    const double dxy = r.bregman(x, y);
    const double dxz = r.bregman(x, z);
    const double dyz = r.bregman(y, z);
    const Vector terms = (r.gradient(z) - r.gradient(y)).cwiseProduct(x - y);
    const double lhs = terms.sum();
    const double rhs = dxy - dxz + dyz;
    const double scale =
        std::max({std::abs(dxy), std::abs(dxz), std::abs(dyz), terms.cwiseAbs().sum()});
    const double err = scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
    CheckTally t{"", 0, 0, 0.0, tol};
    t.record(err - tol);
    return t;
  });
  for (const auto& p : parts) tally.merge(p);
  return tally;
}

namespace {

template <class Check>
CheckTally per_step(const char* name, const Trajectory& traj, const FeasibleSet& set,
                    std::size_t u_per_step, std::uint64_t seed, double tol, Execution ex,
                    Check&& check) {
  CheckTally tally{name, 0, 0, 0.0, tol};
  const std::size_t T = static_cast<std::size_t>(traj.horizon());
  const auto parts = map_indices<CheckTally>(T, ex, [&](std::size_t i) {
    Sampler s(derive_seed(seed, i));
    const std::vector<Vector> us = mixed_points(set, u_per_step, s);
    CheckTally t{"", 0, 0, 0.0, tol};
    for (const Vector& u : us) t.record(check(static_cast<int>(i) + 1, u) - tol);
    return t;
  });
  for (const auto& p : parts) tally.merge(p);
  return tally;
}

}  // namespace

CheckTally check_step_optimality(const Trajectory& traj, const FeasibleSet& set,
                                 std::size_t u_per_step, std::uint64_t seed, double tol,
                                 Execution ex) {
  const Regularizer& r = traj.regularizer;
  return per_step("mirror-step optimality", traj, set, u_per_step, seed, tol, ex,
                  [&](int t, const Vector& u) {
                    const Vector& x = traj.x(t);
                    const Vector& xn = traj.x(t + 1);
                    const Vector& g = traj.gradients[static_cast<std::size_t>(t - 1)];
                    const double lhs = traj.eta * (xn - u).dot(g);
                    const double rhs = r.bregman(u, x) - r.bregman(u, xn) - r.bregman(xn, x);
                    return lhs - rhs;
                  });
}

CheckTally check_first_order_optimality(const Trajectory& traj, const FeasibleSet& set,
                                        std::size_t u_per_step, std::uint64_t seed, double tol,
                                        Execution ex) {
  const Regularizer& r = traj.regularizer;
  return per_step("first-order optimality", traj, set, u_per_step, seed, tol, ex,
                  [&](int t, const Vector& u) {
                    const Vector& x = traj.x(t);
                    const Vector& xn = traj.x(t + 1);
                    const Vector& g = traj.gradients[static_cast<std::size_t>(t - 1)];
                    const Vector res = traj.eta * g + r.gradient(xn) - r.gradient(x);
                    return -res.dot(u - xn);
                  });
}

CheckTally check_step_descent(const Trajectory& traj, const CostSequence& c,
                              const FeasibleSet& set, double beta, std::size_t u_per_step,
                              std::uint64_t seed, double tol, Execution ex) {
  const Regularizer& r = traj.regularizer;
  const double slack = 1.0 - beta * traj.eta;
  return per_step("per-step descent", traj, set, u_per_step, seed, tol, ex,
                  [&](int t, const Vector& u) {
                    const Vector& x = traj.x(t);
                    const Vector& xn = traj.x(t + 1);
                    const double lhs = traj.eta * (c.value(t, xn) - c.value(t, u));
                    const double rhs =
                        r.bregman(u, x) - r.bregman(u, xn) - slack * r.bregman(xn, x);
                    return lhs - rhs;
                  });
}

CheckTally check_bregman_lipschitz(const Trajectory& traj, const std::vector<Vector>& u,
                                   double gamma, double tol) {
  CheckTally tally{"bregman lipschitz", 0, 0, 0.0, tol};
  const Regularizer& r = traj.regularizer;
  const int T = traj.horizon();
  if (static_cast<int>(u.size()) != T) throw InputError("comparator length differs from horizon");
  for (int t = 1; t < T; ++t) {
    const Vector& un = u[static_cast<std::size_t>(t)];
    const Vector& uc = u[static_cast<std::size_t>(t - 1)];
    const Vector& xn = traj.x(t + 1);
    const double a = r.bregman(un, xn);
    const double b = r.bregman(uc, xn);
    const double allowed = gamma * norm(un - uc, r.primal_norm());
    tally.record(std::abs(a - b) - allowed - tol * std::max({1.0, std::abs(a), std::abs(b)}));
  }
  return tally;
}

CheckTally check_telescoping(const Trajectory& traj, const std::vector<Vector>& u, double tol) {
  CheckTally tally{"telescoping", 0, 0, 0.0, tol};
  const Regularizer& r = traj.regularizer;
  const int T = traj.horizon();
  if (static_cast<int>(u.size()) != T) throw InputError("comparator length differs from horizon");
  auto ut = [&](int t) -> const Vector& {
    return u[static_cast<std::size_t>(std::min(t, T) - 1)];
  };
  CompensatedSum direct;
  CompensatedSum reindexed;
  double scale = 0.0;
  for (int t = 1; t <= T; ++t) {
    const double a = r.bregman(ut(t), traj.x(t));
    const double b = r.bregman(ut(t), traj.x(t + 1));
    const double c = r.bregman(ut(t + 1), traj.x(t + 1));
    direct.add(a);
    direct.add(-b);
    reindexed.add(c);
    reindexed.add(-b);
    scale += std::abs(a) + std::abs(b) + std::abs(c);
  }
  reindexed.add(r.bregman(ut(1), traj.x(1)));
  reindexed.add(-r.bregman(ut(T + 1), traj.x(T + 1)));
  const double err = std::abs(direct.value() - reindexed.value()) / std::max(1.0, scale);
  tally.record(err - tol);
  return tally;
}

}  // namespace omdlab
