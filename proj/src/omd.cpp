#include "omdlab/omd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "omdlab/csv.hpp"
#include "omdlab/errors.hpp"

namespace omdlab {

namespace {

constexpr double kFeasibilityTol = 1e-9;

void check_step_inputs(const Vector& g, const Vector& x, double eta, const FeasibleSet& set) {
  require_dim(g, set.dim(), "gradient");
  require_dim(x, set.dim(), "current point");
  require_finite(g, "gradient");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InputError("step size must be positive and finite");
  if (!contains(set, x, kFeasibilityTol)) throw InputError("current point is not feasible");
}

StepResult euclidean_step(const Vector& g, const Vector& x, double eta, const FeasibleSet& set) {
  const Vector y = x - eta * g;
  if (set.is_simplex()) {
    auto p = project_truncated_simplex(y, set.epsilon());
    return {std::move(p.point), 0, p.threshold};
  }
  return {y.cwiseMax(set.lower()).cwiseMin(set.upper()), 0, 0.0};
}

StepResult entropy_step(const Vector& g, const Vector& x, double eta, const FeasibleSet& set) {
  const Vector logw = x.array().log() - eta * g.array();
  if (!set.is_simplex()) {
    Vector z(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      z[i] = std::clamp(std::exp(logw[i]), set.lower()[i], set.upper()[i]);
    }
    return {z, 0, 0.0};
  }
  // z_i = max(eps, exp(logw_i - nu)), sum(z) = 1. Scan the number k of
  // unclipped coordinates downward; the first k whose smallest member stays
  // above eps is the solution.
  const Eigen::Index d = x.size();
  const double eps = set.epsilon();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return logw[a] > logw[b]; });
  const double top = logw[order.front()];
  std::vector<double> prefix(static_cast<std::size_t>(d));
  double acc = 0.0;
  for (std::size_t j = 0; j < prefix.size(); ++j) {
    acc += std::exp(logw[order[j]] - top);
    prefix[j] = acc;
  }
  double nu = 0.0;
  for (Eigen::Index k = d; k >= 1; --k) {
    const double mass = 1.0 - static_cast<double>(d - k) * eps;
    nu = top + std::log(prefix[static_cast<std::size_t>(k - 1)]) - std::log(mass);
    if (eps == 0.0 || logw[order[static_cast<std::size_t>(k - 1)]] - nu >= std::log(eps)) break;
  }
  Vector z(d);
  for (Eigen::Index i = 0; i < d; ++i) z[i] = std::max(eps, std::exp(logw[i] - nu));
  return {z, 0, nu};
}

StepResult burg_step(const Vector& g, const Vector& x, double eta, const FeasibleSet& set,
                     const SolverOptions& opts) {
  const Vector a = x.array().inverse() + eta * g.array();
  const Eigen::Index d = x.size();
  if (!set.is_simplex()) {
    Vector z(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      // Objective derivative in coordinate i is a_i - 1/z: when a_i <= 0 it
      // is negative on the whole interval.
      z[i] = a[i] <= 0.0 ? set.upper()[i] : std::clamp(1.0 / a[i], set.lower()[i], set.upper()[i]);
    }
    return {z, 0, 0.0};
  }

  const double eps = set.epsilon();
  auto coords = [&](double nu, Vector& z) {
    for (Eigen::Index i = 0; i < d; ++i) z[i] = std::max(eps, 1.0 / (a[i] + nu));
  };
  auto residual = [&](double nu) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) s += std::max(eps, 1.0 / (a[i] + nu));
    return s - 1.0;
  };
  // residual is strictly decreasing on nu > -min(a) while any coordinate is
  // unclipped. At lo the smallest-a coordinate alone contributes 2; at hi
  // every coordinate is at most max(eps, 1/(d+1)).
  double lo = -a.minCoeff() + 0.5;
  double hi = std::max(lo + 1.0, static_cast<double>(d + 1) - a.minCoeff());
  double r_lo = residual(lo);
  double r_hi = residual(hi);
  if (!(r_lo > 0.0) || !(r_hi < 0.0)) {
    std::ostringstream os;
    os << "Burg simplex step failed to bracket the multiplier (residuals " << r_lo << ", " << r_hi
       << ")";
    throw SolverError(os.str());
  }
  int iters = 0;
  while (iters < opts.max_bisection_iters) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++iters;
    const double r_mid = residual(mid);
    if (r_mid == 0.0) {
      lo = hi = mid;
      r_lo = r_hi = 0.0;
      break;
    }
    if (r_mid > 0.0) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
      r_hi = r_mid;
    }
    if (std::min(r_lo, -r_hi) <= opts.bisection_tol && hi - lo <= 1e-15 * std::abs(hi)) break;
  }
  const double nu = std::abs(r_lo) <= std::abs(r_hi) ? lo : hi;
  const double res = std::min(std::abs(r_lo), std::abs(r_hi));
  const bool collapsed = 0.5 * (lo + hi) <= lo || 0.5 * (lo + hi) >= hi;
  if (!(res <= opts.bisection_tol || (collapsed && res <= kFeasibilityTol))) {
    std::ostringstream os;
    os << "Burg simplex step did not converge: sum residual " << res << " after " << iters
       << " bisection iterations (multiplier " << nu << ")";
    throw SolverError(os.str());
  }
  Vector z(d);
  coords(nu, z);
  return {z, iters, nu};
}

}  // namespace

double mirror_objective(const Vector& g, const Vector& x, double eta, const Regularizer& r,
                        const Vector& z) {
  return g.dot(z) + r.bregman(z, x) / eta;
}

StepResult mirror_step(const Vector& g, const Vector& x, double eta, const Regularizer& r,
                       const FeasibleSet& set, const SolverOptions& opts) {
  check_step_inputs(g, x, eta, set);
  if (r.dim() != set.dim()) throw InputError("regularizer and set dimensions differ");
  if (opts.max_bisection_iters < 1 || !(opts.bisection_tol > 0.0)) {
    throw InputError("solver options need max_bisection_iters >= 1 and bisection_tol > 0");
  }
  switch (effective_regularizer(r, set).kind()) {
    case RegularizerKind::kEuclidean:
    case RegularizerKind::kL1Squared:  // d == 1: same map as Euclidean
      return euclidean_step(g, x, eta, set);
    case RegularizerKind::kNegEntropy:
      return entropy_step(g, x, eta, set);
    case RegularizerKind::kBurg:
      return burg_step(g, x, eta, set, opts);
  }
  throw InputError("unsupported regularizer");
}

StepResult l1_squared_box_argmin(const Vector& g, const Vector& x, double eta,
                                 const FeasibleSet& box, const SolverOptions& opts) {
  if (box.is_simplex()) throw InputError("l1_squared_box_argmin needs a box");
  check_step_inputs(g, x, eta, box);
  const Eigen::Index d = x.size();
  const Vector& lo_b = box.lower();
  const Vector& hi_b = box.upper();
  const Vector thresh = (x.sum() - eta * g.array()).matrix();

  // h(s) = S(s) - s with S(s) = sum of the bound each coordinate takes at
  // sum s; strictly decreasing, h(sum lower) >= 0 >= h(sum upper).
  auto h = [&](double s) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) total += thresh[i] > s ? hi_b[i] : lo_b[i];
    return total - s;
  };
  double lo = lo_b.sum();
  double hi = hi_b.sum();
  int iters = 0;
  while (iters < opts.max_bisection_iters) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++iters;
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  const double tie = std::max(hi - lo, 1e-12 * std::max(1.0, std::abs(s)));

  Vector z(d);
  std::vector<Eigen::Index> free;
  double assigned = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (std::abs(thresh[i] - s) <= tie) {
      free.push_back(i);
      continue;
    }
    z[i] = thresh[i] > s ? hi_b[i] : lo_b[i];
    assigned += z[i];
  }
  // Coordinates sitting at the jump share the remaining mass.
  double remaining = s - assigned;
  for (Eigen::Index i : free) {
    z[i] = std::clamp(remaining, lo_b[i], hi_b[i]);
    remaining -= z[i];
  }
  for (Eigen::Index i : free) {
    // Push any leftover back into coordinates with room.
    const double room = remaining > 0 ? hi_b[i] - z[i] : lo_b[i] - z[i];
    const double take = remaining > 0 ? std::min(room, remaining) : std::max(room, remaining);
    z[i] += take;
    remaining -= take;
  }
  return {z, iters, s};
}

Trajectory run_omd(const CostSequence& c, const OmdConfig& cfg) {
  const FeasibleSet& set = cfg.set;
  if (c.dim() != set.dim() || cfg.regularizer.dim() != set.dim()) {
    throw InputError("cost, regularizer and set dimensions differ");
  }
  if (!(cfg.eta > 0.0)) throw InputError("step size must be positive");
  Vector x = cfg.x1.size() == 0 ? set.center() : cfg.x1;
  require_dim(x, set.dim(), "initial point");
  if (!contains(set, x, kFeasibilityTol)) throw InputError("initial point is not feasible");

  Trajectory traj;
  traj.eta = cfg.eta;
  traj.regularizer = effective_regularizer(cfg.regularizer, set);
  const int T = c.horizon();
  traj.points.reserve(static_cast<std::size_t>(T) + 1);
  traj.points.push_back(x);
  for (int t = 1; t <= T; ++t) {
    const std::string where = "round " + std::to_string(t) + ": ";
    try {
      const double cost = c.value(t, x);
      Vector g = c.gradient(t, x);
      StepResult step = mirror_step(g, x, cfg.eta, cfg.regularizer, set, cfg.solver);
      traj.costs.push_back(cost);
      traj.gradients.push_back(std::move(g));
      traj.steps.push_back({step.iterations, step.multiplier});
      x = std::move(step.point);
      traj.points.push_back(x);
    } catch (const SolverError& e) {
      throw SolverError(where + e.what());
    } catch (const DomainError& e) {
      throw DomainError(where + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError(where + e.what());
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
  }
  return traj;
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  std::ostringstream os;
  const Eigen::Index d = traj.points.empty() ? 0 : traj.points.front().size();
  os << "t";
  for (Eigen::Index i = 0; i < d; ++i) os << ",x" << (i + 1);
  os << ",cost,step_iterations,multiplier\n";
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    os << (k + 1);
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << csv::format_double(traj.points[k][i]);
    if (k < traj.costs.size()) {
      os << ',' << csv::format_double(traj.costs[k]) << ',' << traj.steps[k].iterations << ','
         << csv::format_double(traj.steps[k].multiplier) << '\n';
    } else {
      os << ",,,\n";
    }
  }
  csv::write_text(path, os.str());
}

namespace {

template <class Objective, class Gradient>
OfflineResult iterate_to_fixed_point(const Regularizer& r, const FeasibleSet& set,
                                     const OfflineOptions& opts, Objective&& value,
                                     Gradient&& gradient) {
  if (!(opts.tol > 0.0) || opts.max_iters < 1 || !(opts.beta > 0.0)) {
    throw InputError("offline minimizer needs tol > 0, max_iters >= 1, beta > 0");
  }
  const double eta = 1.0 / opts.beta;
  Vector x = set.center();
  OfflineResult best{x, 0, false};
  double best_value = value(x);
  for (int k = 1; k <= opts.max_iters; ++k) {
    Vector next = mirror_step(gradient(x), x, eta, r, set).point;
    const double move = (next - x).norm();
    x = std::move(next);
    const double fx = value(x);
    if (fx <= best_value) {
      best_value = fx;
      best.point = x;
    }
    best.iterations = k;
    if (move <= opts.tol) {
      best.point = x;
      best.converged = true;
      return best;
    }
  }
  return best;
}

}  // namespace

OfflineResult offline_minimizer(const CostSequence& c, int t, const Regularizer& r,
                                const FeasibleSet& set, const OfflineOptions& opts) {
  const std::size_t idx = c.data_index(t);
  return iterate_to_fixed_point(
      r, set, opts, [&](const Vector& x) { return c.value_at(idx, x); },
      [&](const Vector& x) { return c.gradient_at(idx, x); });
}

namespace {

// Multiplicity of each distinct function over the horizon.
std::vector<double> round_weights(const CostSequence& c) {
  std::vector<double> w(c.distinct_count(), 0.0);
  for (std::size_t s : c.schedule()) w[s] += 1.0;
  return w;
}

}  // namespace

OfflineResult hindsight_minimizer(const CostSequence& c, const Regularizer& r,
                                  const FeasibleSet& set, const OfflineOptions& opts) {
  const std::vector<double> w = round_weights(c);
  const double T = static_cast<double>(c.horizon());
  auto value = [&](const Vector& x) {
    double s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] > 0.0) s += w[k] * c.value_at(k, x);
    }
    return s / T;
  };
  auto gradient = [&](const Vector& x) {
    Vector g = Vector::Zero(c.dim());
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] > 0.0) g += w[k] * c.gradient_at(k, x);
    }
    return Vector(g / T);
  };
  return iterate_to_fixed_point(r, set, opts, value, gradient);
}

ComparatorResult comparator_sequence(const CostSequence& c, const FeasibleSet& set,
                                     const ComparatorRequest& req, Execution ex) {
  const int T = c.horizon();
  ComparatorResult out;
  switch (req.mode) {
    case ComparatorMode::kPerRoundMin: {
      // One solve per distinct function, shared by every round using it.
      std::vector<std::size_t> first_round(c.distinct_count(), 0);
      std::vector<bool> used(c.distinct_count(), false);
      for (int t = 1; t <= T; ++t) {
        const std::size_t k = c.data_index(t);
        if (!used[k]) {
          used[k] = true;
          first_round[k] = static_cast<std::size_t>(t);
        }
      }
      const auto solved = map_indices<OfflineResult>(c.distinct_count(), ex, [&](std::size_t k) {
        if (!used[k]) return OfflineResult{set.center(), 0, true};
        return offline_minimizer(c, static_cast<int>(first_round[k]), req.geometry, set,
                                 req.offline);
      });
      for (const auto& s : solved) out.unconverged += s.converged ? 0 : 1;
      for (int t = 1; t <= T; ++t) out.points.push_back(solved[c.data_index(t)].point);
      break;
    }
    case ComparatorMode::kFixedHindsight: {
      const OfflineResult u = hindsight_minimizer(c, req.geometry, set, req.offline);
      out.unconverged = u.converged ? 0 : 1;
      out.points.assign(static_cast<std::size_t>(T), u.point);
      break;
    }
    case ComparatorMode::kFromFile: {
      out.points = csv::read_points(req.file);
      if (static_cast<int>(out.points.size()) != T) {
        throw InputError("comparator file has " + std::to_string(out.points.size()) +
                         " rounds, expected " + std::to_string(T));
      }
      for (int t = 1; t <= T; ++t) {
        const Vector& u = out.points[static_cast<std::size_t>(t - 1)];
        if (u.size() != set.dim() || !contains(set, u, kFeasibilityTol)) {
          throw InputError("comparator file: round " + std::to_string(t) +
                           " is not a feasible point");
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace omdlab
