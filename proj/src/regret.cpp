#include "omdlab/regret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "omdlab/csv.hpp"
#include "omdlab/errors.hpp"
#include "omdlab/sampling.hpp"

namespace omdlab {

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    carry_ += (sum_ - t) + v;
  } else {
    carry_ += (v - t) + sum_;
  }
  sum_ = t;
}

double path_length(const std::vector<Vector>& u, NormKind norm_kind) {
  if (u.empty()) throw InputError("path length needs at least one point");
  CompensatedSum total;
  for (std::size_t t = 1; t < u.size(); ++t) {
    if (u[t].size() != u[0].size()) throw InputError("path length: dimension mismatch");
    total.add(norm(u[t] - u[t - 1], norm_kind));
  }
  return total.value();
}

namespace {

constexpr int kAscentSteps = 20;
constexpr int kBacktracks = 30;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using Pair = std::pair<std::size_t, std::size_t>;

// Distinct unordered pairs (a, b), a != b, in order of first appearance, and
// for each consecutive (t, t+1) the pair slot or -1 when the functions agree.
struct PairPlan {
  std::vector<Pair> pairs;
  std::vector<long> slot;
};

PairPlan plan_pairs(const CostSequence& c) {
  PairPlan plan;
  std::map<Pair, long> seen;
  const int T = c.horizon();
  for (int t = 1; t < T; ++t) {
    std::size_t a = c.data_index(t);
    std::size_t b = c.data_index(t + 1);
    if (a == b || c.data(a) == c.data(b)) {
      plan.slot.push_back(-1);
      continue;
    }
    const Pair key{std::min(a, b), std::max(a, b)};
    auto [it, inserted] = seen.emplace(key, static_cast<long>(plan.pairs.size()));
    if (inserted) plan.pairs.push_back(key);
    plan.slot.push_back(it->second);
  }
  return plan;
}

std::vector<std::size_t> used_indices(const PairPlan& plan, std::size_t distinct) {
  std::vector<bool> used(distinct, false);
  for (const auto& [a, b] : plan.pairs) used[a] = used[b] = true;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < distinct; ++k) {
    if (used[k]) out.push_back(k);
  }
  return out;
}

double finite_or_neg_inf(double v) { return std::isfinite(v) ? v : kNegInf; }

// Projected ascent on phi from x with backtracking; returns the best value.
template <class Phi, class Grad>
double ascend(const FeasibleSet& set, Vector x, double fx, Phi&& phi, Grad&& grad) {
  double step = 0.1 * (set.upper() - set.lower()).maxCoeff();
  const double max_step = 10.0 * step;
  for (int it = 0; it < kAscentSteps; ++it) {
    Vector g;
    try {
      g = grad(x);
    } catch (const DomainError&) {
      break;
    } catch (const NumericalError&) {
      break;
    }
    const double gn = g.norm();
    if (!(gn > 0.0) || !std::isfinite(gn)) break;
    const Vector dir = g / gn;
    bool improved = false;
    for (int bt = 0; bt < kBacktracks; ++bt) {
      const Vector y = set.project(x + step * dir);
      const double fy = phi(y);
      if (fy > fx) {
        x = y;
        fx = fy;
        improved = true;
        step = std::min(2.0 * step, max_step);
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return fx;
}

// Max over samples plus the ascent refinement of each prefix record.
template <class Phi, class Grad>
double sampled_sup(const std::vector<Vector>& points, const std::vector<double>& raw,
                   const FeasibleSet& set, Phi&& phi, Grad&& grad) {
  double best_raw = kNegInf;
  double best = kNegInf;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (!(raw[j] > best_raw)) continue;
    best_raw = raw[j];
    best = std::max(best, ascend(set, points[j], raw[j], phi, grad));
  }
  return std::max(best, 0.0);
}

template <class Eval>
double guarded(Eval&& eval) {
  try {
    return finite_or_neg_inf(eval());
  } catch (const DomainError&) {
    return kNegInf;
  } catch (const NumericalError&) {
    return kNegInf;
  }
}

// Per-pair sups for the value difference.
std::vector<double> value_pair_sups(const CostSequence& c, const FeasibleSet& set,
                                    const PairPlan& plan, std::size_t samples,
                                    std::uint64_t seed, Execution ex) {
  if (plan.pairs.empty()) return {};
  Sampler sampler(seed);
  const std::vector<Vector> points = mixed_points(set, samples, sampler);
  const std::vector<std::size_t> used = used_indices(plan, c.distinct_count());
  std::vector<std::vector<double>> values(c.distinct_count());
  for_each_index(used.size(), ex, [&](std::size_t i) {
    const std::size_t k = used[i];
    values[k].resize(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
      values[k][j] = guarded([&] { return c.value_at(k, points[j]); });
    }
  });
  return map_indices<double>(plan.pairs.size(), ex, [&](std::size_t p) {
    const auto [a, b] = plan.pairs[p];
    std::vector<double> raw(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
      raw[j] = std::isfinite(values[a][j]) && std::isfinite(values[b][j])
                   ? std::abs(values[a][j] - values[b][j])
                   : kNegInf;
    }
    auto phi = [&](const Vector& x) {
      return guarded([&] { return std::abs(c.value_at(a, x) - c.value_at(b, x)); });
    };
    auto grad = [&](const Vector& x) {
      const double diff = c.value_at(a, x) - c.value_at(b, x);
      const Vector g = c.gradient_at(a, x) - c.gradient_at(b, x);
      return Vector(diff >= 0.0 ? g : Vector(-g));
    };
    return sampled_sup(points, raw, set, phi, grad);
  });
}

// Subgradient of the dual norm at y.
Vector norm_subgradient(const Vector& y, NormKind kind) {
  Vector w = Vector::Zero(y.size());
  switch (kind) {
    case NormKind::kL1:
      for (Eigen::Index i = 0; i < y.size(); ++i) w[i] = y[i] > 0 ? 1.0 : (y[i] < 0 ? -1.0 : 0.0);
      break;
    case NormKind::kL2: {
      const double n = y.norm();
      if (n > 0.0) w = y / n;
      break;
    }
    case NormKind::kLInf: {
      Eigen::Index i = 0;
      y.cwiseAbs().maxCoeff(&i);
      w[i] = y[i] >= 0 ? 1.0 : -1.0;
      break;
    }
  }
  return w;
}

std::vector<double> gradient_pair_sups(const CostSequence& c, const FeasibleSet& set,
                                       NormKind dual_norm, const PairPlan& plan,
                                       std::size_t samples, std::uint64_t seed, Execution ex) {
  if (plan.pairs.empty()) return {};
  Sampler sampler(seed);
  const std::vector<Vector> points = mixed_points(set, samples, sampler);
  const std::vector<std::size_t> used = used_indices(plan, c.distinct_count());
  std::vector<std::vector<Vector>> grads(c.distinct_count());
  for_each_index(used.size(), ex, [&](std::size_t i) {
    const std::size_t k = used[i];
    grads[k].resize(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
      try {
        grads[k][j] = c.gradient_at(k, points[j]);
      } catch (const DomainError&) {
      } catch (const NumericalError&) {
      }
    }
  });
  return map_indices<double>(plan.pairs.size(), ex, [&](std::size_t p) {
    const auto [a, b] = plan.pairs[p];
    std::vector<double> raw(points.size(), kNegInf);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (grads[a][j].size() == 0 || grads[b][j].size() == 0) continue;
      raw[j] = finite_or_neg_inf(norm(grads[a][j] - grads[b][j], dual_norm));
    }
    auto phi = [&](const Vector& x) {
      return guarded([&] { return norm(c.gradient_at(a, x) - c.gradient_at(b, x), dual_norm); });
    };
    auto grad = [&](const Vector& x) {
      const Vector diff = c.gradient_at(a, x) - c.gradient_at(b, x);
      const Vector w = norm_subgradient(diff, dual_norm);
      return Vector((c.hessian_at(a, x) - c.hessian_at(b, x)) * w);
    };
    return sampled_sup(points, raw, set, phi, grad);
  });
}

void check_samples(std::size_t sup_samples) {
  if (sup_samples < 1) throw InputError("sup_samples must be at least 1");
}

double total(const std::vector<double>& terms) {
  CompensatedSum s;
  for (double v : terms) s.add(v);
  return s.value();
}

}  // namespace

std::vector<double> functional_variation_terms(const CostSequence& c, const FeasibleSet& set,
                                               std::size_t sup_samples, std::uint64_t seed,
                                               Execution ex) {
  check_samples(sup_samples);
  if (c.dim() != set.dim()) throw InputError("cost and set dimensions differ");
  const PairPlan plan = plan_pairs(c);
  const std::vector<double> sups = value_pair_sups(c, set, plan, sup_samples, seed, ex);
  std::vector<double> terms;
  for (long s : plan.slot) terms.push_back(s < 0 ? 0.0 : sups[static_cast<std::size_t>(s)]);
  return terms;
}

double functional_variation(const CostSequence& c, const FeasibleSet& set, std::size_t sup_samples,
                            std::uint64_t seed, Execution ex) {
  return total(functional_variation_terms(c, set, sup_samples, seed, ex));
}

std::vector<double> gradient_variation_terms(const CostSequence& c, const FeasibleSet& set,
                                             NormKind dual_norm, std::size_t sup_samples,
                                             std::uint64_t seed, Execution ex) {
  check_samples(sup_samples);
  if (c.dim() != set.dim()) throw InputError("cost and set dimensions differ");
  const PairPlan plan = plan_pairs(c);
  const std::vector<double> sups =
      gradient_pair_sups(c, set, dual_norm, plan, sup_samples, seed, ex);
  std::vector<double> terms{0.0};
  for (long s : plan.slot) terms.push_back(s < 0 ? 0.0 : sups[static_cast<std::size_t>(s)]);
  return terms;
}

double gradient_variation(const CostSequence& c, const FeasibleSet& set, NormKind dual_norm,
                          std::size_t sup_samples, std::uint64_t seed, Execution ex) {
  return total(gradient_variation_terms(c, set, dual_norm, sup_samples, seed, ex));
}

namespace {

// max over the set of |<w, x> + k|.
double max_abs_affine(const Vector& w, double k, const FeasibleSet& set) {
  if (set.is_simplex()) {
    const double eps = set.epsilon();
    const double base = eps * w.sum() + k;
    const double spread = 1.0 - set.dim() * eps;
    return std::max(std::abs(base + spread * w.maxCoeff()), std::abs(base + spread * w.minCoeff()));
  }
  const Vector hi = w.cwiseProduct(set.upper());
  const Vector lo = w.cwiseProduct(set.lower());
  return std::max(std::abs(k + hi.cwiseMax(lo).sum()), std::abs(k + hi.cwiseMin(lo).sum()));
}

bool shared_scale(const CostSequence& c) {
  for (std::size_t k = 1; k < c.distinct_count(); ++k) {
    if (c.data(k).scale != c.data(0).scale) return false;
  }
  return true;
}

}  // namespace

std::optional<double> exact_functional_variation(const CostSequence& c, const FeasibleSet& set) {
  if (c.kind() != CostKind::kSyntheticQuadratic || !shared_scale(c)) return std::nullopt;
  CompensatedSum s;
  for (int t = 1; t < c.horizon(); ++t) {
    const RoundData& now = c.round(t);
    const RoundData& next = c.round(t + 1);
    const Vector w = now.scale.cwiseProduct(now.center - next.center);
    const double k = 0.5 * (now.scale.array() *
                            (next.center.array().square() - now.center.array().square()))
                               .sum();
    s.add(max_abs_affine(w, k, set));
  }
  return s.value();
}

std::optional<double> exact_gradient_variation(const CostSequence& c, NormKind dual_norm) {
  if (c.kind() != CostKind::kSyntheticQuadratic || !shared_scale(c)) return std::nullopt;
  CompensatedSum s;
  for (int t = 2; t <= c.horizon(); ++t) {
    const RoundData& prev = c.round(t - 1);
    const RoundData& now = c.round(t);
    s.add(norm(now.scale.cwiseProduct(prev.center - now.center), dual_norm));
  }
  return s.value();
}

double dynamic_regret(const Trajectory& traj, const CostSequence& c, const std::vector<Vector>& u) {
  const int T = c.horizon();
  if (traj.horizon() != T || static_cast<int>(u.size()) != T) {
    throw InputError("dynamic regret: trajectory, costs and comparators must share the horizon");
  }
  CompensatedSum s;
  for (int t = 1; t <= T; ++t) {
    const Vector& ut = u[static_cast<std::size_t>(t - 1)];
    require_dim(ut, c.dim(), "comparator");
    s.add(traj.costs[static_cast<std::size_t>(t - 1)]);
    s.add(-c.value(t, ut));
  }
  return s.value();
}

double static_regret(const Trajectory& traj, const CostSequence& c, const Vector& u) {
  return dynamic_regret(traj, c, std::vector<Vector>(static_cast<std::size_t>(c.horizon()), u));
}

double smooth_regret_bound(double beta, double R, double f1_x1, double fT1_xT1, double gamma,
                      double C_T, double V_T) {
  if (beta < 0.0 || R < 0.0 || gamma < 0.0) throw InputError("beta, R and gamma must be >= 0");
  CompensatedSum s;
  s.add(beta * R);
  s.add(f1_x1);
  s.add(-fT1_xT1);
  s.add(gamma * beta * C_T);
  s.add(V_T);
  return s.value();
}

double strongly_convex_regret_bound(double beta, double lambda, double D_u1_x0, double gamma, double C_T,
                      double M, double G_T) {
  if (!(lambda >= 0.0) || lambda > beta) {
    std::ostringstream os;
    os << "relative strong convexity " << lambda << " must lie in [0, beta = " << beta << "]";
    throw InputError(os.str());
  }
  const double gap = beta - lambda;
  CompensatedSum s;
  s.add(gap * D_u1_x0);
  s.add(gap * gamma * C_T);
  s.add(2.0 * M * G_T);
  return s.value();
}

bool RegretReport::all_hold() const {
  if (!bounds_apply) return true;
  return thm1_holds && thm2_holds.value_or(true) && corollary_holds.value_or(true) &&
         thm2_shifted_holds.value_or(true);
}

RegularityMeasures compute_measures(const CostSequence& c, const FeasibleSet& set,
                                    const std::vector<Vector>& u, NormKind norm_kind,
                                    std::size_t sup_samples, std::uint64_t seed, Execution ex) {
  RegularityMeasures m;
  m.norm = norm_kind;
  m.sup_samples = sup_samples;
  m.seed = seed;
  m.C_T = path_length(u, norm_kind);
  m.V_T = functional_variation(c, set, sup_samples, seed, ex);
  m.G_T = gradient_variation(c, set, dual(norm_kind), sup_samples, seed, ex);
  m.V_T_exact = exact_functional_variation(c, set);
  m.G_T_exact = exact_gradient_variation(c, dual(norm_kind));
  return m;
}

RegretReport evaluate_run(const RunInputs& in, Execution ex) {
  if (!in.trajectory || !in.costs || !in.set || !in.comparators) {
    throw InputError("evaluate_run: missing trajectory, costs, set or comparators");
  }
  const NormKind n = in.trajectory->regularizer.primal_norm();
  return evaluate_run(
      in, compute_measures(*in.costs, *in.set, *in.comparators, n, in.sup_samples, in.seed, ex));
}

RegretReport evaluate_run(const RunInputs& in, const RegularityMeasures& measures) {
  if (!in.trajectory || !in.costs || !in.set || !in.comparators) {
    throw InputError("evaluate_run: missing trajectory, costs, set or comparators");
  }
  const Trajectory& traj = *in.trajectory;
  const CostSequence& c = *in.costs;
  const std::vector<Vector>& u = *in.comparators;
  const int T = c.horizon();
  const Regularizer& r = traj.regularizer;

  RegretReport rep;
  rep.experiment = in.experiment;
  rep.regularizer = r.name();
  rep.comparator = in.comparator;
  rep.horizon = T;
  rep.eta = traj.eta;
  rep.measures = measures;
  rep.dynamic_regret = dynamic_regret(traj, c, u);

  if (in.hindsight) {
    rep.static_regret = static_regret(traj, c, *in.hindsight);
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& cand : u) {
      CompensatedSum s;
      for (int t = 1; t <= T; ++t) s.add(c.value(t, cand));
      if (s.value() < best) {
        best = s.value();
        rep.static_regret = static_regret(traj, c, cand);
      }
    }
  }

  BoundConstants& k = rep.constants;
  k.beta = in.certificate.beta;
  k.lambda = in.certificate.lambda;
  k.gamma = in.bregman.gamma;
  k.R = in.bregman.R;
  k.M = diameter(*in.set, r.primal_norm());
  k.D_u1_x0 = r.bregman(u.front(), traj.x(1));
  k.f1_x1 = c.value(1, traj.x(1));
  k.fT1_xT1 = c.value(T, traj.x(T + 1));
  k.f1_u1 = c.value(1, u.front());

  rep.thm1_bound =
      smooth_regret_bound(k.beta, k.R, k.f1_x1, k.fT1_xT1, k.gamma, measures.C_T, measures.V_T);
  if (measures.V_T_exact) {
    rep.thm1_bound_exact = smooth_regret_bound(k.beta, k.R, k.f1_x1, k.fT1_xT1, k.gamma, measures.C_T,
                                          *measures.V_T_exact);
  }
  if (k.lambda > 0.0) {
    rep.thm2_bound =
        strongly_convex_regret_bound(k.beta, k.lambda, k.D_u1_x0, k.gamma, measures.C_T, k.M, measures.G_T);
    if (measures.G_T_exact) {
      rep.thm2_bound_exact = strongly_convex_regret_bound(k.beta, k.lambda, k.D_u1_x0, k.gamma, measures.C_T,
                                            k.M, *measures.G_T_exact);
    }
    rep.corollary_bound = std::min(rep.thm1_bound, *rep.thm2_bound);
  }

  rep.sampled_sup = !(measures.V_T_exact && measures.G_T_exact);
  const double thm1 = rep.thm1_bound_exact.value_or(rep.thm1_bound);
  rep.thm1_holds = thm1 + kVerdictTolerance >= rep.dynamic_regret;
  if (rep.thm2_bound) {
    const double thm2 = rep.thm2_bound_exact.value_or(*rep.thm2_bound);
    rep.thm2_holds = thm2 + kVerdictTolerance >= rep.dynamic_regret;
    rep.corollary_holds = std::min(thm1, thm2) + kVerdictTolerance >= rep.dynamic_regret;
    rep.thm2_shifted_bound = thm2 + (k.f1_x1 - k.f1_u1);
    rep.thm2_shifted_holds = *rep.thm2_shifted_bound + kVerdictTolerance >= rep.dynamic_regret;
  }
  rep.static_specialization = measures.C_T == 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Report serialization

namespace {

std::string fmt(double v) { return csv::format_double(v); }
std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }
std::string fmt(bool v) { return v ? "true" : "false"; }
std::string fmt(const std::optional<bool>& v) { return v ? fmt(*v) : std::string(); }

bool parse_bool(const std::string& s, const std::string& ctx) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw InputError(ctx + ": expected true or false, got '" + s + "'");
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "experiment",   "regularizer",     "comparator",      "T",
      "eta",          "dynamic_regret",  "static_regret",   "C_T",
      "V_T",          "G_T",             "norm",            "sup_samples",
      "seed",         "V_T_exact",       "G_T_exact",       "beta",
      "lambda",       "gamma",           "R",               "M",
      "D_u1_x0",      "f1_x1",           "fT1_xT1",         "f1_u1",
      "thm1_bound",   "thm2_bound",      "corollary_bound", "thm1_bound_exact",
      "thm2_bound_exact", "thm2_shifted_bound", "thm1_holds", "thm2_holds",
      "corollary_holds", "thm2_shifted_holds", "sampled_sup", "static_specialization",
      "bounds_apply"};
  return cols;
}

std::string report_csv(const RegretReport& r) {
  const RegularityMeasures& m = r.measures;
  const BoundConstants& k = r.constants;
  const std::vector<std::string> row = {r.experiment,
                                        r.regularizer,
                                        r.comparator,
                                        std::to_string(r.horizon),
                                        fmt(r.eta),
                                        fmt(r.dynamic_regret),
                                        fmt(r.static_regret),
                                        fmt(m.C_T),
                                        fmt(m.V_T),
                                        fmt(m.G_T),
                                        to_string(m.norm),
                                        std::to_string(m.sup_samples),
                                        std::to_string(m.seed),
                                        fmt(m.V_T_exact),
                                        fmt(m.G_T_exact),
                                        fmt(k.beta),
                                        fmt(k.lambda),
                                        fmt(k.gamma),
                                        fmt(k.R),
                                        fmt(k.M),
                                        fmt(k.D_u1_x0),
                                        fmt(k.f1_x1),
                                        fmt(k.fT1_xT1),
                                        fmt(k.f1_u1),
                                        fmt(r.thm1_bound),
                                        fmt(r.thm2_bound),
                                        fmt(r.corollary_bound),
                                        fmt(r.thm1_bound_exact),
                                        fmt(r.thm2_bound_exact),
                                        fmt(r.thm2_shifted_bound),
                                        fmt(r.thm1_holds),
                                        fmt(r.thm2_holds),
                                        fmt(r.corollary_holds),
                                        fmt(r.thm2_shifted_holds),
                                        fmt(r.sampled_sup),
                                        fmt(r.static_specialization),
                                        fmt(r.bounds_apply)};
  return csv::join(report_columns()) + "\n" + csv::join(row) + "\n";
}

void write_report_csv(const RegretReport& report, const std::filesystem::path& path) {
  csv::write_text(path, report_csv(report));
}

RegretReport parse_report_csv(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  std::string line;
  std::getline(is, header);
  std::getline(is, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (csv::split(header) != report_columns()) throw InputError("report: unexpected header");
  const std::vector<std::string> f = csv::split(line);
  if (f.size() != report_columns().size()) throw InputError("report: wrong field count");

  std::size_t i = 0;
  auto next = [&]() -> const std::string& { return f[i++]; };
  auto num = [&]() { return csv::parse_double(next(), "report " + report_columns()[i]); };
  auto opt = [&]() -> std::optional<double> {
    if (f[i].empty()) {
      ++i;
      return std::nullopt;
    }
    return num();
  };
  auto boolean = [&]() { return parse_bool(next(), "report " + report_columns()[i - 1]); };
  auto opt_bool = [&]() -> std::optional<bool> {
    if (f[i].empty()) {
      ++i;
      return std::nullopt;
    }
    return boolean();
  };

  RegretReport r;
  r.experiment = next();
  r.regularizer = next();
  r.comparator = next();
  r.horizon = static_cast<int>(csv::parse_int(next(), "report T"));
  r.eta = num();
  r.dynamic_regret = num();
  r.static_regret = num();
  r.measures.C_T = num();
  r.measures.V_T = num();
  r.measures.G_T = num();
  r.measures.norm = parse_norm(next());
  r.measures.sup_samples = static_cast<std::size_t>(csv::parse_int(next(), "report sup_samples"));
  r.measures.seed = static_cast<std::uint64_t>(std::stoull(next()));
  r.measures.V_T_exact = opt();
  r.measures.G_T_exact = opt();
  r.constants.beta = num();
  r.constants.lambda = num();
  r.constants.gamma = num();
  r.constants.R = num();
  r.constants.M = num();
  r.constants.D_u1_x0 = num();
  r.constants.f1_x1 = num();
  r.constants.fT1_xT1 = num();
  r.constants.f1_u1 = num();
  r.thm1_bound = num();
  r.thm2_bound = opt();
  r.corollary_bound = opt();
  r.thm1_bound_exact = opt();
  r.thm2_bound_exact = opt();
  r.thm2_shifted_bound = opt();
  r.thm1_holds = boolean();
  r.thm2_holds = opt_bool();
  r.corollary_holds = opt_bool();
  r.thm2_shifted_holds = opt_bool();
  r.sampled_sup = boolean();
  r.static_specialization = boolean();
  r.bounds_apply = boolean();
  return r;
}

RegretReport read_report_csv(const std::filesystem::path& path) {
  std::string text;
  for (const auto& l : csv::read_lines(path)) text += l + "\n";
  return parse_report_csv(text);
}

std::string report_summary(const RegretReport& r) {
  std::ostringstream os;
  auto verdict = [](bool ok) { return ok ? "holds" : "VIOLATED"; };
  os << "[" << r.regularizer << "] " << r.experiment << ", T = " << r.horizon
     << ", comparator = " << r.comparator << ", eta = " << r.eta << "\n";
  os << "  dynamic regret   " << r.dynamic_regret << "\n";
  os << "  static regret    " << r.static_regret << "\n";
  os << "  C_T " << r.measures.C_T << " (" << to_string(r.measures.norm) << ")"
     << ", V_T " << r.measures.V_T << ", G_T " << r.measures.G_T;
  if (r.measures.V_T_exact) os << ", exact V_T " << *r.measures.V_T_exact;
  if (r.measures.G_T_exact) os << ", exact G_T " << *r.measures.G_T_exact;
  os << "\n";
  const BoundConstants& k = r.constants;
  os << "  beta " << k.beta << ", lambda " << k.lambda << ", gamma " << k.gamma << ", R " << k.R
     << ", M " << k.M << "\n";
  os << "  smooth bound            " << r.thm1_bound << "  " << verdict(r.thm1_holds) << "\n";
  if (r.thm2_bound) {
    os << "  strongly convex bound   " << *r.thm2_bound << "  " << verdict(*r.thm2_holds) << "\n";
    os << "  min of both bounds      " << *r.corollary_bound << "  " << verdict(*r.corollary_holds)
       << "\n";
    os << "  strongly convex + round 1  " << *r.thm2_shifted_bound << "  "
       << verdict(*r.thm2_shifted_holds) << "\n";
  } else {
    os << "  strongly convex bound   not applicable (lambda = 0)\n";
  }
  if (!r.bounds_apply) os << "  note: bound checks disabled, step size is not 1/beta\n";
  if (r.sampled_sup) os << "  note: verdicts use sampled sups (lower estimates of V_T, G_T)\n";
  if (r.static_specialization) os << "  note: C_T = 0, static-regret specialization\n";
  return os.str();
}

}  // namespace omdlab
