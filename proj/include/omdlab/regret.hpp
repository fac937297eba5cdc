#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "omdlab/costs.hpp"
#include "omdlab/geometry.hpp"
#include "omdlab/omd.hpp"
#include "omdlab/parallel.hpp"

namespace omdlab {

/// Compensated (Neumaier) running sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// sum_{t=1}^{n-1} |u_{t+1} - u_t|.
double path_length(const std::vector<Vector>& u, NormKind norm);

/// Per-round sampled sups of |f_{t+1}(x) - f_t(x)| for t = 1..T-1.
///
/// Each distinct pair of consecutive functions is evaluated on the same
/// `sup_samples` mixed points. Every sample that beats all earlier samples
/// is refined by 20 projected gradient-ascent steps with backtracking. The
/// sample stream is prefix-consistent, so the estimate is nondecreasing in
/// sup_samples. Identical consecutive functions give exactly 0. The result
/// is a lower estimate of the true sup.
std::vector<double> functional_variation_terms(const CostSequence& c, const FeasibleSet& set,
                                               std::size_t sup_samples, std::uint64_t seed,
                                               Execution ex = Execution::kParallel);
double functional_variation(const CostSequence& c, const FeasibleSet& set,
                            std::size_t sup_samples, std::uint64_t seed,
                            Execution ex = Execution::kParallel);

/// Per-round sampled sups of |grad f_t(x) - grad f_{t-1}(x)|_* for t = 1..T,
/// with f_0 = f_1 (first term 0). Same estimator as above.
std::vector<double> gradient_variation_terms(const CostSequence& c, const FeasibleSet& set,
                                             NormKind dual_norm, std::size_t sup_samples,
                                             std::uint64_t seed,
                                             Execution ex = Execution::kParallel);
double gradient_variation(const CostSequence& c, const FeasibleSet& set, NormKind dual_norm,
                          std::size_t sup_samples, std::uint64_t seed,
                          Execution ex = Execution::kParallel);

/// Exact values for the quadratic family: the difference of consecutive
/// functions is affine (maximized over vertices) and the gradient difference
/// is constant. Empty for other families.
std::optional<double> exact_functional_variation(const CostSequence& c, const FeasibleSet& set);
std::optional<double> exact_gradient_variation(const CostSequence& c, NormKind dual_norm);

struct RegularityMeasures {
  double C_T = 0.0;
  double V_T = 0.0;
  double G_T = 0.0;
  NormKind norm = NormKind::kL2;  // primal norm of C_T; G_T uses its dual
  std::size_t sup_samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> V_T_exact;
  std::optional<double> G_T_exact;

  bool operator==(const RegularityMeasures&) const = default;
};

/// sum_t f_t(x_t) - sum_t f_t(u_t).
double dynamic_regret(const Trajectory& traj, const CostSequence& c, const std::vector<Vector>& u);
/// sum_t f_t(x_t) - sum_t f_t(u) for one fixed u.
double static_regret(const Trajectory& traj, const CostSequence& c, const Vector& u);

/// beta R + f_1(x_1) - f_{T+1}(x_{T+1}) + gamma beta C_T + V_T.
double smooth_regret_bound(double beta, double R, double f1_x1, double fT1_xT1, double gamma,
                      double C_T, double V_T);
/// (beta - lambda) D + (beta - lambda) gamma C_T + 2 M G_T. Throws InputError
/// unless 0 <= lambda <= beta.
double strongly_convex_regret_bound(double beta, double lambda, double D_u1_x0, double gamma, double C_T,
                      double M, double G_T);

struct BoundConstants {
  double beta = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  double R = 0.0;
  double M = 0.0;
  double D_u1_x0 = 0.0;
  double f1_x1 = 0.0;
  double fT1_xT1 = 0.0;  // f_T(x_{T+1}): the run never reveals f_{T+1}
  double f1_u1 = 0.0;

  bool operator==(const BoundConstants&) const = default;
};

inline constexpr double kVerdictTolerance = 1e-6;

struct RegretReport {
  std::string experiment;
  std::string regularizer;
  std::string comparator;
  int horizon = 0;
  double eta = 0.0;
  double dynamic_regret = 0.0;
  double static_regret = 0.0;
  RegularityMeasures measures;
  BoundConstants constants;
  double thm1_bound = 0.0;
  std::optional<double> thm2_bound;       // present when lambda > 0
  std::optional<double> corollary_bound;  // min of the two when both exist
  std::optional<double> thm1_bound_exact; // with exact V_T where available
  std::optional<double> thm2_bound_exact; // with exact G_T where available
  /// The strongly convex bound with x_0 = x_1 covers rounds 2..T only; this adds the
  /// first-round regret f_1(x_1) - f_1(u_1), giving a bound valid for every
  /// round. Uses the exact G_T when available.
  std::optional<double> thm2_shifted_bound;
  bool thm1_holds = false;
  std::optional<bool> thm2_holds;
  std::optional<bool> corollary_holds;
  std::optional<bool> thm2_shifted_holds;
  bool sampled_sup = true;            // verdicts use sampled sups
  bool static_specialization = false; // C_T = 0: static-regret form
  bool bounds_apply = true;           // false when eta != 1/beta (manual step)

  /// All present verdicts hold; vacuously true when !bounds_apply.
  bool all_hold() const;
  bool operator==(const RegretReport&) const = default;
};

struct RunInputs {
  std::string experiment;
  std::string comparator;
  const Trajectory* trajectory = nullptr;
  const CostSequence* costs = nullptr;
  const FeasibleSet* set = nullptr;
  const std::vector<Vector>* comparators = nullptr;
  std::optional<Vector> hindsight;  // fixed point for the static regret
  SmoothnessCertificate certificate;
  BregmanConstants bregman;
  std::size_t sup_samples = 2000;
  std::uint64_t seed = 42;
};

/// C_T of u in `norm`, V_T, and G_T in the dual of `norm`, plus the exact
/// values where the family admits them.
RegularityMeasures compute_measures(const CostSequence& c, const FeasibleSet& set,
                                    const std::vector<Vector>& u, NormKind norm,
                                    std::size_t sup_samples, std::uint64_t seed,
                                    Execution ex = Execution::kParallel);

/// Assembles every report field. The static regret uses `hindsight` when
/// given, else the comparator point with the least total cost. Verdicts use
/// the exact V_T / G_T when available (sampled_sup = false), else the
/// sampled ones.
RegretReport evaluate_run(const RunInputs& in, Execution ex = Execution::kParallel);
RegretReport evaluate_run(const RunInputs& in, const RegularityMeasures& measures);

/// Fixed column order; see report_columns().
const std::vector<std::string>& report_columns();
std::string report_csv(const RegretReport& report);
void write_report_csv(const RegretReport& report, const std::filesystem::path& path);
RegretReport read_report_csv(const std::filesystem::path& path);
RegretReport parse_report_csv(const std::string& text);
std::string report_summary(const RegretReport& report);

}  // namespace omdlab
