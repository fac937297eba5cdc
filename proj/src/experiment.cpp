#include "omdlab/experiment.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "omdlab/csv.hpp"
#include "omdlab/errors.hpp"
#include "omdlab/sampling.hpp"

namespace omdlab {

namespace {

constexpr std::uint64_t kCertStream = 1;
constexpr std::uint64_t kConstStream = 2;
constexpr std::uint64_t kSupStream = 3;
constexpr std::uint64_t kInitStream = 4;

int arm_thread_cap(const RunOptions& opts, std::size_t arms) {
  if (opts.arm_threads > 0) return opts.arm_threads;
  if (const char* env = std::getenv("OMD_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max<std::size_t>(arms, 1));
}

Regularizer comparator_geometry(const ExperimentConfig& cfg) {
  const RegularizerKind k = cfg.experiment == CostKind::kSyntheticQuadratic
                                ? RegularizerKind::kEuclidean
                                : RegularizerKind::kBurg;
  return Regularizer(k, cfg.d);
}

std::string comparator_name(ComparatorMode mode) {
  switch (mode) {
    case ComparatorMode::kPerRoundMin:
      return "per_round_min";
    case ComparatorMode::kFixedHindsight:
      return "fixed_hindsight";
    case ComparatorMode::kFromFile:
      return "file";
  }
  return "";
}

}  // namespace

Vector initial_point(const ExperimentConfig& cfg, const FeasibleSet& set) {
  if (cfg.init == InitMode::kCenter) return set.center();
  Sampler s(derive_seed(cfg.seed, kInitStream));
  return s.uniform(set);
}

CostSequence generate_costs(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case CostKind::kDOptimal:
      return generate_d_optimal(cfg.T, cfg.m, cfg.d, cfg.pool_size, cfg.seed);
    case CostKind::kPoissonInverse:
      return generate_poisson(cfg.T, cfg.m, cfg.d, cfg.seed);
    case CostKind::kSyntheticQuadratic:
      return generate_synthetic(cfg.T, feasible_set(cfg), cfg.drift, cfg.seed);
  }
  throw ConfigError("unknown experiment");
}

std::vector<ArmSetup> certify_arms(const ExperimentConfig& cfg, const CostSequence& costs,
                                   const FeasibleSet& set, Execution ex) {
  std::vector<ArmSetup> out;
  for (RegularizerKind kind : cfg.regularizers) {
    ArmSetup a;
    a.regularizer = Regularizer(kind, cfg.d);
    a.geometry = effective_regularizer(a.regularizer, set);
    a.certificate = certify_relative_smoothness(costs, a.geometry, set, cfg.samples,
                                                derive_seed(cfg.seed, kCertStream), ex);
    a.constants = estimate_constants(a.geometry, set, cfg.samples,
                                     derive_seed(cfg.seed, kConstStream), ex);
    a.M = diameter(set, a.geometry.primal_norm());
    a.eta = cfg.eta_mode == EtaMode::kOneOverBeta ? 1.0 / a.certificate.beta : cfg.eta;
    out.push_back(std::move(a));
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  validate(cfg);
  const FeasibleSet set = feasible_set(cfg);
  CostSequence costs = generate_costs(cfg);
  std::vector<ArmSetup> setups = certify_arms(cfg, costs, set, opts.ex);

  // One comparator sequence shared by every arm.
  const Regularizer geo = comparator_geometry(cfg);
  const SmoothnessCertificate geo_cert = certify_relative_smoothness(
      costs, geo, set, cfg.samples, derive_seed(cfg.seed, kCertStream), opts.ex);
  ComparatorRequest req;
  req.mode = cfg.comparator;
  req.geometry = geo;
  req.offline.beta = geo_cert.beta;
  req.file = cfg.comparator_file;
  ComparatorResult comparator = comparator_sequence(costs, set, req, opts.ex);
  Vector hindsight = cfg.comparator == ComparatorMode::kFixedHindsight
                         ? comparator.points.front()
                         : hindsight_minimizer(costs, geo, set, req.offline).point;

  // Sup estimates depend only on the dual norm; compute each once.
  const std::uint64_t sup_seed = derive_seed(cfg.seed, kSupStream);
  const double V_T = functional_variation(costs, set, cfg.sup_samples, sup_seed, opts.ex);
  const auto V_exact = exact_functional_variation(costs, set);
  std::vector<NormKind> norms;
  for (const auto& s : setups) {
    const NormKind n = s.geometry.primal_norm();
    if (std::find(norms.begin(), norms.end(), n) == norms.end()) norms.push_back(n);
  }
  std::vector<RegularityMeasures> measures;
  for (NormKind n : norms) {
    RegularityMeasures m;
    m.norm = n;
    m.sup_samples = cfg.sup_samples;
    m.seed = sup_seed;
    m.C_T = path_length(comparator.points, n);
    m.V_T = V_T;
    m.V_T_exact = V_exact;
    m.G_T = gradient_variation(costs, set, dual(n), cfg.sup_samples, sup_seed, opts.ex);
    m.G_T_exact = exact_gradient_variation(costs, dual(n));
    measures.push_back(m);
  }
  auto measures_for = [&](NormKind n) -> const RegularityMeasures& {
    return measures[static_cast<std::size_t>(std::find(norms.begin(), norms.end(), n) -
                                             norms.begin())];
  };

  const Vector x1 = initial_point(cfg, set);
  std::vector<ArmResult> arms(setups.size());
  for_each_index(
      setups.size(), opts.ex,
      [&](std::size_t i) {
        ArmResult& arm = arms[i];
        arm.setup = setups[i];
        OmdConfig oc;
        oc.eta = arm.setup.eta;
        oc.regularizer = arm.setup.regularizer;
        oc.set = set;
        oc.x1 = x1;
        arm.trajectory = run_omd(costs, oc);

        RunInputs in;
        in.experiment = to_string(cfg.experiment);
        in.comparator = comparator_name(cfg.comparator);
        in.trajectory = &arm.trajectory;
        in.costs = &costs;
        in.set = &set;
        in.comparators = &comparator.points;
        in.hindsight = hindsight;
        in.certificate = arm.setup.certificate;
        in.bregman = arm.setup.constants;
        in.sup_samples = cfg.sup_samples;
        in.seed = sup_seed;
        arm.report = evaluate_run(in, measures_for(arm.setup.geometry.primal_norm()));
        arm.report.regularizer = arm.setup.regularizer.name();
        arm.report.bounds_apply = cfg.eta_mode == EtaMode::kOneOverBeta;
      },
      arm_thread_cap(opts, setups.size()));

  AccumulatedCostCurve curves = accumulate_costs(arms);
  return ExperimentResult{cfg,
                          std::move(costs),
                          set,
                          std::move(comparator),
                          std::move(hindsight),
                          std::move(arms),
                          std::move(curves)};
}

AccumulatedCostCurve accumulate_costs(const std::vector<ArmResult>& arms) {
  AccumulatedCostCurve c;
  if (arms.empty()) return c;
  const int T = arms.front().trajectory.horizon();
  for (int t = 1; t <= T; ++t) c.rounds.push_back(t);
  for (const auto& arm : arms) {
    if (arm.trajectory.horizon() != T) throw InputError("arms have different horizons");
    c.names.push_back(arm.setup.regularizer.name());
    CompensatedSum s;
    std::vector<double> col;
    for (double v : arm.trajectory.costs) {
      s.add(v);
      col.push_back(s.value());
    }
    c.cumulative.push_back(std::move(col));
  }
  return c;
}

std::string curves_csv(const AccumulatedCostCurve& curves) {
  for (const auto& col : curves.cumulative) {
    if (col.size() != curves.rounds.size()) throw InputError("curve lengths differ");
  }
  if (curves.names.size() != curves.cumulative.size()) throw InputError("curve names mismatch");
  std::ostringstream os;
  os << "round";
  for (const auto& n : curves.names) os << ',' << n;
  os << '\n';
  for (std::size_t k = 0; k < curves.rounds.size(); ++k) {
    os << curves.rounds[k];
    for (const auto& col : curves.cumulative) os << ',' << csv::format_double(col[k]);
    os << '\n';
  }
  return os.str();
}

void emit_curves(const AccumulatedCostCurve& curves, const std::filesystem::path& path) {
  csv::write_text(path, curves_csv(curves));
}

std::string experiment_summary(const ExperimentResult& r) {
  const ExperimentConfig& cfg = r.config;
  std::ostringstream os;
  os << "# configuration\n" << serialize(cfg) << "\n";
  os << "# settings chosen here (not fixed by the experiment description)\n";
  os << "horizon T = " << cfg.T << "\n";
  os << "step size = "
     << (cfg.eta_mode == EtaMode::kOneOverBeta ? "1 / certified beta per regularizer"
                                               : "manual " + csv::format_double(cfg.eta))
     << "\n";
  os << "initial point x_1 = "
     << (cfg.init == InitMode::kCenter ? "center of the feasible set"
                                       : "seeded uniform point of the feasible set")
     << ", shared by every regularizer\n";
  os << "feasible set = " << r.set.describe() << "\n";
  if (cfg.experiment == CostKind::kPoissonInverse) {
    os << "poisson box = [" << cfg.box_lower << ", " << cfg.box_upper << "]^d (compact stand-in "
       << "for the nonnegative orthant)\n";
    os << "poisson rows m = " << cfg.m << (cfg.m == 1500 ? " (full scale)\n" : " (desk scale)\n");
  }
  if (cfg.experiment == CostKind::kDOptimal) {
    os << "matrix pool size = " << cfg.pool_size << "\n";
  }
  os << "comparator geometry = " << (cfg.experiment == CostKind::kSyntheticQuadratic ? "l2sq"
                                                                                      : "burg")
     << ", unconverged offline solves = " << r.comparator.unconverged << "\n";
  for (const auto& arm : r.arms) {
    if (arm.setup.geometry.kind() != arm.setup.regularizer.kind()) {
      os << arm.setup.regularizer.name() << " runs in " << arm.setup.geometry.name()
         << " geometry (its divergence is degenerate on this set)\n";
    }
  }
  os << "\n# final accumulated cost\n";
  for (std::size_t i = 0; i < r.curves.names.size(); ++i) {
    os << r.curves.names[i] << " " << csv::format_double(r.curves.cumulative[i].back()) << "\n";
  }
  os << "\n# reports\n";
  for (const auto& arm : r.arms) {
    os << report_summary(arm.report);
    const auto& c = arm.setup.certificate;
    os << "  certificate: max quotient " << c.max_quotient_observed << " (round "
       << c.argmax_round << "), min quotient " << c.min_quotient_observed << ", " << c.samples
       << " samples\n";
  }
  return os.str();
}

void write_outputs(const ExperimentResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  emit_curves(r.curves, dir / "curve.csv");
  for (const auto& arm : r.arms) {
    const std::string name = arm.setup.regularizer.name();
    write_trajectory_csv(arm.trajectory, dir / ("trajectory_" + name + ".csv"));
    write_report_csv(arm.report, dir / ("report_" + name + ".csv"));
  }
  csv::write_points(dir / "comparator.csv", r.comparator.points);
  csv::write_text(dir / "summary.txt", experiment_summary(r));
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CertificationError*>(&e)) return 2;
  if (dynamic_cast<const SolverError*>(&e) || dynamic_cast<const NumericalError*>(&e)) return 3;
  if (dynamic_cast<const IoError*>(&e)) return 4;
  if (dynamic_cast<const ConfigError*>(&e)) return 5;
  return 1;
}

}  // namespace omdlab
