#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "omdlab/config.hpp"
#include "omdlab/csv.hpp"
#include "omdlab/errors.hpp"
#include "omdlab/experiment.hpp"

using namespace omdlab;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string config_error(const std::string& text) {
  try {
    validate(parse_config_text(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

ExperimentConfig small(CostKind kind) {
  ExperimentConfig cfg = default_config(kind);
  cfg.T = 12;
  cfg.samples = 300;
  cfg.sup_samples = 100;
  if (kind == CostKind::kPoissonInverse) cfg.m = 20;
  return cfg;
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("minimal config takes documented defaults") {
    const ExperimentConfig cfg = parse_config_text("experiment = synthetic\n");
    CHECK(cfg.experiment == CostKind::kSyntheticQuadratic);
    CHECK(cfg.T == 100);
    CHECK(cfg.epsilon == 1e-6);
    CHECK(cfg.sup_samples == 2000);
    CHECK(cfg.seed == 42);
    CHECK(cfg.eta_mode == EtaMode::kOneOverBeta);
    CHECK(cfg.comparator == ComparatorMode::kPerRoundMin);
    CHECK(cfg.regularizers.size() == 4);
    CHECK_NOTHROW(validate(cfg));
  }

  TEST_CASE("config errors") {
    CHECK(config_error("experiment = doptimal\nd = 10\nepsilon = 0.5\n").find("epsilon") !=
          std::string::npos);
    const std::string unknown = config_error("experiment = synthetic\nfoo = 1\nbar = 2\n");
    CHECK(unknown.find("foo (line 2)") != std::string::npos);
    CHECK(unknown.find("bar (line 3)") != std::string::npos);
    CHECK(config_error("experiment = synthetic\n# note\nT 5\n").find("line 3") != std::string::npos);
    CHECK(config_error("T = 5\n").find("experiment") != std::string::npos);
    CHECK(config_error("experiment = synthetic\nT = 0\n") != "");
    CHECK(config_error("experiment = synthetic\nT = 5\nT = 6\n").find("duplicate") !=
          std::string::npos);
    CHECK(config_error("experiment = synthetic\nregularizers = burg, nope\n") != "");
    CHECK(config_error("experiment = doptimal\nm = 12\nd = 10\n") != "");
    CHECK(config_error("experiment = synthetic\neta_mode = manual(abc)\n") != "");
    CHECK_THROWS_AS(parse_config("/nonexistent/omdlab.cfg"), Error);
  }

  TEST_CASE("config round trip") {
    const ExperimentConfig cfg = parse_config_text(
        "experiment = poisson  # comment\nT = 17\nm = 33\nd = 4\nregularizers = kl, burg\n"
        "eta_mode = manual(0.125)\ncomparator = fixed_hindsight\nepsilon = 1e-4\nseed = 9\n"
        "sup_samples = 77\noutput_dir = out dir\ninit = center\ndrift = 0.3\n");
    CHECK(cfg.output_dir == "out dir");
    CHECK(cfg.eta == 0.125);
    CHECK(parse_config_text(serialize(cfg)) == cfg);
    for (CostKind k : {CostKind::kDOptimal, CostKind::kPoissonInverse, CostKind::kSyntheticQuadratic}) {
      CHECK(parse_config_text(serialize(default_config(k))) == default_config(k));
    }
  }

  TEST_CASE("curves") {
    ExperimentConfig cfg = small(CostKind::kSyntheticQuadratic);
    cfg.T = 1;
    cfg.regularizers = {RegularizerKind::kBurg};
    const auto r = run_experiment(cfg);
    std::istringstream lines(curves_csv(r.curves));
    std::string l;
    int n = 0;
    while (std::getline(lines, l)) ++n;
    CHECK(n == 2);
    CHECK(curves_csv(r.curves).rfind("round,burg\n1,", 0) == 0);

    const auto r4 = run_experiment(small(CostKind::kSyntheticQuadratic));
    const std::string text = curves_csv(r4.curves);
    CHECK(csv::split(text.substr(0, text.find('\n'))).size() == 5);

    AccumulatedCostCurve broken = r4.curves;
    broken.cumulative[1].pop_back();
    CHECK_THROWS_AS(curves_csv(broken), InputError);
  }

  TEST_CASE("poisson costs are nonnegative and curves nondecreasing") {
    const auto r = run_experiment(small(CostKind::kPoissonInverse));
    for (const auto& arm : r.arms) {
      for (double c : arm.trajectory.costs) CHECK(c >= 0.0);
    }
    for (const auto& col : r.curves.cumulative) {
      for (std::size_t k = 1; k < col.size(); ++k) CHECK(col[k] >= col[k - 1]);
    }
  }

  TEST_CASE("manual step size disables bound checks") {
    ExperimentConfig cfg = small(CostKind::kSyntheticQuadratic);
    cfg.eta_mode = EtaMode::kManual;
    cfg.eta = 5.0;
    const auto r = run_experiment(cfg);
    for (const auto& arm : r.arms) {
      CHECK_FALSE(arm.report.bounds_apply);
      CHECK(arm.report.all_hold());
      CHECK(arm.trajectory.eta == 5.0);
    }
  }

  TEST_CASE("outputs are deterministic across runs and execution modes") {
    const auto base = std::filesystem::temp_directory_path() / "omdlab_determinism_test";
    std::filesystem::remove_all(base);
    const ExperimentConfig cfg = small(CostKind::kDOptimal);
    RunOptions serial;
    serial.ex = Execution::kSerial;
    serial.arm_threads = 1;
    RunOptions parallel;
    parallel.arm_threads = 3;
    write_outputs(run_experiment(cfg, parallel), base / "a");
    write_outputs(run_experiment(cfg, parallel), base / "b");
    write_outputs(run_experiment(cfg, serial), base / "c");
    int files = 0;
    for (const auto& e : std::filesystem::directory_iterator(base / "a")) {
      const auto name = e.path().filename();
      CHECK(slurp(e.path()) == slurp(base / "b" / name));
      CHECK(slurp(e.path()) == slurp(base / "c" / name));
      ++files;
    }
    CHECK(files == 9);  // curve, 3 trajectories, 3 reports, comparator, summary
    std::filesystem::remove_all(base);
  }

  TEST_CASE("summary flags the chosen settings") {
    const auto r = run_experiment(small(CostKind::kDOptimal));
    const std::string s = experiment_summary(r);
    CHECK(s.find("horizon T = 12") != std::string::npos);
    CHECK(s.find("seeded uniform point") != std::string::npos);
    CHECK(s.find("matrix pool size = 10") != std::string::npos);
    CHECK(s.find("l1sq runs in l2sq geometry") != std::string::npos);
  }

  TEST_CASE("initial point") {
    ExperimentConfig cfg = small(CostKind::kSyntheticQuadratic);
    const FeasibleSet s = feasible_set(cfg);
    CHECK(initial_point(cfg, s) == initial_point(cfg, s));
    CHECK(contains(s, initial_point(cfg, s), 1e-12));
    cfg.init = InitMode::kCenter;
    CHECK(initial_point(cfg, s) == s.center());
  }

  TEST_CASE("exit codes") {
    CHECK(exit_code_for(CertificationError("x")) == 2);
    CHECK(exit_code_for(SolverError("x")) == 3);
    CHECK(exit_code_for(NumericalError("x")) == 3);
    CHECK(exit_code_for(IoError("x")) == 4);
    CHECK(exit_code_for(ConfigError("x")) == 5);
    CHECK(exit_code_for(std::runtime_error("x")) == 1);
  }

  TEST_CASE("unwritable output directory is an io error") {
    const auto r = run_experiment(small(CostKind::kSyntheticQuadratic));
    CHECK_THROWS_AS(write_outputs(r, "/proc/omdlab_cannot_write"), IoError);
  }
}
