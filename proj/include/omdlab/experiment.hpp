#pragma once

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "omdlab/config.hpp"
#include "omdlab/costs.hpp"
#include "omdlab/omd.hpp"
#include "omdlab/parallel.hpp"
#include "omdlab/regret.hpp"
#include "omdlab/regularizers.hpp"

namespace omdlab {

/// Prefix sums of f_t(x_t) per regularizer, columns in config order.
struct AccumulatedCostCurve {
  std::vector<int> rounds;
  std::vector<std::string> names;
  std::vector<std::vector<double>> cumulative;  // [arm][round - 1]
};

/// Certification and constants for one regularizer, in the geometry the
/// mirror step runs in.
struct ArmSetup {
  Regularizer regularizer{RegularizerKind::kEuclidean, 1};
  Regularizer geometry{RegularizerKind::kEuclidean, 1};
  SmoothnessCertificate certificate;
  BregmanConstants constants;
  double M = 0.0;
  double eta = 0.0;
};

struct ArmResult {
  ArmSetup setup;
  Trajectory trajectory;
  RegretReport report;
};

struct ExperimentResult {
  ExperimentConfig config;
  CostSequence costs;
  FeasibleSet set;
  ComparatorResult comparator;
  Vector hindsight;
  std::vector<ArmResult> arms;
  AccumulatedCostCurve curves;
};

struct RunOptions {
  Execution ex = Execution::kParallel;
  /// Cap on concurrently running arms; 0 reads OMD_LAB_THREADS and falls
  /// back to the number of arms.
  int arm_threads = 0;
};

/// x_1 shared by every arm: the set center, or a uniform point drawn from a
/// stream of cfg.seed.
Vector initial_point(const ExperimentConfig& cfg, const FeasibleSet& set);

/// Cost sequence of the config: generated from cfg.seed.
CostSequence generate_costs(const ExperimentConfig& cfg);

/// Certifies every configured regularizer against the config's costs.
std::vector<ArmSetup> certify_arms(const ExperimentConfig& cfg, const CostSequence& costs,
                                   const FeasibleSet& set, Execution ex = Execution::kParallel);

/// Generate, certify, run every arm from initial_point, evaluate. Writes
/// nothing.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

AccumulatedCostCurve accumulate_costs(const std::vector<ArmResult>& arms);
/// Header "round,<reg>,...", one row per round.
std::string curves_csv(const AccumulatedCostCurve& curves);
void emit_curves(const AccumulatedCostCurve& curves, const std::filesystem::path& path);

/// curve.csv, trajectory_<reg>.csv, report_<reg>.csv, comparator.csv and
/// summary.txt under dir. Throws IoError.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);
std::string experiment_summary(const ExperimentResult& result);

/// Process exit code for an error: 2 certification, 3 solver or numerical
/// failure, 4 I/O, 5 config, 1 otherwise.
int exit_code_for(const std::exception& e);

}  // namespace omdlab
