#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "omdlab/costs.hpp"
#include "omdlab/omd.hpp"
#include "omdlab/regularizers.hpp"

namespace omdlab {

enum class EtaMode { kOneOverBeta, kManual };
enum class InitMode { kUniform, kCenter };

/// Experiment settings. Keys of the flat config file match the field names;
/// eta_mode is written "one_over_beta" or "manual(<value>)", comparator
/// "per_round_min", "fixed_hindsight" or "file(<path>)", regularizers a
/// comma-separated list.
struct ExperimentConfig {
  CostKind experiment = CostKind::kSyntheticQuadratic;
  int T = 100;
  int m = 5;
  int d = 10;
  std::vector<RegularizerKind> regularizers;
  EtaMode eta_mode = EtaMode::kOneOverBeta;
  double eta = 0.0;  // manual step size
  ComparatorMode comparator = ComparatorMode::kPerRoundMin;
  std::filesystem::path comparator_file;
  double epsilon = 1e-6;
  std::uint64_t seed = 42;
  std::size_t sup_samples = 2000;
  std::filesystem::path output_dir = "omd_out";
  InitMode init = InitMode::kUniform;  // x_1: seeded uniform point or set center

  // Extras with documented defaults.
  int pool_size = 10;           // D-optimal matrix pool
  double drift = 0.05;          // synthetic center drift per round
  std::size_t samples = 2000;   // certification and constant estimation
  double box_lower = 1e-3;      // Poisson box
  double box_upper = 10.0;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Size defaults per experiment: doptimal m = 5, d = 10; poisson m = 150
/// (1500 at full scale), d = 10; synthetic d = 5. Regularizers default to
/// burg, kl, l1sq for doptimal and poisson and to all four for synthetic.
ExperimentConfig default_config(CostKind experiment, bool full_scale = false);

/// Parses flat "key = value" text; '#' starts a comment. Unknown keys are
/// reported together; malformed lines carry their line number. Throws
/// ConfigError.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Throws ConfigError naming the violated invariant.
void validate(const ExperimentConfig& cfg);

/// Text that parse_config_text maps back to an equal config.
std::string serialize(const ExperimentConfig& cfg);

/// Feasible set of the experiment: TruncatedSimplex(d, epsilon) for
/// doptimal and synthetic, the positive box for poisson.
FeasibleSet feasible_set(const ExperimentConfig& cfg);

}  // namespace omdlab
