#include "omdlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "omdlab/csv.hpp"
#include "omdlab/errors.hpp"

namespace omdlab {

namespace {

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "experiment", "T",         "m",         "d",         "regularizers", "eta_mode",
      "comparator", "epsilon",   "seed",      "sup_samples", "output_dir", "pool_size",
      "drift",      "samples",   "box_lower", "box_upper",   "init"};
  return keys;
}

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void fail_at(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

long long to_int(const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    fail_at(e.line, key + " must be an integer, got '" + e.value + "'");
  }
}

double to_real(const Entry& e, const std::string& key) {
  try {
    return csv::parse_double(e.value, key);
  } catch (const Error&) {
    fail_at(e.line, key + " must be a number, got '" + e.value + "'");
  }
}

// "name(arg)" -> arg, or empty when value is not of that form.
bool call_form(const std::string& value, const std::string& name, std::string& arg) {
  if (value.size() < name.size() + 2 || value.compare(0, name.size() + 1, name + "(") != 0 ||
      value.back() != ')') {
    return false;
  }
  arg = csv::trim(value.substr(name.size() + 1, value.size() - name.size() - 2));
  return true;
}

std::string eta_text(const ExperimentConfig& cfg) {
  return cfg.eta_mode == EtaMode::kOneOverBeta ? "one_over_beta"
                                               : "manual(" + csv::format_double(cfg.eta) + ")";
}

std::string comparator_text(const ExperimentConfig& cfg) {
  switch (cfg.comparator) {
    case ComparatorMode::kPerRoundMin:
      return "per_round_min";
    case ComparatorMode::kFixedHindsight:
      return "fixed_hindsight";
    case ComparatorMode::kFromFile:
      return "file(" + cfg.comparator_file.string() + ")";
  }
  return "";
}

}  // namespace

ExperimentConfig default_config(CostKind experiment, bool full_scale) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  switch (experiment) {
    case CostKind::kDOptimal:
      cfg.m = 5;
      cfg.d = 10;
      cfg.regularizers = {RegularizerKind::kBurg, RegularizerKind::kNegEntropy,
                          RegularizerKind::kL1Squared};
      break;
    case CostKind::kPoissonInverse:
      cfg.m = full_scale ? 1500 : 150;
      cfg.d = 10;
      cfg.regularizers = {RegularizerKind::kBurg, RegularizerKind::kNegEntropy,
                          RegularizerKind::kL1Squared};
      break;
    case CostKind::kSyntheticQuadratic:
      cfg.m = 1;
      cfg.d = 5;
      cfg.regularizers = {RegularizerKind::kBurg, RegularizerKind::kNegEntropy,
                          RegularizerKind::kEuclidean, RegularizerKind::kL1Squared};
      break;
  }
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, Entry> entries;
  std::vector<std::string> unknown;
  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = csv::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_at(line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = csv::trim(line.substr(0, eq));
    const std::string value = csv::trim(line.substr(eq + 1));
    if (key.empty()) fail_at(line_no, "missing key");
    if (value.empty()) fail_at(line_no, "missing value for '" + key + "'");
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      unknown.push_back(key + " (line " + std::to_string(line_no) + ")");
      continue;
    }
    if (entries.count(key)) fail_at(line_no, "duplicate key '" + key + "'");
    entries[key] = {value, line_no};
  }
  if (!unknown.empty()) {
    std::string msg = "unknown keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }
  const auto exp_it = entries.find("experiment");
  if (exp_it == entries.end()) throw ConfigError("missing required key 'experiment'");
  CostKind kind;
  try {
    kind = parse_cost_kind(exp_it->second.value);
  } catch (const Error& e) {
    fail_at(exp_it->second.line, e.what());
  }

  ExperimentConfig cfg = default_config(kind);
  auto has = [&](const char* key) { return entries.count(key) > 0; };
  auto get = [&](const char* key) -> const Entry& { return entries.at(key); };

  if (has("T")) cfg.T = static_cast<int>(to_int(get("T"), "T"));
  if (has("m")) cfg.m = static_cast<int>(to_int(get("m"), "m"));
  if (has("d")) cfg.d = static_cast<int>(to_int(get("d"), "d"));
  if (has("pool_size")) cfg.pool_size = static_cast<int>(to_int(get("pool_size"), "pool_size"));
  if (has("epsilon")) cfg.epsilon = to_real(get("epsilon"), "epsilon");
  if (has("drift")) cfg.drift = to_real(get("drift"), "drift");
  if (has("box_lower")) cfg.box_lower = to_real(get("box_lower"), "box_lower");
  if (has("box_upper")) cfg.box_upper = to_real(get("box_upper"), "box_upper");
  if (has("output_dir")) cfg.output_dir = get("output_dir").value;
  if (has("seed")) {
    const Entry& e = get("seed");
    if (e.value.find_first_not_of("0123456789") != std::string::npos) {
      fail_at(e.line, "seed must be a nonnegative integer, got '" + e.value + "'");
    }
    try {
      cfg.seed = std::stoull(e.value);
    } catch (const std::exception&) {
      fail_at(e.line, "seed out of range");
    }
  }
  for (const char* key : {"sup_samples", "samples"}) {
    if (!has(key)) continue;
    const long long v = to_int(get(key), key);
    if (v < 1) fail_at(get(key).line, std::string(key) + " must be at least 1");
    (std::string(key) == "samples" ? cfg.samples : cfg.sup_samples) = static_cast<std::size_t>(v);
  }
  if (has("regularizers")) {
    const Entry& e = get("regularizers");
    cfg.regularizers.clear();
    for (const auto& name : csv::split(e.value, ',')) {
      const std::string n = csv::trim(name);
      if (n.empty()) continue;
      try {
        const RegularizerKind k = parse_regularizer(n);
        if (std::find(cfg.regularizers.begin(), cfg.regularizers.end(), k) !=
            cfg.regularizers.end()) {
          fail_at(e.line, "regularizer '" + n + "' listed twice");
        }
        cfg.regularizers.push_back(k);
      } catch (const InputError& err) {
        fail_at(e.line, err.what());
      }
    }
  }
  if (has("eta_mode")) {
    const Entry& e = get("eta_mode");
    std::string arg;
    if (e.value == "one_over_beta") {
      cfg.eta_mode = EtaMode::kOneOverBeta;
    } else if (call_form(e.value, "manual", arg)) {
      cfg.eta_mode = EtaMode::kManual;
      cfg.eta = to_real({arg, e.line}, "eta_mode manual value");
    } else {
      fail_at(e.line, "eta_mode must be one_over_beta or manual(<value>), got '" + e.value + "'");
    }
  }
  if (has("init")) {
    const Entry& e = get("init");
    if (e.value == "uniform") {
      cfg.init = InitMode::kUniform;
    } else if (e.value == "center") {
      cfg.init = InitMode::kCenter;
    } else {
      fail_at(e.line, "init must be uniform or center, got '" + e.value + "'");
    }
  }
  if (has("comparator")) {
    const Entry& e = get("comparator");
    std::string arg;
    if (e.value == "per_round_min") {
      cfg.comparator = ComparatorMode::kPerRoundMin;
    } else if (e.value == "fixed_hindsight") {
      cfg.comparator = ComparatorMode::kFixedHindsight;
    } else if (call_form(e.value, "file", arg) && !arg.empty()) {
      cfg.comparator = ComparatorMode::kFromFile;
      cfg.comparator_file = arg;
    } else {
      fail_at(e.line, "comparator must be per_round_min, fixed_hindsight or file(<path>), got '" +
                          e.value + "'");
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str());
}

void validate(const ExperimentConfig& cfg) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError("invalid config: " + msg);
  };
  require(!cfg.regularizers.empty(), "at least one regularizer is required");
  require(cfg.T >= 1, "T must be at least 1");
  require(cfg.m >= 1 && cfg.d >= 1, "m and d must be at least 1");
  require(cfg.epsilon > 0.0 && cfg.epsilon * cfg.d < 1.0, "epsilon must lie in (0, 1/d)");
  require(cfg.sup_samples >= 1 && cfg.samples >= 1, "sample counts must be at least 1");
  require(cfg.eta_mode == EtaMode::kOneOverBeta || (cfg.eta > 0.0 && std::isfinite(cfg.eta)),
          "manual step size must be positive");
  if (cfg.experiment == CostKind::kDOptimal) {
    require(cfg.m <= cfg.d, "doptimal needs m <= d");
    require(cfg.pool_size >= 1, "pool_size must be at least 1");
  }
  if (cfg.experiment == CostKind::kPoissonInverse) {
    require(cfg.box_lower > 0.0 && cfg.box_lower < cfg.box_upper,
            "poisson box needs 0 < box_lower < box_upper");
  }
  if (cfg.experiment == CostKind::kSyntheticQuadratic) {
    require(cfg.drift >= 0.0 && std::isfinite(cfg.drift), "drift must be >= 0");
  }
  require(!cfg.output_dir.empty(), "output_dir must not be empty");
}

std::string serialize(const ExperimentConfig& cfg) {
  std::vector<std::string> regs;
  for (auto k : cfg.regularizers) regs.push_back(short_name(k));
  std::ostringstream os;
  os << "experiment = " << to_string(cfg.experiment) << "\n"
     << "T = " << cfg.T << "\n"
     << "m = " << cfg.m << "\n"
     << "d = " << cfg.d << "\n"
     << "regularizers = " << csv::join(regs) << "\n"
     << "eta_mode = " << eta_text(cfg) << "\n"
     << "comparator = " << comparator_text(cfg) << "\n"
     << "epsilon = " << csv::format_double(cfg.epsilon) << "\n"
     << "seed = " << cfg.seed << "\n"
     << "sup_samples = " << cfg.sup_samples << "\n"
     << "output_dir = " << cfg.output_dir.string() << "\n"
     << "init = " << (cfg.init == InitMode::kCenter ? "center" : "uniform") << "\n"
     << "pool_size = " << cfg.pool_size << "\n"
     << "drift = " << csv::format_double(cfg.drift) << "\n"
     << "samples = " << cfg.samples << "\n"
     << "box_lower = " << csv::format_double(cfg.box_lower) << "\n"
     << "box_upper = " << csv::format_double(cfg.box_upper) << "\n";
  return os.str();
}

FeasibleSet feasible_set(const ExperimentConfig& cfg) {
  if (cfg.experiment == CostKind::kPoissonInverse) {
    return FeasibleSet::positive_box(cfg.d, cfg.box_lower, cfg.box_upper);
  }
  return FeasibleSet::truncated_simplex(cfg.d, cfg.epsilon);
}

}  // namespace omdlab
