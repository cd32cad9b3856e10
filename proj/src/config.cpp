#include "dlmvdr/config.hpp"

#include <fstream>
#include <set>

#include "dlmvdr/errors.hpp"

namespace dlmvdr::cli {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
  if (!j.is_object()) throw ConfigError("config: " + where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!known.contains(key))
      throw ConfigError("config: unknown key \"" + key + "\" in " + where);
}

template <typename T>
T require(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError("config: missing key \"" + key + "\" in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: key \"" + key + "\" in " + where + " has the wrong type");
  }
}

template <typename T>
T optional(const json& j, const std::string& key, const std::string& where, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: key \"" + key + "\" in " + where + " has the wrong type");
  }
}

linalg::cdouble parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("config: complex entries in " + where + " must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

model::SpatialSpec parse_spatial(const json& j, std::size_t m) {
  const std::string type = require<std::string>(j, "type", "spatial");
  if (type == "ula") {
    reject_unknown_keys(j, {"type", "soi_angle_deg", "interferer_angles_deg",
                            "interferer_power", "noise_power"},
                        "spatial");
    model::UlaSpatial ula;
    ula.soi_angle_deg = optional<double>(j, "soi_angle_deg", "spatial", 0.0);
    ula.interferer_angles_deg =
        optional<std::vector<double>>(j, "interferer_angles_deg", "spatial", {});
    ula.interferer_power = optional<double>(j, "interferer_power", "spatial", 0.0);
    ula.noise_power = optional<double>(j, "noise_power", "spatial", 1.0);
    return ula;
  }
  if (type == "explicit") {
    reject_unknown_keys(j, {"type", "r0", "s"}, "spatial");
    const json& jr = j.contains("r0") ? j.at("r0") : throw ConfigError("config: explicit spatial needs \"r0\"");
    const json& js = j.contains("s") ? j.at("s") : throw ConfigError("config: explicit spatial needs \"s\"");
    if (!jr.is_array() || jr.size() != m)
      throw ConfigError("config: spatial.r0 must be an M x M array of [re, im] pairs");
    model::ExplicitSpatial ex;
    ex.r0 = linalg::ComplexMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      if (!jr[i].is_array() || jr[i].size() != m)
        throw ConfigError("config: spatial.r0 row " + std::to_string(i) + " has wrong length");
      for (std::size_t k = 0; k < m; ++k) ex.r0(i, k) = parse_complex(jr[i][k], "spatial.r0");
    }
    if (!js.is_array() || js.size() != m)
      throw ConfigError("config: spatial.s must have length M");
    ex.s.resize(m);
    for (std::size_t i = 0; i < m; ++i) ex.s[i] = parse_complex(js[i], "spatial.s");
    return ex;
  }
  throw ConfigError("config: spatial.type must be \"ula\" or \"explicit\"");
}

model::TemporalSpec parse_temporal(const json& j) {
  const std::string type = require<std::string>(j, "type", "temporal");
  if (type == "identity") {
    reject_unknown_keys(j, {"type"}, "temporal");
    return model::IdentityTemporal{};
  }
  if (type == "exp_toeplitz") {
    reject_unknown_keys(j, {"type"}, "temporal");
    return model::ExpToeplitzTemporal{};
  }
  if (type == "ar1") {
    reject_unknown_keys(j, {"type", "psi"}, "temporal");
    return model::Ar1Temporal{require<double>(j, "psi", "temporal")};
  }
  throw ConfigError("config: temporal.type must be \"identity\", \"exp_toeplitz\" or \"ar1\"");
}

}  // namespace

std::string to_string(OutputMode mode) {
  switch (mode) {
    case OutputMode::supervised: return "supervised";
    case OutputMode::unsupervised: return "unsupervised";
    case OutputMode::mse: return "mse";
  }
  return "?";
}

ExperimentConfig parse_config(const json& j) {
  reject_unknown_keys(
      j, {"M", "N", "alpha", "mode", "spatial", "temporal", "reps", "seed", "bins"}, "config");
  ExperimentConfig cfg;
  cfg.m = require<std::size_t>(j, "M", "config");
  cfg.n = require<std::size_t>(j, "N", "config");
  if (cfg.m == 0 || cfg.n == 0) throw ConfigError("config: M and N must be >= 1");
  cfg.alpha = require<double>(j, "alpha", "config");
  if (!(cfg.alpha > 0.0)) throw ConfigError("config: alpha must be > 0");
  const std::string mode = require<std::string>(j, "mode", "config");
  if (mode == "supervised")
    cfg.mode = OutputMode::supervised;
  else if (mode == "unsupervised")
    cfg.mode = OutputMode::unsupervised;
  else if (mode == "mse")
    cfg.mode = OutputMode::mse;
  else
    throw ConfigError("config: mode must be \"supervised\", \"unsupervised\" or \"mse\"");
  if (!j.contains("spatial")) throw ConfigError("config: missing key \"spatial\" in config");
  cfg.spatial = parse_spatial(j.at("spatial"), cfg.m);
  if (!j.contains("temporal")) throw ConfigError("config: missing key \"temporal\" in config");
  cfg.temporal = parse_temporal(j.at("temporal"));
  cfg.reps = optional<std::size_t>(j, "reps", "config", cfg.reps);
  if (cfg.reps == 0) throw ConfigError("config: reps must be >= 1");
  cfg.seed = optional<std::uint64_t>(j, "seed", "config", cfg.seed);
  cfg.bins = optional<std::size_t>(j, "bins", "config", cfg.bins);
  if (cfg.bins == 0) throw ConfigError("config: bins must be >= 1");

  // Surface scenario-level problems (powers, psi range, explicit matrices)
  // at parse time so the CLI exits with a config error.
  to_scenario(cfg).validate();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
  }
  return parse_config(j);
}

model::Scenario to_scenario(const ExperimentConfig& config) {
  model::Scenario sc;
  sc.m = config.m;
  sc.n = config.n;
  sc.alpha = config.alpha;
  sc.mode = config.mode == OutputMode::supervised ? model::TrainingMode::supervised
                                                  : model::TrainingMode::unsupervised;
  sc.spatial = config.spatial;
  sc.temporal = config.temporal;
  return sc;
}

}  // namespace dlmvdr::cli
