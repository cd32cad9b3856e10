#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "dlmvdr/model.hpp"

namespace dlmvdr::cli {

enum class OutputMode { supervised, unsupervised, mse };

std::string to_string(OutputMode mode);

// One JSON document describes an experiment; unknown keys are rejected so a
// typo cannot silently change a run.
struct ExperimentConfig {
  std::size_t m = 0;
  std::size_t n = 0;
  double alpha = 0.0;
  OutputMode mode = OutputMode::supervised;
  model::SpatialSpec spatial;
  model::TemporalSpec temporal;
  std::size_t reps = 10000;
  std::uint64_t seed = 1;
  std::size_t bins = 50;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

// The mse mode trains on signal-bearing data, like unsupervised.
model::Scenario to_scenario(const ExperimentConfig& config);

}  // namespace dlmvdr::cli
