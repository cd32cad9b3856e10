#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dlmvdr/config.hpp"
#include "dlmvdr/montecarlo.hpp"
#include "dlmvdr/prediction.hpp"
#include "dlmvdr/stats.hpp"

namespace dlmvdr::cli {

// (center, sigma^2) of the asymptotic law matching the configured mode.
std::pair<double, double> predicted_law(const Prediction& p, OutputMode mode);

montecarlo::McSamples run_samples(const ExperimentConfig& config, unsigned workers);

// The series the configured mode validates: snr or mse column.
const std::vector<double>& mode_series(const montecarlo::McSamples& samples, OutputMode mode);

void simulate_csv(const ExperimentConfig& config, unsigned workers, std::ostream& os);

stats::ValidationReport run_validation(const ExperimentConfig& config, double ks_threshold,
                                       unsigned workers);
nlohmann::json validation_to_json(const stats::ValidationReport& report);

struct BetaOracleReport {
  std::size_t m = 0, n = 0;
  double p = 0.0, q = 0.0;  // Beta(N + 2 - M, M - 1)
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  double ks_beta = 0.0;
  double ks_threshold = 0.0;
  double sample_mean = 0.0;
  double expected_mean = 0.0;
  double mean_tolerance = 0.0;  // 4 standard errors
  bool pass = false;
};

BetaOracleReport run_beta_oracle(std::size_t m, std::size_t n, std::size_t reps,
                                 std::uint64_t seed, double ks_threshold);
nlohmann::json beta_oracle_to_json(const BetaOracleReport& report);

// Column of a simulate CSV ("snr" or "mse").
std::vector<double> read_samples_csv(std::istream& is, const std::string& column);

void hist_csv(const std::vector<double>& samples, const ExperimentConfig& config,
              std::size_t bins, std::ostream& os);

}  // namespace dlmvdr::cli
