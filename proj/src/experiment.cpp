#include "dlmvdr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "dlmvdr/errors.hpp"

namespace dlmvdr::cli {

std::pair<double, double> predicted_law(const Prediction& p, OutputMode mode) {
  switch (mode) {
    case OutputMode::supervised: return {p.snr_bar_s, p.sigma_s2};
    case OutputMode::unsupervised: return {p.snr_bar_u, p.sigma_u2};
    case OutputMode::mse: return {p.mse_bar, p.sigma_mse2};
  }
  throw std::logic_error("predicted_law: bad mode");
}

montecarlo::McSamples run_samples(const ExperimentConfig& config, unsigned workers) {
  montecarlo::McConfig mc;
  mc.canonical = model::canonicalize(to_scenario(config));
  mc.reps = config.reps;
  mc.seed = config.seed;
  mc.workers = workers;
  mc.with_mse = config.mode == OutputMode::mse;
  return montecarlo::run_experiment(mc);
}

const std::vector<double>& mode_series(const montecarlo::McSamples& samples, OutputMode mode) {
  return mode == OutputMode::mse ? samples.mse : samples.snr;
}

void simulate_csv(const ExperimentConfig& config, unsigned workers, std::ostream& os) {
  montecarlo::write_samples_csv(os, run_samples(config, workers));
}

stats::ValidationReport run_validation(const ExperimentConfig& config, double ks_threshold,
                                       unsigned workers) {
  const Prediction pred = compute_prediction(to_scenario(config));
  const auto [center, sigma2] = predicted_law(pred, config.mode);
  const auto samples = run_samples(config, workers);
  const auto& series = mode_series(samples, config.mode);

  auto z = stats::standardize(series, center, std::sqrt(sigma2), config.n);
  std::sort(z.begin(), z.end());

  stats::ValidationReport rep;
  rep.n = series.size();
  rep.ks_normal = stats::ks_statistic(z, [](double v) { return stats::normal_cdf(v); });
  rep.ks_threshold = ks_threshold;
  rep.empirical_mean = stats::sample_mean(z);
  rep.empirical_var = stats::sample_variance(z);
  rep.predicted_center = center;
  rep.predicted_sigma2 = sigma2;
  rep.variance_ratio =
      static_cast<double>(config.n) * stats::sample_variance(series) / sigma2;
  rep.bounds_pass = pred.bounds.all_pass;
  rep.pass = rep.ks_normal <= ks_threshold && rep.bounds_pass;
  rep.mode = to_string(config.mode);
  return rep;
}

nlohmann::json validation_to_json(const stats::ValidationReport& r) {
  return nlohmann::json{
      {"n", r.n},
      {"mode", r.mode},
      {"ks_normal", r.ks_normal},
      {"ks_threshold", r.ks_threshold},
      {"standardized_mean", r.empirical_mean},
      {"standardized_var", r.empirical_var},
      {"predicted_center", r.predicted_center},
      {"predicted_sigma2", r.predicted_sigma2},
      {"variance_ratio", r.variance_ratio},
      {"bounds_pass", r.bounds_pass},
      {"verdict", r.pass ? "pass" : "fail"},
  };
}

BetaOracleReport run_beta_oracle(std::size_t m, std::size_t n, std::size_t reps,
                                 std::uint64_t seed, double ks_threshold) {
  // Noise-only array looking broadside; the law is invariant to the actual
  // spatial scenario, this just fixes one.
  const auto r0 = linalg::ComplexMatrix::identity(m);
  const auto s = model::ula_steering(0.0, m);
  auto samples = montecarlo::beta_oracle_run(m, n, r0, s, reps, seed);
  std::sort(samples.begin(), samples.end());

  BetaOracleReport rep;
  rep.m = m;
  rep.n = n;
  rep.p = static_cast<double>(n + 2 - m);
  rep.q = static_cast<double>(m - 1);
  rep.reps = reps;
  rep.seed = seed;
  rep.ks_threshold = ks_threshold;
  rep.ks_beta = stats::ks_statistic(
      samples, [&rep](double x) { return stats::beta_cdf(x, rep.p, rep.q); });
  rep.sample_mean = stats::sample_mean(samples);
  rep.expected_mean = rep.p / (rep.p + rep.q);
  rep.mean_tolerance =
      4.0 * std::sqrt(stats::sample_variance(samples) / static_cast<double>(reps));
  rep.pass = rep.ks_beta <= ks_threshold &&
             std::abs(rep.sample_mean - rep.expected_mean) <= rep.mean_tolerance;
  return rep;
}

nlohmann::json beta_oracle_to_json(const BetaOracleReport& r) {
  return nlohmann::json{
      {"M", r.m},
      {"N", r.n},
      {"beta_p", r.p},
      {"beta_q", r.q},
      {"reps", r.reps},
      {"seed", r.seed},
      {"ks_beta", r.ks_beta},
      {"ks_threshold", r.ks_threshold},
      {"sample_mean", r.sample_mean},
      {"expected_mean", r.expected_mean},
      {"mean_tolerance_4se", r.mean_tolerance},
      {"verdict", r.pass ? "pass" : "fail"},
  };
}

std::vector<double> read_samples_csv(std::istream& is, const std::string& column) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("samples CSV: empty file");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  const auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end())
    throw ConfigError("samples CSV: no column named \"" + column + "\"");
  const std::size_t idx = static_cast<std::size_t>(it - header.begin());

  std::vector<double> values;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    bool found = false;
    while (std::getline(ss, cell, ',')) {
      if (col == idx) {
        try {
          values.push_back(std::stod(cell));
        } catch (const std::exception&) {
          throw ConfigError("samples CSV: bad number at line " + std::to_string(lineno));
        }
        found = true;
        break;
      }
      ++col;
    }
    if (!found) throw ConfigError("samples CSV: short row at line " + std::to_string(lineno));
  }
  if (values.empty()) throw ConfigError("samples CSV: no data rows");
  return values;
}

void hist_csv(const std::vector<double>& samples, const ExperimentConfig& config,
              std::size_t bins, std::ostream& os) {
  const Prediction pred = compute_prediction(to_scenario(config));
  const auto [center, sigma2] = predicted_law(pred, config.mode);
  const double sd = std::sqrt(sigma2 / static_cast<double>(config.n));
  const auto [lo, hi] = stats::default_histogram_range(samples);
  const auto hist = stats::histogram(samples, bins, lo, hi);
  if (hist.underflow + hist.overflow > 0)
    std::cerr << "hist: " << hist.underflow + hist.overflow
              << " sample(s) outside the histogram range\n";
  stats::write_histogram_csv(os, hist, [center, sd](double x) {
    return stats::normal_pdf((x - center) / sd) / sd;
  });
}

}  // namespace dlmvdr::cli
