// Batch front-end: asymptotic predictions for the SNR of diagonally loaded
// MVDR filters, Monte Carlo simulation, CLT validation, and histogram export.
// Structured output (JSON/CSV) goes to stdout or --out; logs go to stderr.
// Exit codes: 0 pass, 1 statistical fail, 2 config error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dlmvdr/errors.hpp"
#include "dlmvdr/experiment.hpp"

namespace {

using namespace dlmvdr;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + out_path);
  out << text;
}

int cmd_predict(const std::string& config_path, const std::string& out_path) {
  const auto config = cli::load_config_file(config_path);
  const auto pred = cli::compute_prediction(cli::to_scenario(config));
  emit(cli::prediction_to_json(pred).dump(2) + "\n", out_path);
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 unsigned workers) {
  const auto config = cli::load_config_file(config_path);
  std::ostringstream csv;
  cli::simulate_csv(config, workers, csv);
  emit(csv.str(), out_path);
  return 0;
}

int cmd_validate(const std::string& config_path, double threshold, unsigned workers) {
  const auto config = cli::load_config_file(config_path);
  const auto report = cli::run_validation(config, threshold, workers);
  std::cout << cli::validation_to_json(report).dump(2) << "\n";
  return report.pass ? 0 : 1;
}

int cmd_beta_oracle(std::size_t m, std::size_t n, std::size_t reps, std::uint64_t seed,
                    double threshold) {
  const auto report = cli::run_beta_oracle(m, n, reps, seed, threshold);
  std::cout << cli::beta_oracle_to_json(report).dump(2) << "\n";
  return report.pass ? 0 : 1;
}

int cmd_hist(const std::string& samples_path, const std::string& config_path, std::size_t bins,
             const std::string& out_path) {
  const auto config = cli::load_config_file(config_path);
  std::ifstream in(samples_path);
  if (!in) throw ConfigError("cannot open samples file " + samples_path);
  const auto samples = cli::read_samples_csv(
      in, config.mode == cli::OutputMode::mse ? "mse" : "snr");
  std::ostringstream csv;
  cli::hist_csv(samples, config, bins == 0 ? config.bins : bins, csv);
  emit(csv.str(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic-equivalent predictions and Monte Carlo validation "
               "for the SNR of diagonally loaded MVDR filters"};
  app.require_subcommand(1);

  std::string config_path, out_path, samples_path;
  unsigned workers = 0;
  double threshold = 0.03;
  std::size_t m = 0, n = 0, reps = 20000, bins = 0;
  std::uint64_t seed = 1;
  double beta_threshold = 0.02;

  auto* predict = app.add_subcommand("predict", "Print the asymptotic prediction as JSON");
  predict->add_option("--config", config_path, "experiment config JSON")->required();
  predict->add_option("--out", out_path, "output path (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Run replications, write samples CSV");
  simulate->add_option("--config", config_path, "experiment config JSON")->required();
  simulate->add_option("--out", out_path, "output CSV path")->required();
  simulate->add_option("--workers", workers, "worker threads (0 = all)");

  auto* validate = app.add_subcommand("validate", "Test the standardized samples against N(0,1)");
  validate->add_option("--config", config_path, "experiment config JSON")->required();
  validate->add_option("--threshold", threshold, "KS pass threshold (default 0.03)");
  validate->add_option("--workers", workers, "worker threads (0 = all)");

  auto* beta = app.add_subcommand("beta-oracle",
                                  "Check the unloaded, temporally white filter against its "
                                  "exact Beta law");
  beta->add_option("--m", m, "antennas")->required();
  beta->add_option("--n", n, "snapshots")->required();
  beta->add_option("--reps", reps, "replications (default 20000)");
  beta->add_option("--seed", seed, "seed (default 1)");
  beta->add_option("--threshold", beta_threshold, "KS pass threshold (default 0.02)");

  auto* hist = app.add_subcommand("hist", "Histogram CSV with the asymptotic density overlay");
  hist->add_option("--samples", samples_path, "samples CSV from simulate")->required();
  hist->add_option("--config", config_path, "experiment config JSON")->required();
  hist->add_option("--bins", bins, "bin count (default from config)");
  hist->add_option("--out", out_path, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (predict->parsed()) return cmd_predict(config_path, out_path);
    if (simulate->parsed()) return cmd_simulate(config_path, out_path, workers);
    if (validate->parsed()) return cmd_validate(config_path, threshold, workers);
    if (beta->parsed()) return cmd_beta_oracle(m, n, reps, seed, beta_threshold);
    if (hist->parsed()) return cmd_hist(samples_path, config_path, bins, out_path);
  } catch (const dlmvdr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dlmvdr::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
