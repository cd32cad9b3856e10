// Throughput comparison of the serial reference loop against the OpenMP
// kernel on the shipped array scenario.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dlmvdr/montecarlo.hpp"

namespace {

using Clock = std::chrono::steady_clock;

dlmvdr::model::Scenario scenario(std::size_t m, std::size_t n) {
  dlmvdr::model::Scenario sc;
  sc.m = m;
  sc.n = n;
  sc.alpha = 0.1;
  sc.mode = dlmvdr::model::TrainingMode::supervised;
  sc.spatial = dlmvdr::model::UlaSpatial{0.0, {-20.0, 50.0, 55.0}, 10.0, 1.0};
  sc.temporal = dlmvdr::model::ExpToeplitzTemporal{};
  return sc;
}

double run_once(const dlmvdr::montecarlo::McConfig& cfg, bool reference, double* checksum) {
  const auto start = Clock::now();
  const auto samples = reference ? dlmvdr::montecarlo::run_experiment_reference(cfg)
                                 : dlmvdr::montecarlo::run_experiment(cfg);
  const std::chrono::duration<double> dt = Clock::now() - start;
  double sum = 0.0;
  for (double v : samples.snr) sum += v;
  *checksum = sum;
  return dt.count();
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t reps = 2000;
  if (argc > 1) reps = std::strtoull(argv[1], nullptr, 10);

  std::printf("%-10s %-8s %12s %12s %10s\n", "(M,N)", "kernel", "seconds", "reps/s", "speedup");
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{20, 40}, {40, 80}, {64, 128}}) {
    dlmvdr::montecarlo::McConfig cfg;
    cfg.canonical = dlmvdr::model::canonicalize(scenario(m, n));
    cfg.reps = reps;
    cfg.seed = 424242;

    double sum_serial = 0.0, sum_parallel = 0.0;
    const double t_serial = run_once(cfg, true, &sum_serial);
    const double t_parallel = run_once(cfg, false, &sum_parallel);
    if (sum_serial != sum_parallel) {
      std::fprintf(stderr, "kernel mismatch: serial %.17g vs parallel %.17g\n", sum_serial,
                   sum_parallel);
      return 1;
    }
    const std::string dims = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
    std::printf("%-10s %-8s %12.4f %12.0f %10s\n", dims.c_str(), "serial", t_serial,
                reps / t_serial, "1.0x");
    char speedup[32];
    std::snprintf(speedup, sizeof(speedup), "%.1fx", t_serial / t_parallel);
    std::printf("%-10s %-8s %12.4f %12.0f %10s\n", dims.c_str(), "openmp", t_parallel,
                reps / t_parallel, speedup);
  }
#ifdef _OPENMP
  std::printf("openmp max threads: %d\n", omp_get_max_threads());
#endif
  return 0;
}
