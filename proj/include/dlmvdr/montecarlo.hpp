#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "dlmvdr/model.hpp"
#include "dlmvdr/rng.hpp"

namespace dlmvdr::montecarlo {

struct McConfig {
  model::CanonicalModel canonical;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  unsigned workers = 0;   // 0 = all available threads
  bool with_mse = false;  // also record 1 - 2a + b per replication
};

struct McSamples {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> snr;
  std::vector<double> mse;  // empty unless requested
  std::uint64_t seed = 0;
  std::size_t reps = 0;
};

// M x N matrix with i.i.d. entries, real and imaginary parts independent
// N(0, 1/2); row-major, entry (i, j) drawn at position 2(iN + j) of the stream.
void sample_gaussian_matrix(CounterRng& rng, std::size_t m, std::size_t n,
                            std::span<linalg::cdouble> out);

// a = u^H Q u and b = u^H Q^2 u = ||Q u||^2 for the loaded resolvent
// Q = ((1/N) X diag(t) X^H + alpha diag(lambda)^{-1})^{-1}.
std::pair<double, double> realized_ab(std::span<const linalg::cdouble> x,
                                      const model::CanonicalModel& canonical);

// a^2 / b (supervised) or (b/a^2 - 1)^{-1} (unsupervised); requires b > a^2.
double realized_snr(double a, double b, model::TrainingMode mode);

double realized_mse(double a, double b);

// Replication r draws from the sub-stream keyed by (seed, r); the result is
// independent of worker count and scheduling.
McSamples run_experiment(const McConfig& config);

// Plain serial loop over replications; the oracle the parallel kernel is
// compared against (bit-identical output required).
McSamples run_experiment_reference(const McConfig& config);

// Normalized SNR samples of the unloaded, temporally white sample covariance
// filter; the alpha = 0 path exists only as a validation oracle and requires
// n >= m + 1 so the sample covariance is invertible.
std::vector<double> beta_oracle_run(std::size_t m, std::size_t n,
                                    const linalg::ComplexMatrix& r0,
                                    std::span<const linalg::cdouble> s, std::size_t reps,
                                    std::uint64_t seed);

// Header rep,a,b,snr[,mse]; 17 significant digits.
void write_samples_csv(std::ostream& os, const McSamples& samples);

}  // namespace dlmvdr::montecarlo
