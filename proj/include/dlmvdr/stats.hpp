#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dlmvdr::stats {

// z_r = sqrt(n_dim) * (sample_r - center) / sigma
std::vector<double> standardize(std::span<const double> samples, double center, double sigma,
                                std::size_t n_dim);

// Kolmogorov-Smirnov statistic of ascending samples against a reference CDF.
double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf);

double normal_cdf(double x);
double normal_pdf(double x);
// Inverse of normal_cdf; rational initial guess plus a fixed number of
// Halley corrections, so the work per call is deterministic.
double normal_quantile(double p);

// Regularized incomplete beta function I_x(p, q).
double beta_cdf(double x, double p, double q);
double beta_pdf(double x, double p, double q);

struct Histogram {
  std::vector<double> edges;          // bins + 1, ascending
  std::vector<std::size_t> counts;
  std::vector<double> density;        // integrates to 1 over the in-range mass
  std::size_t underflow = 0;
  std::size_t overflow = 0;
};

Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi);

// Default range used by the CLI: mean +/- 4 sample standard deviations.
std::pair<double, double> default_histogram_range(std::span<const double> samples);

// CSV columns: bin_left,bin_right,count,density,reference_pdf
void write_histogram_csv(std::ostream& os, const Histogram& hist,
                         const std::function<double(double)>& reference_pdf);

struct ValidationReport {
  std::size_t n = 0;
  double ks_normal = 0.0;
  double ks_threshold = 0.0;
  double empirical_mean = 0.0;      // of the standardized samples
  double empirical_var = 0.0;       // of the standardized samples
  double predicted_center = 0.0;
  double predicted_sigma2 = 0.0;
  double variance_ratio = 0.0;      // n_dim * var(raw samples) / predicted_sigma2
  bool bounds_pass = false;
  bool pass = false;
  std::string mode;
};

double sample_mean(std::span<const double> v);
double sample_variance(std::span<const double> v);  // unbiased

}  // namespace dlmvdr::stats
