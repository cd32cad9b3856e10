#include "dlmvdr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace dlmvdr::stats {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

// Rational approximation of the lower-tail normal quantile (Acklam), refined
// below; only has to land close enough for Halley to finish the job.
double quantile_guess(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

std::vector<double> standardize(std::span<const double> samples, double center, double sigma,
                                std::size_t n_dim) {
  if (!(sigma > 0.0)) throw std::invalid_argument("standardize: sigma must be > 0");
  const double scale = std::sqrt(static_cast<double>(n_dim)) / sigma;
  std::vector<double> z(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) z[i] = scale * (samples[i] - center);
  return z;
}

double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf) {
  if (sorted_samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end()))
    throw std::invalid_argument("ks_statistic: samples must be sorted ascending");
  const double n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = cdf(sorted_samples[i]);
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                             f - static_cast<double>(i) / n));
  }
  return d;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0,1)");
  const bool upper = p > 0.5;
  const double q = upper ? 1.0 - p : p;
  double x = quantile_guess(q);
  for (int k = 0; k < 2; ++k) {
    const double err = normal_cdf(x) - q;
    const double step = err / normal_pdf(x);
    x -= step / (1.0 + 0.5 * x * step);
  }
  return upper ? -x : x;
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double x, double p, double q) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = p + q, qap = p + 1.0, qam = p - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (q - m) * x / ((qam + m2) * (p + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;  // converged to working precision long before the cap in practice
}

}  // namespace

double beta_cdf(double x, double p, double q) {
  if (!(p > 0.0 && q > 0.0)) throw std::invalid_argument("beta_cdf: p, q must be > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("beta_cdf: x must be in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(p + q) - std::lgamma(p) - std::lgamma(q) +
                           p * std::log(x) + q * std::log1p(-x);
  // Evaluate on whichever side of the mean keeps the continued fraction short.
  if (x < p / (p + q)) return std::exp(log_front) * beta_cf(x, p, q) / p;
  return 1.0 - std::exp(log_front) * beta_cf(1.0 - x, q, p) / q;
}

double beta_pdf(double x, double p, double q) {
  if (!(p > 0.0 && q > 0.0)) throw std::invalid_argument("beta_pdf: p, q must be > 0");
  if (!(x >= 0.0 && x <= 1.0)) return 0.0;
  const double log_front = std::lgamma(p + q) - std::lgamma(p) - std::lgamma(q);
  if (x == 0.0) {
    if (p < 1.0) return std::numeric_limits<double>::infinity();
    if (p > 1.0) return 0.0;
    return std::exp(log_front + (q - 1.0) * std::log1p(-x));
  }
  if (x == 1.0) {
    if (q < 1.0) return std::numeric_limits<double>::infinity();
    if (q > 1.0) return 0.0;
    return std::exp(log_front + (p - 1.0) * std::log(x));
  }
  return std::exp(log_front + (p - 1.0) * std::log(x) + (q - 1.0) * std::log1p(-x));
}

Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi) {
  if (bins == 0) throw std::invalid_argument("histogram: bins must be >= 1");
  if (!(hi > lo)) throw std::invalid_argument("histogram: degenerate range");
  Histogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k <= bins; ++k) h.edges[k] = lo + width * static_cast<double>(k);
  h.counts.assign(bins, 0);
  for (double x : samples) {
    if (x < lo) {
      ++h.underflow;
    } else if (x > hi) {
      ++h.overflow;
    } else {
      const auto idx = std::min(static_cast<std::size_t>((x - lo) / width), bins - 1);
      ++h.counts[idx];
    }
  }
  const std::size_t in_range = samples.size() - h.underflow - h.overflow;
  h.density.assign(bins, 0.0);
  if (in_range > 0)
    for (std::size_t k = 0; k < bins; ++k)
      h.density[k] = static_cast<double>(h.counts[k]) / (static_cast<double>(in_range) * width);
  return h;
}

std::pair<double, double> default_histogram_range(std::span<const double> samples) {
  const double mean = sample_mean(samples);
  const double sd = std::sqrt(sample_variance(samples));
  return {mean - 4.0 * sd, mean + 4.0 * sd};
}

void write_histogram_csv(std::ostream& os, const Histogram& hist,
                         const std::function<double(double)>& reference_pdf) {
  os << "bin_left,bin_right,count,density,reference_pdf\n";
  char line[160];
  for (std::size_t k = 0; k < hist.counts.size(); ++k) {
    const double mid = 0.5 * (hist.edges[k] + hist.edges[k + 1]);
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%zu,%.17g,%.17g\n", hist.edges[k],
                  hist.edges[k + 1], hist.counts[k], hist.density[k], reference_pdf(mid));
    os << line;
  }
}

double sample_mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("sample_mean: empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
  if (v.size() < 2) throw std::invalid_argument("sample_variance: need at least 2 samples");
  const double m = sample_mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace dlmvdr::stats
