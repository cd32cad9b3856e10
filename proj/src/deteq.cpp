#include "dlmvdr/deteq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dlmvdr/errors.hpp"

namespace dlmvdr::deteq {

namespace {

constexpr double kResidualTol = 1e-13;
constexpr int kMaxIterations = 10000;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_spectra(std::span<const double> lambda, std::span<const double> t, double alpha,
                   std::size_t n) {
  if (lambda.empty() || t.empty()) throw std::invalid_argument("deteq: empty spectrum");
  if (n == 0) throw std::invalid_argument("deteq: N must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("deteq: alpha must be > 0");
  for (double v : lambda)
    if (!(v > 0.0)) throw std::invalid_argument("deteq: lambda must be positive");
  for (double v : t)
    if (!(v > 0.0)) throw std::invalid_argument("deteq: t must be positive");
}

double map_delta_tilde(std::span<const double> t, double delta, std::size_t n) {
  double s = 0.0;
  for (double tj : t) s += tj / (1.0 + delta * tj);
  return s / static_cast<double>(n);
}

double map_delta(std::span<const double> lambda, double delta_tilde, double alpha,
                 std::size_t n) {
  double s = 0.0;
  for (double li : lambda) s += li / (delta_tilde * li + alpha);
  return s / static_cast<double>(n);
}

}  // namespace

FixedPoint solve_fixed_point(std::span<const double> lambda, std::span<const double> t,
                             double alpha, std::size_t n) {
  check_spectra(lambda, t, alpha, n);

  // Start from the delta_tilde = 0 value, c/alpha * mean(lambda).
  double delta = 0.0;
  for (double li : lambda) delta += li;
  delta /= alpha * static_cast<double>(n);

  double prev_step = 0.0;
  bool damped = false;
  int iter = 0;
  for (; iter < kMaxIterations; ++iter) {
    const double dt = map_delta_tilde(t, delta, n);
    const double next = map_delta(lambda, dt, alpha, n);
    const double step = next - delta;
    if (step * prev_step < 0.0) damped = true;  // oscillation
    prev_step = step;
    delta = damped ? delta + 0.5 * step : next;

    // With delta_tilde re-evaluated at the new delta its own residual is zero;
    // convergence is governed by the residual of the delta equation.
    const double dt_chk = map_delta_tilde(t, delta, n);
    const double rd = std::abs(delta - map_delta(lambda, dt_chk, alpha, n));
    if (rd <= kResidualTol * (1.0 + delta)) return {delta, dt_chk, iter + 1};
  }
  const double dt = map_delta_tilde(t, delta, n);
  std::ostringstream msg;
  msg << "solve_fixed_point: no convergence after " << kMaxIterations
      << " iterations, residual " << std::abs(delta - map_delta(lambda, dt, alpha, n));
  throw NumericalError(msg.str());
}

DetEq deterministic_equivalents(double delta, double delta_tilde,
                                std::span<const double> lambda, std::span<const double> t,
                                double alpha, std::size_t n) {
  check_spectra(lambda, t, alpha, n);
  DetEq d;
  d.delta = delta;
  d.delta_tilde = delta_tilde;
  d.e.resize(lambda.size());
  d.e_tilde.resize(t.size());
  for (std::size_t i = 0; i < lambda.size(); ++i)
    d.e[i] = lambda[i] / (delta_tilde * lambda[i] + alpha);
  for (std::size_t j = 0; j < t.size(); ++j) d.e_tilde[j] = t[j] / (1.0 + delta * t[j]);

  const double inv_n = 1.0 / static_cast<double>(n);
  for (int k = 0; k <= 4; ++k) {
    double s = 0.0;
    for (double e : d.e) s += std::pow(e, k);
    d.eta[k] = s * inv_n;
    s = 0.0;
    for (double e : d.e_tilde) s += std::pow(e, k);
    d.eta_tilde[k] = s * inv_n;
  }
  d.gamma = d.eta[2];
  d.gamma_tilde = d.eta_tilde[2];
  d.one_minus_gg = 1.0 - d.gamma * d.gamma_tilde;

  // Definitional consistency: the first trace powers are the fixed point.
  if (std::abs(d.eta[1] - delta) > 1e-12 * (1.0 + delta) ||
      std::abs(d.eta_tilde[1] - delta_tilde) > 1e-12 * (1.0 + delta_tilde))
    throw NumericalError("deterministic_equivalents: inputs are not a converged fixed point");
  return d;
}

void BoundReport::add(std::string name, double value, double lower, double upper) {
  const double slack = 1e-12 * (1.0 + std::abs(value));
  const bool ok = value >= lower - slack && value <= upper + slack;
  checks.push_back({std::move(name), value, lower, upper, ok});
  all_pass = all_pass && ok;
}

BoundReport check_bounds(const DetEq& deq, std::span<const double> lambda,
                         std::span<const double> t, double alpha, std::size_t m,
                         std::size_t n) {
  check_spectra(lambda, t, alpha, n);
  const double r_sup = *std::max_element(lambda.begin(), lambda.end());
  const double r_inf = *std::min_element(lambda.begin(), lambda.end());
  const double t_sup = *std::max_element(t.begin(), t.end());
  const double t_inf = *std::min_element(t.begin(), t.end());
  const double c = static_cast<double>(m) / static_cast<double>(n);

  const double delta_inf = c * r_inf / (alpha + r_sup * t_sup);
  const double delta_tilde_inf = alpha * t_inf / (alpha + c * r_sup * t_sup);

  BoundReport rep;
  rep.add("residual_delta", std::abs(deq.delta - map_delta(lambda, deq.delta_tilde, alpha, n)),
          0.0, 1e-12 * (1.0 + deq.delta));
  rep.add("residual_delta_tilde", std::abs(deq.delta_tilde - map_delta_tilde(t, deq.delta, n)),
          0.0, 1e-12 * (1.0 + deq.delta_tilde));
  rep.add("delta", deq.delta, delta_inf, c * r_sup / alpha);
  rep.add("delta_tilde", deq.delta_tilde, delta_tilde_inf, t_sup);
  rep.add("gamma", deq.gamma, delta_inf * delta_inf / c, c * r_sup * r_sup / (alpha * alpha));
  rep.add("gamma_tilde", deq.gamma_tilde, delta_tilde_inf * delta_tilde_inf, t_sup * t_sup);
  // Lower side comes from the gamma bounds (product of the two lower bounds);
  // upper side from the stability margin estimate.
  const double gg_lower = delta_inf * delta_inf * delta_tilde_inf * delta_tilde_inf / c;
  const double one_minus_gg_lower =
      (alpha * alpha) / (c * c * r_sup * r_sup) * delta_inf * delta_inf;
  rep.add("one_minus_gg", deq.one_minus_gg, one_minus_gg_lower, 1.0 - gg_lower);
  rep.add("min_e", *std::min_element(deq.e.begin(), deq.e.end()), 0.0, kInf);
  rep.add("min_e_tilde", *std::min_element(deq.e_tilde.begin(), deq.e_tilde.end()), 0.0, kInf);
  return rep;
}

}  // namespace dlmvdr::deteq
