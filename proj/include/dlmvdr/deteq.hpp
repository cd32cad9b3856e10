#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dlmvdr::deteq {

struct FixedPoint {
  double delta = 0.0;
  double delta_tilde = 0.0;
  int iterations = 0;
};

// Coupled fixed-point system in (delta, delta_tilde):
//   delta_tilde = (1/N) sum_j t_j / (1 + delta t_j)
//   delta       = (1/N) sum_i lambda_i / (delta_tilde lambda_i + alpha)
// Unique positive solution for alpha > 0; solved by damped alternating
// substitution to relative residual 1e-13.
FixedPoint solve_fixed_point(std::span<const double> lambda, std::span<const double> t,
                             double alpha, std::size_t n);

// Resolvent-equivalent spectra and their normalized trace powers.
// eta[k] = (1/N) sum_i e_i^k and eta_tilde[k] = (1/N) sum_j et_j^k for k <= 4;
// eta[1] reproduces delta and eta_tilde[1] reproduces delta_tilde.
struct DetEq {
  double delta = 0.0;
  double delta_tilde = 0.0;
  std::vector<double> e;        // e_i = lambda_i / (delta_tilde lambda_i + alpha)
  std::vector<double> e_tilde;  // et_j = t_j / (1 + delta t_j)
  double gamma = 0.0;           // eta[2]
  double gamma_tilde = 0.0;     // eta_tilde[2]
  std::array<double, 5> eta{};
  std::array<double, 5> eta_tilde{};
  double one_minus_gg = 0.0;    // 1 - gamma * gamma_tilde
};

DetEq deterministic_equivalents(double delta, double delta_tilde,
                                std::span<const double> lambda, std::span<const double> t,
                                double alpha, std::size_t n);

struct BoundCheck {
  std::string name;
  double value = 0.0;
  double lower = 0.0;  // -inf when one-sided
  double upper = 0.0;  // +inf when one-sided
  bool pass = false;
};

struct BoundReport {
  std::vector<BoundCheck> checks;
  bool all_pass = true;

  void add(std::string name, double value, double lower, double upper);
};

// Evaluates the a-priori envelope of the fixed-point solution on the given
// finite model (sup/inf norms taken over the supplied spectra): ranges for
// delta and delta_tilde, upper and lower bounds for gamma and gamma_tilde,
// the two-sided bound on 1 - gamma*gamma_tilde, and the residuals of the
// system itself.
BoundReport check_bounds(const DetEq& deq, std::span<const double> lambda,
                         std::span<const double> t, double alpha, std::size_t m,
                         std::size_t n);

}  // namespace dlmvdr::deteq
