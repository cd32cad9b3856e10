#pragma once

#include <array>
#include <complex>
#include <span>
#include <utility>

#include "dlmvdr/deteq.hpp"

namespace dlmvdr::asymptotics {

// u^H E^k u for k = 0..4; index 0 is ||u||^2.
using QuadPowers = std::array<double, 5>;

struct FirstOrder {
  double abar = 0.0;  // u^H E u
  double bbar = 0.0;  // (1 - gamma gamma_tilde)^{-1} u^H E^2 u
  QuadPowers u_ek{};
};

struct VarianceComponents {
  double s = 0.0;
  double t = 0.0;
  double v = 0.0;  // strictly positive
};

// Asymptotic covariance of sqrt(N) (a - abar, b - bbar).
struct SigmaMatrix {
  double saa = 0.0;
  double sab = 0.0;
  double sbb = 0.0;
};

// Delta-method coefficients of the two SNR functionals.
struct CltCoefficients {
  double a_s = 0.0;
  double b_s = 0.0;
  double a_u = 0.0;
  double b_u = 0.0;
};

FirstOrder abar_bbar(std::span<const std::complex<double>> u, const deteq::DetEq& deq);

// (snr_bar_supervised, snr_bar_unsupervised) = (abar^2/bbar, (bbar/abar^2 - 1)^{-1}).
std::pair<double, double> first_order_snr(double abar, double bbar);

VarianceComponents variance_components(const QuadPowers& u_ek, const deteq::DetEq& deq);

// (eta3 * (1/N) sum_j et_j^3 / t_j)^2 / ((1 - gamma gamma_tilde) gamma),
// a positive floor under VarianceComponents::v.
double v_lower_bound(const deteq::DetEq& deq, std::span<const double> t, std::size_t n);

// (sigma_s^2, sigma_u^2) for the standardized SNR fluctuations.
std::pair<double, double> snr_variances(const QuadPowers& u_ek, const deteq::DetEq& deq,
                                            double v);

SigmaMatrix sigma_matrix(const QuadPowers& u_ek, const deteq::DetEq& deq);

CltCoefficients clt_coefficients(double abar, double bbar);

// [A B] Sigma [A B]^T
double quadratic_form_variance(double a_coef, double b_coef, const SigmaMatrix& sigma);

// (mse_bar, sigma_mse^2) for the sample filter R_hat^{-1} s: the mean-square
// error is 1 - 2a + b, so the fluctuation coefficients are (-2, 1).
std::pair<double, double> mse_prediction(double abar, double bbar, const SigmaMatrix& sigma);

}  // namespace dlmvdr::asymptotics
