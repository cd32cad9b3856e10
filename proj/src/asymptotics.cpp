#include "dlmvdr/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "dlmvdr/errors.hpp"

namespace dlmvdr::asymptotics {

FirstOrder abar_bbar(std::span<const std::complex<double>> u, const deteq::DetEq& deq) {
  if (u.empty() || u.size() != deq.e.size())
    throw std::invalid_argument("abar_bbar: signature/spectrum size mismatch");
  FirstOrder f;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = std::norm(u[i]);
    double ek = 1.0;
    for (int k = 0; k <= 4; ++k) {
      f.u_ek[k] += ek * w;
      ek *= deq.e[i];
    }
  }
  f.abar = f.u_ek[1];
  f.bbar = f.u_ek[2] / deq.one_minus_gg;
  if (!(f.abar > 0.0) || !(f.bbar > 0.0))
    throw NumericalError("abar_bbar: non-positive first-order estimate");
  return f;
}

std::pair<double, double> first_order_snr(double abar, double bbar) {
  if (!(abar > 0.0) || !(bbar > 0.0))
    throw std::invalid_argument("first_order_snr: abar and bbar must be positive");
  if (!(bbar > abar * abar))
    throw NumericalError("first_order_snr: bbar <= abar^2, upstream values corrupt");
  const double snr_s = abar * abar / bbar;
  const double snr_u = 1.0 / (bbar / (abar * abar) - 1.0);
  return {snr_s, snr_u};
}

VarianceComponents variance_components(const QuadPowers& u_ek, const deteq::DetEq& deq) {
  const double g = deq.gamma, gt = deq.gamma_tilde, d = deq.one_minus_gg;
  const double e3 = deq.eta[3], e4 = deq.eta[4];
  const double et3 = deq.eta_tilde[3], et4 = deq.eta_tilde[4];

  VarianceComponents vc;
  vc.s = (u_ek[2] / u_ek[1]) * (u_ek[2] / u_ek[1]) - 2.0 * u_ek[3] / u_ek[1] +
         0.5 * (u_ek[4] / u_ek[2] + (u_ek[3] / u_ek[2]) * (u_ek[3] / u_ek[2]));
  vc.t = u_ek[3] / u_ek[2] - u_ek[2] / u_ek[1];
  vc.v = gt * gt * e4 + g * g * et4 + 4.0 * gt * d * vc.s +
         4.0 * (gt * gt * e3 - g * et3) * vc.t +
         (2.0 / d) * (gt * gt * gt * e3 * e3 - 2.0 * g * gt * e3 * et3 + g * g * g * et3 * et3);
  if (!(vc.v > 0.0)) throw NumericalError("variance_components: V is not positive");
  return vc;
}

double v_lower_bound(const deteq::DetEq& deq, std::span<const double> t, std::size_t n) {
  if (t.size() != deq.e_tilde.size())
    throw std::invalid_argument("v_lower_bound: spectrum size mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j)
    s += deq.e_tilde[j] * deq.e_tilde[j] * deq.e_tilde[j] / t[j];
  s /= static_cast<double>(n);
  return (deq.eta[3] * s) * (deq.eta[3] * s) / (deq.one_minus_gg * deq.gamma);
}

std::pair<double, double> snr_variances(const QuadPowers& u_ek, const deteq::DetEq& deq,
                                            double v) {
  if (!(v > 0.0)) throw std::invalid_argument("snr_variances: V must be positive");
  const double ratio = u_ek[1] * u_ek[1] / u_ek[2];
  const double sigma_s2 = ratio * ratio * v;
  const double base = 1.0 - ratio * deq.one_minus_gg;
  if (!(base > 0.0))
    throw NumericalError("snr_variances: unsupervised factor base <= 0 (bbar <= abar^2)");
  const double sigma_u2 = sigma_s2 / (base * base * base * base);
  return {sigma_s2, sigma_u2};
}

SigmaMatrix sigma_matrix(const QuadPowers& u_ek, const deteq::DetEq& deq) {
  const double g = deq.gamma, gt = deq.gamma_tilde, d = deq.one_minus_gg;
  const double e3 = deq.eta[3], e4 = deq.eta[4];
  const double et3 = deq.eta_tilde[3], et4 = deq.eta_tilde[4];
  const double d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d;
  const double cross = gt * gt * e3 - g * et3;
  const double trace_pair =
      gt * gt * gt * e3 * e3 - 2.0 * g * gt * e3 * et3 + g * g * g * et3 * et3;

  SigmaMatrix s;
  s.saa = gt / d * u_ek[2] * u_ek[2];
  s.sab = 2.0 * gt / d2 * u_ek[2] * u_ek[3] + u_ek[2] * u_ek[2] / d3 * cross;
  s.sbb = 2.0 * gt / d3 * (u_ek[4] * u_ek[2] + u_ek[3] * u_ek[3]) +
          4.0 * u_ek[3] * u_ek[2] / d4 * cross +
          u_ek[2] * u_ek[2] / d4 * (gt * gt * e4 + g * g * et4) +
          2.0 * u_ek[2] * u_ek[2] / d5 * trace_pair;
  if (!(s.saa > 0.0) || !(s.saa * s.sbb - s.sab * s.sab > 0.0))
    throw NumericalError("sigma_matrix: result is not positive definite");
  return s;
}

CltCoefficients clt_coefficients(double abar, double bbar) {
  if (!(abar > 0.0) || !(bbar > abar * abar))
    throw std::invalid_argument("clt_coefficients: requires abar > 0 and bbar > abar^2");
  CltCoefficients c;
  c.a_s = 2.0 * abar / bbar;
  c.b_s = -(abar / bbar) * (abar / bbar);
  const double gap = bbar - abar * abar;
  c.a_u = 2.0 * abar * bbar / (gap * gap);
  c.b_u = -(abar / gap) * (abar / gap);
  return c;
}

double quadratic_form_variance(double a_coef, double b_coef, const SigmaMatrix& sigma) {
  return a_coef * a_coef * sigma.saa + 2.0 * a_coef * b_coef * sigma.sab +
         b_coef * b_coef * sigma.sbb;
}

std::pair<double, double> mse_prediction(double abar, double bbar, const SigmaMatrix& sigma) {
  return {1.0 - 2.0 * abar + bbar, quadratic_form_variance(-2.0, 1.0, sigma)};
}

}  // namespace dlmvdr::asymptotics
