#include "dlmvdr/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dlmvdr/errors.hpp"
#include "dlmvdr/linalg.hpp"

namespace dlmvdr::model {

namespace {

void check_positive_eigenvalues(const std::vector<double>& vals, const char* what) {
  for (double v : vals)
    if (!(v > 0.0)) {
      std::ostringstream msg;
      msg << what << ": non-positive eigenvalue " << v;
      throw NumericalError(msg.str());
    }
}

}  // namespace

void Scenario::validate() const {
  if (m == 0 || n == 0) throw ConfigError("scenario: M and N must be >= 1");
  if (!(alpha > 0.0)) throw ConfigError("scenario: loading factor alpha must be > 0");
  if (const auto* ula = std::get_if<UlaSpatial>(&spatial)) {
    if (!(ula->noise_power > 0.0)) throw ConfigError("scenario: noise_power must be > 0");
    if (ula->interferer_power < 0.0) throw ConfigError("scenario: interferer_power must be >= 0");
  } else {
    const auto& ex = std::get<ExplicitSpatial>(spatial);
    if (!ex.r0.square() || ex.r0.rows() != m)
      throw ConfigError("scenario: explicit R0 must be M x M");
    if (ex.s.size() != m) throw ConfigError("scenario: explicit s must have length M");
    if (std::abs(std::sqrt(linalg::norm2(ex.s)) - 1.0) > 1e-12)
      throw ConfigError("scenario: explicit s must have unit norm");
    if (!ex.r0.is_hermitian()) throw ConfigError("scenario: explicit R0 is not Hermitian");
  }
  if (const auto* ar1 = std::get_if<Ar1Temporal>(&temporal)) {
    if (!(std::abs(ar1->psi) < 1.0)) throw ConfigError("scenario: AR(1) psi must satisfy |psi| < 1");
  }
}

double CanonicalModel::u_norm2() const { return linalg::norm2(u); }

std::vector<cdouble> ula_steering(double angle_deg, std::size_t m) {
  if (m == 0) throw ConfigError("ula_steering: M must be >= 1");
  const double phase = std::numbers::pi * std::sin(angle_deg * std::numbers::pi / 180.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<cdouble> v(m);
  for (std::size_t k = 0; k < m; ++k)
    v[k] = std::polar(scale, phase * static_cast<double>(k));
  return v;
}

std::pair<ComplexMatrix, std::vector<cdouble>> build_spatial(const SpatialSpec& spec,
                                                             std::size_t m) {
  if (const auto* ula = std::get_if<UlaSpatial>(&spec)) {
    ComplexMatrix r0(m, m);
    for (std::size_t i = 0; i < m; ++i) r0(i, i) = ula->noise_power;
    for (double angle : ula->interferer_angles_deg) {
      const auto a = ula_steering(angle, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          r0(i, j) += ula->interferer_power * a[i] * std::conj(a[j]);
    }
    return {std::move(r0), ula_steering(ula->soi_angle_deg, m)};
  }
  const auto& ex = std::get<ExplicitSpatial>(spec);
  // Probe positive definiteness up front so bad input fails as a config error.
  try {
    ComplexMatrix fac = ex.r0;
    linalg::cholesky_in_place(fac.data().data(), fac.rows());
  } catch (const NumericalError& e) {
    throw ConfigError(std::string("explicit R0 is not positive definite: ") + e.what());
  }
  return {ex.r0, ex.s};
}

ComplexMatrix build_temporal(const TemporalSpec& spec, std::size_t n) {
  if (n == 0) throw ConfigError("build_temporal: N must be >= 1");
  ComplexMatrix t(n, n);
  if (std::holds_alternative<IdentityTemporal>(spec)) {
    for (std::size_t i = 0; i < n; ++i) t(i, i) = 1.0;
  } else if (std::holds_alternative<ExpToeplitzTemporal>(spec)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        t(i, j) = std::exp(-std::abs(static_cast<double>(i) - static_cast<double>(j)));
  } else {
    const double psi = std::get<Ar1Temporal>(spec).psi;
    if (!(std::abs(psi) < 1.0)) throw ConfigError("build_temporal: |psi| must be < 1");
    const double scale = 1.0 / (1.0 - psi * psi);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        t(i, j) = scale * std::pow(psi, std::abs(static_cast<double>(i) - static_cast<double>(j)));
  }
  return t;
}

CanonicalModel canonicalize(const Scenario& scenario) {
  scenario.validate();
  auto [r0, s] = build_spatial(scenario.spatial, scenario.m);

  ComplexMatrix r_beta = r0;
  if (scenario.mode == TrainingMode::unsupervised)
    for (std::size_t i = 0; i < scenario.m; ++i)
      for (std::size_t j = 0; j < scenario.m; ++j) r_beta(i, j) += s[i] * std::conj(s[j]);

  const auto spatial_eig = linalg::hermitian_eigen(r_beta);
  check_positive_eigenvalues(spatial_eig.eigenvalues, "canonicalize: R");

  const auto temporal_eig = linalg::hermitian_eigen(build_temporal(scenario.temporal, scenario.n));
  check_positive_eigenvalues(temporal_eig.eigenvalues, "canonicalize: T");

  CanonicalModel cm;
  cm.lambda = spatial_eig.eigenvalues;
  cm.t = temporal_eig.eigenvalues;
  cm.alpha = scenario.alpha;
  cm.m = scenario.m;
  cm.n = scenario.n;
  cm.c = static_cast<double>(scenario.m) / static_cast<double>(scenario.n);
  cm.mode = scenario.mode;

  // u = Lambda^{-1/2} U^H s
  const auto uh_s = spatial_eig.basis.adjoint() * std::span<const cdouble>(s);
  cm.u.resize(scenario.m);
  for (std::size_t i = 0; i < scenario.m; ++i)
    cm.u[i] = uh_s[i] / std::sqrt(cm.lambda[i]);

  const auto r0_inv_s = linalg::hpd_solve(r0, s);
  cm.snr_opt = linalg::dot(s, r0_inv_s).real();
  if (!(cm.snr_opt > 0.0)) throw NumericalError("canonicalize: snr_opt is not positive");

  // ||u||^2 must reproduce s^H R_beta^{-1} s for the selected mode.
  const double expected = scenario.mode == TrainingMode::supervised
                              ? cm.snr_opt
                              : cm.snr_opt / (1.0 + cm.snr_opt);
  if (std::abs(cm.u_norm2() - expected) > 1e-10 * (1.0 + expected))
    throw NumericalError("canonicalize: whitened signature norm check failed");
  return cm;
}

}  // namespace dlmvdr::model
