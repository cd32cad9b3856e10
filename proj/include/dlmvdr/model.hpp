#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "dlmvdr/complex_matrix.hpp"

namespace dlmvdr::model {

using linalg::cdouble;
using linalg::ComplexMatrix;

enum class TrainingMode { supervised, unsupervised };

// Uniform linear array with half-wavelength spacing: background noise plus
// point interferers, all at per-element linear powers.
struct UlaSpatial {
  double soi_angle_deg = 0.0;
  std::vector<double> interferer_angles_deg;
  double interferer_power = 0.0;
  double noise_power = 1.0;
};

struct ExplicitSpatial {
  ComplexMatrix r0;        // Hermitian positive definite
  std::vector<cdouble> s;  // unit norm
};

using SpatialSpec = std::variant<UlaSpatial, ExplicitSpatial>;

struct IdentityTemporal {};
struct ExpToeplitzTemporal {};  // T[i][j] = exp(-|i-j|)
struct Ar1Temporal {            // T[i][j] = psi^|i-j| / (1 - psi^2)
  double psi = 0.0;
};

using TemporalSpec = std::variant<IdentityTemporal, ExpToeplitzTemporal, Ar1Temporal>;

struct Scenario {
  std::size_t m = 0;
  std::size_t n = 0;
  double alpha = 0.0;  // diagonal loading, must be > 0
  TrainingMode mode = TrainingMode::supervised;
  SpatialSpec spatial;
  TemporalSpec temporal;

  void validate() const;  // throws ConfigError
};

// Diagonal form the asymptotic theory works in: eigenvalues of the
// mode-dependent spatial covariance and of the temporal covariance, plus the
// whitened signature expressed in the spatial eigenbasis.
struct CanonicalModel {
  std::vector<double> lambda;  // eigenvalues of R_beta (R0 supervised, ss*+R0 unsupervised)
  std::vector<double> t;       // eigenvalues of T
  std::vector<cdouble> u;      // Lambda^{-1/2} U^H s
  double alpha = 0.0;
  std::size_t m = 0;
  std::size_t n = 0;
  double c = 0.0;        // M/N
  double snr_opt = 0.0;  // s^H R0^{-1} s, independent of mode
  TrainingMode mode = TrainingMode::supervised;

  double u_norm2() const;
};

std::vector<cdouble> ula_steering(double angle_deg, std::size_t m);

std::pair<ComplexMatrix, std::vector<cdouble>> build_spatial(const SpatialSpec& spec,
                                                             std::size_t m);

ComplexMatrix build_temporal(const TemporalSpec& spec, std::size_t n);

CanonicalModel canonicalize(const Scenario& scenario);

}  // namespace dlmvdr::model
