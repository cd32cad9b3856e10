#include "dlmvdr/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dlmvdr/errors.hpp"
#include "dlmvdr/linalg.hpp"

namespace dlmvdr::montecarlo {

using linalg::cdouble;

namespace {

struct Workspace {
  std::vector<cdouble> x;    // M x N data matrix
  std::vector<cdouble> w;    // rows of x scaled by t_j / N
  std::vector<cdouble> h;    // M x M loaded Gram matrix (lower triangle used)
  std::vector<cdouble> z;    // solve buffer
  std::vector<double> tn;    // t_j / N
  std::vector<double> load;  // alpha / lambda_i

  explicit Workspace(const model::CanonicalModel& cm)
      : x(cm.m * cm.n), w(cm.m * cm.n), h(cm.m * cm.m), z(cm.m), tn(cm.n), load(cm.m) {
    for (std::size_t j = 0; j < cm.n; ++j) tn[j] = cm.t[j] / static_cast<double>(cm.n);
    for (std::size_t i = 0; i < cm.m; ++i) load[i] = cm.alpha / cm.lambda[i];
  }
};

// Factors the loaded covariance built from ws.x in the canonical basis and
// reads off a = u^H Q u, b = ||Q u||^2 with a single solve.
std::pair<double, double> ab_from_workspace(const model::CanonicalModel& cm, Workspace& ws) {
  const std::size_t m = cm.m, n = cm.n;
  for (std::size_t i = 0; i < m; ++i) {
    const cdouble* xi = ws.x.data() + i * n;
    cdouble* wi = ws.w.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) wi[j] = xi[j] * ws.tn[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    const cdouble* wi = ws.w.data() + i * n;
    for (std::size_t k = 0; k <= i; ++k) {
      const cdouble* xk = ws.x.data() + k * n;
      cdouble s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += wi[j] * std::conj(xk[j]);
      ws.h[i * m + k] = s;
    }
    ws.h[i * m + i] += ws.load[i];
  }

  linalg::cholesky_in_place(ws.h.data(), m);
  std::copy(cm.u.begin(), cm.u.end(), ws.z.begin());
  linalg::cholesky_solve_in_place(ws.h.data(), m, ws.z.data());

  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    a += (std::conj(cm.u[i]) * ws.z[i]).real();
    b += std::norm(ws.z[i]);
  }
  return {a, b};
}

void check_sample_invariants(double a, double b, const model::CanonicalModel& cm) {
  if (!(a > 0.0 && b > 0.0)) throw NumericalError("realized (a, b) not positive");
  if (!(b - a * a > 0.0)) throw NumericalError("realized b - a^2 not positive");
  const double a_cap =
      cm.u_norm2() * (*std::max_element(cm.lambda.begin(), cm.lambda.end())) / cm.alpha;
  if (a > a_cap * (1.0 + 1e-9)) throw NumericalError("realized a exceeds resolvent bound");
}

void run_replication(const McConfig& cfg, std::size_t r, Workspace& ws, McSamples& out) {
  CounterRng rng(cfg.seed, r);
  sample_gaussian_matrix(rng, cfg.canonical.m, cfg.canonical.n, ws.x);
  const auto [a, b] = ab_from_workspace(cfg.canonical, ws);
  check_sample_invariants(a, b, cfg.canonical);
  out.a[r] = a;
  out.b[r] = b;
  out.snr[r] = realized_snr(a, b, cfg.canonical.mode);
  if (cfg.with_mse) out.mse[r] = realized_mse(a, b);
}

McSamples prepare_output(const McConfig& cfg) {
  if (cfg.reps == 0) throw std::invalid_argument("run_experiment: reps must be >= 1");
  if (cfg.canonical.m == 0 || cfg.canonical.u.size() != cfg.canonical.m ||
      cfg.canonical.lambda.size() != cfg.canonical.m || cfg.canonical.t.size() != cfg.canonical.n)
    throw std::invalid_argument("run_experiment: inconsistent canonical model");
  McSamples out;
  out.a.resize(cfg.reps);
  out.b.resize(cfg.reps);
  out.snr.resize(cfg.reps);
  if (cfg.with_mse) out.mse.resize(cfg.reps);
  out.seed = cfg.seed;
  out.reps = cfg.reps;
  return out;
}

[[noreturn]] void throw_aggregated(std::vector<std::pair<std::size_t, std::string>> errs) {
  std::sort(errs.begin(), errs.end());
  std::ostringstream msg;
  msg << errs.size() << " replication(s) failed;";
  const std::size_t shown = std::min<std::size_t>(errs.size(), 3);
  for (std::size_t i = 0; i < shown; ++i)
    msg << " [rep " << errs[i].first << "] " << errs[i].second << ";";
  if (errs.size() > shown) msg << " ...";
  throw NumericalError(msg.str());
}

}  // namespace

void sample_gaussian_matrix(CounterRng& rng, std::size_t m, std::size_t n,
                            std::span<cdouble> out) {
  if (out.size() != m * n) throw std::invalid_argument("sample_gaussian_matrix: bad buffer size");
  for (std::size_t i = 0; i < m * n; ++i) out[i] = rng.next_cgauss();
}

std::pair<double, double> realized_ab(std::span<const cdouble> x,
                                      const model::CanonicalModel& canonical) {
  if (x.size() != canonical.m * canonical.n)
    throw std::invalid_argument("realized_ab: data matrix has wrong shape");
  Workspace ws(canonical);
  std::copy(x.begin(), x.end(), ws.x.begin());
  return ab_from_workspace(canonical, ws);
}

double realized_snr(double a, double b, model::TrainingMode mode) {
  if (!(a > 0.0)) throw NumericalError("realized_snr: a must be positive");
  if (!(b > a * a)) throw NumericalError("realized_snr: b <= a^2");
  if (mode == model::TrainingMode::supervised) return a * a / b;
  return 1.0 / (b / (a * a) - 1.0);
}

double realized_mse(double a, double b) { return 1.0 - 2.0 * a + b; }

McSamples run_experiment_reference(const McConfig& cfg) {
  McSamples out = prepare_output(cfg);
  Workspace ws(cfg.canonical);
  for (std::size_t r = 0; r < cfg.reps; ++r) run_replication(cfg, r, ws, out);
  return out;
}

McSamples run_experiment(const McConfig& cfg) {
  McSamples out = prepare_output(cfg);
#ifdef _OPENMP
  const int threads = cfg.workers > 0 ? static_cast<int>(cfg.workers) : omp_get_max_threads();
  std::vector<std::pair<std::size_t, std::string>> errors;
#pragma omp parallel num_threads(threads)
  {
    Workspace ws(cfg.canonical);
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(cfg.reps); ++r) {
      try {
        run_replication(cfg, static_cast<std::size_t>(r), ws, out);
      } catch (const std::exception& e) {
#pragma omp critical
        errors.emplace_back(static_cast<std::size_t>(r), e.what());
      }
    }
  }
  if (!errors.empty()) throw_aggregated(std::move(errors));
  return out;
#else
  (void)throw_aggregated;
  return run_experiment_reference(cfg);
#endif
}

std::vector<double> beta_oracle_run(std::size_t m, std::size_t n,
                                    const linalg::ComplexMatrix& r0,
                                    std::span<const cdouble> s, std::size_t reps,
                                    std::uint64_t seed) {
  if (m < 2) throw ConfigError("beta_oracle_run: M must be >= 2");
  if (n < m + 1) throw ConfigError("beta_oracle_run: requires N >= M + 1");
  if (reps == 0) throw ConfigError("beta_oracle_run: reps must be >= 1");
  if (!r0.square() || r0.rows() != m || s.size() != m)
    throw ConfigError("beta_oracle_run: shape mismatch");
  if (!r0.is_hermitian()) throw ConfigError("beta_oracle_run: R0 is not Hermitian");

  const auto eig = linalg::hermitian_eigen(r0);
  for (double lam : eig.eigenvalues)
    if (!(lam > 0.0)) throw ConfigError("beta_oracle_run: R0 is not positive definite");
  const auto uh_s = eig.basis.adjoint() * s;
  std::vector<cdouble> u(m);
  for (std::size_t i = 0; i < m; ++i) u[i] = uh_s[i] / std::sqrt(eig.eigenvalues[i]);
  const double snr_opt = linalg::norm2(u);

  std::vector<double> samples(reps);
  std::vector<std::pair<std::size_t, std::string>> errors;
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<cdouble> x(m * n), h(m * m), z(m);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t rr = 0; rr < static_cast<std::int64_t>(reps); ++rr) {
      const auto r = static_cast<std::size_t>(rr);
      try {
        CounterRng rng(seed, r);
        sample_gaussian_matrix(rng, m, n, x);
        for (std::size_t i = 0; i < m; ++i) {
          const cdouble* xi = x.data() + i * n;
          for (std::size_t k = 0; k <= i; ++k) {
            const cdouble* xk = x.data() + k * n;
            cdouble acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += xi[j] * std::conj(xk[j]);
            h[i * m + k] = acc / static_cast<double>(n);
          }
        }
        try {
          linalg::cholesky_in_place(h.data(), m);
        } catch (const NumericalError&) {
          throw NumericalError("singular sample covariance");
        }
        std::copy(u.begin(), u.end(), z.begin());
        linalg::cholesky_solve_in_place(h.data(), m, z.data());
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          a += (std::conj(u[i]) * z[i]).real();
          b += std::norm(z[i]);
        }
        const double value = a * a / (b * snr_opt);
        if (!(value > 0.0 && value < 1.0))
          throw NumericalError("normalized SNR left (0,1)");
        samples[r] = value;
      } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
        errors.emplace_back(r, e.what());
      }
    }
  }
  if (!errors.empty()) throw_aggregated(std::move(errors));
  return samples;
}

void write_samples_csv(std::ostream& os, const McSamples& samples) {
  const bool with_mse = !samples.mse.empty();
  os << (with_mse ? "rep,a,b,snr,mse\n" : "rep,a,b,snr\n");
  char line[200];
  for (std::size_t r = 0; r < samples.reps; ++r) {
    if (with_mse)
      std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g,%.17g\n", r, samples.a[r],
                    samples.b[r], samples.snr[r], samples.mse[r]);
    else
      std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g\n", r, samples.a[r],
                    samples.b[r], samples.snr[r]);
    os << line;
  }
}

}  // namespace dlmvdr::montecarlo
