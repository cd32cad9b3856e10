#include "dlmvdr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dlmvdr/errors.hpp"

namespace dlmvdr::linalg {

namespace {

constexpr int kMaxJacobiSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition hermitian_eigen(const ComplexMatrix& input) {
  if (!input.square()) throw std::invalid_argument("hermitian_eigen: matrix is not square");
  if (input.rows() == 0) throw std::invalid_argument("hermitian_eigen: empty matrix");
  if (!input.is_hermitian()) {
    std::ostringstream msg;
    msg << "hermitian_eigen: matrix is not Hermitian (defect " << input.hermitian_defect() << ")";
    throw std::invalid_argument(msg.str());
  }

  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  const double tol = 1e-13 * scale;

  int sweep = 0;
  for (; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq <= 1e-300) continue;
        // Phase factor making the pivot real, then a real Jacobi rotation.
        const cdouble phase = a(p, q) / apq;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary block J = [[c, s], [-s*conj(phase), c*conj(phase)]] on (p, q).
        const cdouble jqp = -s * std::conj(phase);
        const cdouble jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const cdouble akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + jqp * akq;
          a(k, q) = s * akp + jqq * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^H A
          const cdouble apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = s * apk + std::conj(jqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // V <- V J
          const cdouble vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + jqp * vkq;
          v(k, q) = s * vkp + jqq * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cdouble(a(p, p).real(), 0.0);
        a(q, q) = cdouble(a(q, q).real(), 0.0);
      }
    }
  }
  if (sweep == kMaxJacobiSweeps && off_diagonal_norm(a) > tol) {
    std::ostringstream msg;
    msg << "hermitian_eigen: no convergence after " << kMaxJacobiSweeps
        << " sweeps, off-diagonal residual " << off_diagonal_norm(a);
    throw NumericalError(msg.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition dec;
  dec.eigenvalues.resize(n);
  dec.basis = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    dec.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) dec.basis(i, k) = v(i, order[k]);
  }
  return dec;
}

void cholesky_in_place(cdouble* a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j].real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(a[j * n + k]);
    if (!(d > 0.0)) {
      std::ostringstream msg;
      msg << "not positive definite: pivot " << j << " = " << d;
      throw NumericalError(msg.str());
    }
    const double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    const double inv = 1.0 / ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cdouble s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * std::conj(a[j * n + k]);
      a[i * n + j] = s * inv;
    }
  }
}

void cholesky_solve_in_place(const cdouble* chol, std::size_t n, cdouble* b) {
  for (std::size_t i = 0; i < n; ++i) {  // L y = b
    cdouble s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= chol[i * n + k] * b[k];
    b[i] = s / chol[i * n + i].real();
  }
  for (std::size_t ii = n; ii-- > 0;) {  // L^H x = y
    cdouble s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(chol[k * n + ii]) * b[k];
    b[ii] = s / chol[ii * n + ii].real();
  }
}

std::vector<cdouble> hpd_solve(const ComplexMatrix& a, std::span<const cdouble> b) {
  if (!a.square() || a.rows() != b.size())
    throw std::invalid_argument("hpd_solve: shape mismatch");
  ComplexMatrix fac = a;
  cholesky_in_place(fac.data().data(), a.rows());
  std::vector<cdouble> x(b.begin(), b.end());
  cholesky_solve_in_place(fac.data().data(), a.rows(), x.data());
  return x;
}

ComplexMatrix hpd_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.square() || a.rows() != b.rows())
    throw std::invalid_argument("hpd_solve: shape mismatch");
  const std::size_t n = a.rows();
  ComplexMatrix fac = a;
  cholesky_in_place(fac.data().data(), n);
  ComplexMatrix x(n, b.cols());
  std::vector<cdouble> col(n);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    cholesky_solve_in_place(fac.data().data(), n, col.data());
    for (std::size_t i = 0; i < n; ++i) x(i, j) = col[i];
  }
  return x;
}

double quad_form(std::span<const cdouble> v, const ComplexMatrix& a) {
  if (!a.square() || a.rows() != v.size())
    throw std::invalid_argument("quad_form: shape mismatch");
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cdouble row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += a(i, j) * v[j];
    acc += std::conj(v[i]) * row;
  }
  if (std::abs(acc.imag()) > 1e-10 * std::abs(acc) && std::abs(acc) > 0.0)
    throw NumericalError("quad_form: non-real value, matrix likely not Hermitian");
  return acc.real();
}

}  // namespace dlmvdr::linalg
