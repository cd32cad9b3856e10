#include "dlmvdr/complex_matrix.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dlmvdr::linalg {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermitian_defect() const {
  if (!square()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
  if (!square()) return false;
  return hermitian_defect() <= rel_tol * std::max(max_abs(), 1e-300);
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cdouble aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

std::vector<cdouble> operator*(const ComplexMatrix& a, std::span<const cdouble> v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  std::vector<cdouble> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cdouble s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference: shape mismatch");
  ComplexMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

double norm2(std::span<const cdouble> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

cdouble dot(std::span<const cdouble> a, std::span<const cdouble> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  cdouble s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace dlmvdr::linalg
