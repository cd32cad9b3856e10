#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dlmvdr::linalg {

using cdouble = std::complex<double>;

// Dense complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cdouble> data() { return data_; }
  std::span<const cdouble> data() const { return data_; }

  double max_abs() const;
  double frobenius_norm() const;
  // max_ij |A_ij - conj(A_ji)|
  double hermitian_defect() const;
  bool is_hermitian(double rel_tol = 1e-12) const;
  ComplexMatrix adjoint() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cdouble> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cdouble> operator*(const ComplexMatrix& a, std::span<const cdouble> v);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

double norm2(std::span<const cdouble> v);
cdouble dot(std::span<const cdouble> a, std::span<const cdouble> b);  // conj(a).b

}  // namespace dlmvdr::linalg
