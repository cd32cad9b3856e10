#pragma once

#include <span>
#include <vector>

#include "dlmvdr/complex_matrix.hpp"

namespace dlmvdr::linalg {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix basis;              // unitary; column k pairs with eigenvalues[k]
};

// Diagonalizes a Hermitian matrix with cyclic Jacobi rotations.
// Rejects non-square or non-Hermitian input; throws NumericalError with the
// remaining off-diagonal residual if the sweep cap is hit.
EigenDecomposition hermitian_eigen(const ComplexMatrix& a);

// In-place lower Cholesky factor (A = L L^H) of a Hermitian positive definite
// matrix stored row-major. Only the lower triangle of `a` is referenced and
// overwritten. Throws NumericalError naming the pivot index on failure.
void cholesky_in_place(cdouble* a, std::size_t n);

// Solves L L^H x = b in place given the factor from cholesky_in_place.
void cholesky_solve_in_place(const cdouble* chol, std::size_t n, cdouble* b);

// Solves A X = B for Hermitian positive definite A.
ComplexMatrix hpd_solve(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cdouble> hpd_solve(const ComplexMatrix& a, std::span<const cdouble> b);

// Real value of v^H A v for Hermitian A; the imaginary residue of the
// accumulation must vanish relative to the result.
double quad_form(std::span<const cdouble> v, const ComplexMatrix& a);

}  // namespace dlmvdr::linalg
