#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace ncball {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

namespace linalg {

/// Kronecker product; (A kron B)(i*p+k, j*q+l) = A(i,j) B(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Row-stacking vectorisation: T(i,j) lands at position i*cols+j, so the
/// standard basis E11, E12, ..., Enn maps to e_0, e_1, ....
CVector vec_rows(const CMatrix& t);
CMatrix unvec_rows(const CVector& v, Index rows, Index cols);

/// Largest singular value. Zero for empty matrices.
double op_norm(const CMatrix& m);

/// Largest eigenvalue of a Hermitian matrix (only the lower triangle is read).
double hermitian_max_eigenvalue(const CMatrix& h);
double hermitian_min_eigenvalue(const CMatrix& h);

/// Eigenvalues of a general complex square matrix.
CVector eigenvalues(const CMatrix& m);
double spectral_radius(const CMatrix& m);

/// sigma_max / sigma_min; +inf for singular input.
double condition_number(const CMatrix& s);

/// Principal square root of a Hermitian positive semidefinite matrix.
CMatrix psd_sqrt(const CMatrix& a);

/// Orthonormal basis of the column space. Singular values at or below
/// rel_tol * sigma_max are treated as zero.
CMatrix column_space(const CMatrix& cols, double rel_tol);

/// Orthonormal basis of the kernel of `k`. A singular value counts as zero
/// when it is at most rel_tol * max(sigma_max, scale).
CMatrix null_space(const CMatrix& k, double rel_tol, double scale = 0.0);

/// Matrix with i.i.d. standard complex Gaussian entries.
CMatrix random_gaussian(Index rows, Index cols, std::mt19937_64& rng);

/// Runs body(0..count-1) on a small thread pool. Each index is processed
/// exactly once; callers write into disjoint slots to stay deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace linalg
}  // namespace ncball
