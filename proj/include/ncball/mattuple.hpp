#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ncball/config.hpp"
#include "ncball/linalg.hpp"

namespace ncball {

/// A d-tuple of n x n complex matrices, X = (X_1, ..., X_d) in M_n^d.
class MatrixTuple {
 public:
  /// Throws InvalidArgument unless d >= 1 and all matrices are n x n, n >= 1.
  explicit MatrixTuple(std::vector<CMatrix> matrices);

  static MatrixTuple zero(std::size_t d, Index n);
  /// Level-1 point (x_1, ..., x_d).
  static MatrixTuple scalar(std::span<const cplx> point);

  std::size_t d() const noexcept { return matrices_.size(); }
  Index n() const noexcept { return matrices_.front().rows(); }
  const CMatrix& operator[](std::size_t j) const { return matrices_[j]; }
  std::span<const CMatrix> matrices() const noexcept { return matrices_; }

  MatrixTuple operator*(cplx c) const;
  friend MatrixTuple operator*(cplx c, const MatrixTuple& x) { return x * c; }
  MatrixTuple operator+(const MatrixTuple& rhs) const;
  MatrixTuple operator-(const MatrixTuple& rhs) const;

  bool operator==(const MatrixTuple& rhs) const;

 private:
  std::vector<CMatrix> matrices_;
};

/// Largest operator-norm difference over the coordinates.
double max_distance(const MatrixTuple& x, const MatrixTuple& y);

/// sum_j X_j X_j^*.
CMatrix row_gram(const MatrixTuple& x);

/// ||sum_j X_j X_j^*||^{1/2}, the norm of the row [X_1 ... X_d].
double row_norm(const MatrixTuple& x);

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);
/// X ⊕ ... ⊕ X (m copies).
MatrixTuple direct_sum_power(const MatrixTuple& x, std::size_t m);

struct Conjugation {
  MatrixTuple tuple;
  double condition;
  /// Condition number exceeded Config::cond_cap.
  bool flagged;
};

/// (S^-1 X_1 S, ..., S^-1 X_d S). Throws SingularMatrix if S is not
/// numerically invertible; ill-conditioned S is flagged instead.
Conjugation conjugate_checked(const MatrixTuple& x, const CMatrix& s, const Config& cfg = {});
MatrixTuple conjugate(const MatrixTuple& x, const CMatrix& s, const Config& cfg = {});

/// The tuple X^(k) of all d^k products X^w, |w| = k, in canonical word order.
/// Throws CapExceeded when d^k > cfg.amplification_cap.
MatrixTuple amplification(const MatrixTuple& x, std::size_t k, const Config& cfg = {});

/// Matrix of the completely positive map Psi_X(T) = sum_j X_j T X_j^*,
/// acting on row-stacked vectors: mat = sum_j X_j kron conj(X_j).
struct CPMatrix {
  Index n;
  CMatrix mat;
};

CPMatrix cp_matrix(const MatrixTuple& x);

/// Psi_X(T) computed directly.
CMatrix apply_cp(const MatrixTuple& x, const CMatrix& t);

/// ||sum_j X_j X_j^* - I|| <= tol.
bool is_coisometry(const MatrixTuple& x, double tol);

/// Linear change of coordinates: Y_i = sum_j a(i,j) X_j. `a` is e x d.
MatrixTuple linear_change(const CMatrix& a, const MatrixTuple& x);

}  // namespace ncball
