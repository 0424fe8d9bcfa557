#pragma once

#include <optional>
#include <vector>

#include "ncball/config.hpp"
#include "ncball/mattuple.hpp"

namespace ncball {

/// Joint spectral radius: the square root of the spectral radius of the
/// n^2 x n^2 matrix of Psi_X.
double jsr(const MatrixTuple& x);

/// ||Psi_X^k(I)||^{1/2k} for k = 1..k_max, by repeated application of Psi_X.
/// The iterate is renormalised every step, so the sequence neither overflows
/// nor underflows; an exact zero iterate makes the remaining entries 0.
std::vector<double> jsr_iterative(const MatrixTuple& x, std::size_t k_max);

/// Position of jsr(X) relative to 1, with the boundary band cfg.boundary_tol.
enum class Region { Interior, Boundary, Exterior };
Region classify(double radius, const Config& cfg = {});
const char* to_string(Region r);

/// jsr(X) < 1 - boundary_tol, i.e. Psi_X^k(I) -> 0.
bool is_pure(const MatrixTuple& x, const Config& cfg = {});
/// Membership in the similarity envelope of the open row ball; same test.
bool in_ball_envelope(const MatrixTuple& x, const Config& cfg = {});

enum class CertificateKind { StrictContraction, Coisometry, MinimalNorm };
const char* to_string(CertificateKind k);

struct SimilarityCertificate {
  CMatrix S;
  /// S^-1 X S.
  MatrixTuple target;
  CertificateKind kind;
  /// max_j ||X_j S - S target_j|| / (||S|| max(1, row_norm X)).
  double residual;
  /// Condition number of S.
  double condition;
};

/// Positive definite A with Psi_X(A) = jsr(X)^2 A, normalised to ||A|| = 1.
/// Throws PerronFailure when the top eigenvalue is degenerate or the
/// eigenvector does not give a positive definite matrix.
CMatrix perron_matrix(const MatrixTuple& x);

/// S with row_norm(S^-1 X S) = jsr(X) for irreducible X (S = A^{1/2}).
/// Throws NotIrreducible.
SimilarityCertificate minimal_norm_similarity(const MatrixTuple& x, const Config& cfg = {});

/// Similarity onto a strict row contraction. Irreducible tuples use the
/// Perron similarity; reducible ones are block triangularised, each diagonal
/// block is Perron-normalised, and the coupling is scaled away with
/// diag(I, tI, t^2 I, ...) for t = 1, 1/2, 1/4, ....
/// Throws NotPure when jsr(X) >= 1 - boundary_tol.
SimilarityCertificate similarize_to_strict_contraction(const MatrixTuple& x, const Config& cfg = {});

/// Similarity onto a row coisometry (sum T_j T_j^* = I).
/// Throws NotIrreducible or NotUnitRadius.
SimilarityCertificate similarize_to_coisometry(const MatrixTuple& x, const Config& cfg = {});

/// Polynomial disc curve z -> sum_m z^m B_m into d-tuples of a fixed level.
class DiscCurve {
 public:
  explicit DiscCurve(std::vector<MatrixTuple> coefficients);
  MatrixTuple at(cplx z) const;
  const std::vector<MatrixTuple>& coefficients() const { return coefficients_; }
  bool vanishes_at_origin() const;

 private:
  std::vector<MatrixTuple> coefficients_;
};

struct MaxPrincipleReport {
  double radius;
  std::size_t samples;
  /// jsr(f(0)).
  double center;
  /// max jsr(f(z)) over the sampled circle |z| = radius.
  double boundary_max;
  /// max jsr(f(z)) over the sampled unit circle.
  double unit_circle_max;
  /// max jsr(f(z)) / |z| on |z| = radius, only when f(0) = 0.
  std::optional<double> schwarz_ratio;
  bool subharmonic_violation;
  bool schwarz_violation;
  bool violation() const { return subharmonic_violation || schwarz_violation; }
};

/// Sampled checks of the maximum principle for jsr along a disc curve and, if
/// f(0) = 0 and the sampled unit circle lies inside the envelope, of the
/// Schwarz bound jsr(f(z)) <= |z|. Requires 0 < radius < 1.
MaxPrincipleReport max_principle_probe(const DiscCurve& curve, double radius, std::size_t samples,
                                       const Config& cfg = {});

}  // namespace ncball
