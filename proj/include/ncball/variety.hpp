#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ncball/config.hpp"
#include "ncball/freepoly.hpp"
#include "ncball/mattuple.hpp"

namespace ncball {

/// An nc variety given by an explicit list of generating polynomials.
/// Vanishing is checked on the generators only, which is exactly the zero set
/// of the two-sided ideal they generate.
class IdealSpec {
 public:
  /// Homogeneity is inferred from the generators.
  IdealSpec(std::size_t d, std::vector<FreePolynomial> generators);
  /// Same, but `claimed_homogeneous` must agree with the generators;
  /// throws InvalidArgument otherwise.
  IdealSpec(std::size_t d, std::vector<FreePolynomial> generators, bool claimed_homogeneous);

  std::size_t d() const { return d_; }
  const std::vector<FreePolynomial>& generators() const { return generators_; }
  /// Every generator is homogeneous (degrees may differ between generators).
  bool homogeneous() const { return homogeneous_; }

 private:
  std::size_t d_;
  std::vector<FreePolynomial> generators_;
  bool homogeneous_;
};

/// sum_k |a_k| ||X||^{|k|}, with ||X|| the row norm: bounds ||g(X)||.
double vanishing_scale(const FreePolynomial& g, const MatrixTuple& x);

/// max over generators of ||g(X)|| / vanishing_scale(g, X) (0 when the
/// scale is 0).
double relative_residual(const IdealSpec& spec, const MatrixTuple& x);

/// ||g(X)|| <= tol * vanishing_scale(g, X) for every generator.
bool vanishes_on(const IdealSpec& spec, const MatrixTuple& x, double tol);
bool vanishes_on(const IdealSpec& spec, const MatrixTuple& x, const Config& cfg = {});

/// For a homogeneous variety V, X lies in the similarity envelope of V iff
/// X annihilates the generators and jsr(X) < 1. Throws NonHomogeneousSpec.
bool in_envelope(const IdealSpec& spec, const MatrixTuple& x, const Config& cfg = {});

/// <z1 z2 - q z2 z1>.
IdealSpec qcomm_spec(cplx q);
/// <(z1 - z2) z2 - q z2 (z1 - z2)>.
IdealSpec wcomm_spec(cplx q);

/// Order k of q as a root of unity (q^k = 1 within tol, and no smaller
/// power is 1), or nullopt if none up to cfg.max_root_order exists.
std::optional<std::size_t> root_of_unity_order(cplx q, const Config& cfg = {});

/// The k x k pair (lambda diag(1, q, ..., q^{k-1}), S_mu) where S_mu has
/// ones on the subdiagonal and mu in the top-right corner. Every
/// non-scalar irreducible point of the q-commutation variety is similar to
/// one of these. Throws NotRootOfUnity or InvalidArgument (lambda or mu 0).
MatrixTuple qcomm_canonical_irreducible(cplx q, cplx lambda, cplx mu, const Config& cfg = {});

struct ReducibilityReport {
  cplx q;
  Index level;
  std::size_t trials;
  std::size_t irreducible_found;
  /// Largest relation residual ||XY - qYX|| / scale among the samples.
  double max_relation_residual;
  /// Order of q as a root of unity, if any.
  std::optional<std::size_t> order;
  /// Irreducible points can exist at this level: order k == level (or level 1).
  bool irreducible_expected;
};

/// Samples random points of the q-commutation zero set at level n and counts
/// the irreducible ones. Samples are built from eigenvalue chains
/// lambda, lambda q, lambda q^2, ... (the structure forced on X by the
/// relation): X = S diag(chain values) S^-1 with random S, and Y a random
/// element of the kernel of Y -> XY - qYX. Every fourth trial instead uses a
/// conjugated direct sum of canonical and scalar points.
ReducibilityReport qcomm_reducibility_probe(cplx q, Index n, std::size_t trials, std::uint64_t seed,
                                            const Config& cfg = {});

/// The coordinate change A = [[1, 1/sqrt2], [0, 1/sqrt2]]:
/// (X_1, X_2) -> (X_1 + X_2/sqrt2, X_2/sqrt2). Throws DimensionMismatch
/// unless d = 2.
MatrixTuple angle_change_map(const MatrixTuple& x);
CMatrix angle_change_matrix();

}  // namespace ncball
