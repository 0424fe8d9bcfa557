#pragma once

#include <optional>
#include <vector>

#include "ncball/config.hpp"
#include "ncball/mattuple.hpp"

namespace ncball {

/// Orthonormal (Frobenius) basis of the unital algebra generated by
/// X_1, ..., X_d, obtained by closing span{I} under left multiplication by
/// the generators. A candidate joins the basis when its component orthogonal
/// to the current span exceeds `rel_tol` (generators are normalised first).
std::vector<CMatrix> algebra_basis(const MatrixTuple& x, double rel_tol);

/// Burnside criterion: the generated algebra is all of M_n.
bool is_irreducible(const MatrixTuple& x, double rel_tol);
bool is_irreducible(const MatrixTuple& x, const Config& cfg = {});

/// Orthonormal basis (n x m, 0 < m < n) of a proper joint invariant subspace,
/// or nullopt when the tuple is irreducible. Among the candidates found, the
/// smallest is returned. Deterministic for a fixed cfg.seed.
std::optional<CMatrix> find_invariant_subspace(const MatrixTuple& x, const Config& cfg = {});

/// max_j ||(I - QQ^*) X_j Q||.
double invariance_residual(const MatrixTuple& x, const CMatrix& q);

/// S^-1 X S is block upper triangular with irreducible diagonal blocks.
/// S is unitary here, since every split uses an orthonormal basis.
struct JHDecomposition {
  CMatrix S;
  std::vector<MatrixTuple> blocks;
  std::vector<Index> block_sizes;
  /// Largest operator norm of the below-diagonal part of S^-1 X S, relative
  /// to max(1, row_norm(X)).
  double residual;
};

/// Throws DecompositionFailure if the residual exceeds cfg.jh_residual.
JHDecomposition jordan_holder(const MatrixTuple& x, const Config& cfg = {});

/// The Jordan-Holder components in discovery order.
std::vector<MatrixTuple> sigma_jh(const MatrixTuple& x, const Config& cfg = {});

/// Largest operator norm over coordinates of the part of `t` strictly below
/// the block diagonal defined by `sizes`.
double below_block_diagonal_norm(const MatrixTuple& t, const std::vector<Index>& sizes);

/// The diagonal block of `t` at rows/cols [offset, offset+size).
MatrixTuple diagonal_block(const MatrixTuple& t, Index offset, Index size);

enum class SimilarityStatus {
  Similar,
  NotSimilar,
  /// The intertwiner space is nontrivial but no invertible element was found.
  Inconclusive,
};

struct SimilarityTest {
  SimilarityStatus status;
  /// When Similar: conjugate(X, S) = Y.
  std::optional<CMatrix> S;
  std::size_t kernel_dim;
  double residual;
};

/// Solves X_j S = S Y_j for all j. For irreducible inputs the solution space
/// is at most one-dimensional, so the answer is exact up to tolerance; for
/// reducible inputs a bounded random search is made and a negative answer
/// means "no witness found".
SimilarityTest are_similar(const MatrixTuple& x, const MatrixTuple& y, const Config& cfg = {});

}  // namespace ncball
