#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "ncball/config.hpp"
#include "ncball/freepoly.hpp"
#include "ncball/mattuple.hpp"

namespace ncball {

using SparseCMatrix = Eigen::SparseMatrix<cplx>;

/// Full Fock space over C^d cut off at word length N, with the compressed
/// left creation operators L_i e_w = e_{g_i w} (zero when |w| = N).
class FockTruncation {
 public:
  /// Throws CapExceeded when the dimension sum_{k<=N} d^k exceeds
  /// cfg.fock_dim_cap.
  static FockTruncation build(std::size_t d, std::size_t cutoff, const Config& cfg = {});

  std::size_t d() const { return d_; }
  std::size_t cutoff() const { return cutoff_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  /// Basis words in canonical order; basis()[index_of(w)] == w.
  const std::vector<Word>& basis() const { return basis_; }
  std::optional<Index> index_of(const Word& w) const;
  const SparseCMatrix& creation(std::size_t i) const { return creation_[i]; }

  /// p(L) assembled directly as a sparse matrix.
  SparseCMatrix evaluate(const FreePolynomial& p) const;

 private:
  FockTruncation() = default;

  std::size_t d_ = 0;
  std::size_t cutoff_ = 0;
  std::vector<Word> basis_;
  std::vector<Index> level_offset_;
  std::vector<SparseCMatrix> creation_;
};

/// Dimension sum_{k<=N} d^k, saturating at SIZE_MAX.
std::size_t fock_dimension(std::size_t d, std::size_t cutoff);

/// ||p(L)|| on the truncation at `cutoff`: a lower approximation of the
/// multiplier norm, nondecreasing in the cutoff. Dense SVD is used for small
/// truncations and restarted Lanczos on p(L)^* p(L) otherwise.
/// Throws InvalidArgument when cutoff < deg p.
double multiplier_norm(const FreePolynomial& p, std::size_t cutoff, const Config& cfg = {});

/// sum_n ||p_n||_2 over homogeneous components: an upper bound for the
/// multiplier norm, since each homogeneous component attains its coefficient
/// norm exactly.
double multiplier_norm_upper_bound(const FreePolynomial& p);

enum class DeltaNormalization {
  /// Divide by multiplier_norm_upper_bound; every ratio is a genuine lower
  /// bound for the pseudo-hyperbolic distance.
  Certified,
  /// Divide by multiplier_norm at cutoff deg p + 2 (an under-approximation
  /// of the norm, so the ratio may overshoot).
  Truncated,
};

struct DeltaOptions {
  std::size_t degree = 1;
  std::size_t trials = 64;
  std::uint64_t seed = 0;
  DeltaNormalization normalization = DeltaNormalization::Certified;
};

struct DeltaBound {
  double value;
  /// Polynomial attaining `value`, already normalised.
  FreePolynomial witness;
  /// Tuples are ampliated to this common level.
  Index level;
};

/// Lower bound for the free pseudo-hyperbolic distance between two pure
/// tuples: max over candidate polynomials p of ||p(X) - p(Y)|| / ||p||.
/// Candidates are the linear forms sum c_j z_j (maximised over the unit
/// sphere of c), the quadratic monomials z_j z_k when degree >= 2, and
/// `trials` Gaussian polynomials for each degree 1..degree. The candidate set
/// only grows with degree and trials, so the bound is monotone in both.
/// Tuples at different levels n, m are compared as X^{⊕m} and Y^{⊕n}.
/// Throws NotPure.
DeltaBound delta_lower_bound(const MatrixTuple& x, const MatrixTuple& y, const DeltaOptions& opts,
                             const Config& cfg = {});

/// sup over unit c in C^d of ||sum_j c_j D_j||, by alternating maximisation
/// over c and the top singular pair from several starts. Returns the
/// maximiser in `best_c` when given.
double linear_form_norm(const MatrixTuple& diff, std::uint64_t seed, CVector* best_c = nullptr);

}  // namespace ncball
