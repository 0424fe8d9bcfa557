#include "ncball/structure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ncball/errors.hpp"

namespace ncball {

namespace {

/// Incrementally grown orthonormal basis of a subspace of C^N.
class OrthoSpan {
 public:
  explicit OrthoSpan(Index dim) : q_(dim, dim) {}

  Index rank() const { return rank_; }
  Index dim() const { return q_.rows(); }
  auto basis() const { return q_.leftCols(rank_); }

  /// Adds v if its component orthogonal to the span exceeds `threshold`.
  /// Returns the index of the new basis vector or -1.
  Index add(CVector v, double threshold) {
    if (rank_ == dim()) return -1;
    // Two Gram-Schmidt passes keep the basis orthonormal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      if (rank_ == 0) break;
      const CVector coeffs = q_.leftCols(rank_).adjoint() * v;
      v.noalias() -= q_.leftCols(rank_) * coeffs;
    }
    const double r = v.norm();
    if (!(r > threshold)) return -1;
    q_.col(rank_) = v / r;
    return rank_++;
  }

 private:
  CMatrix q_;
  Index rank_ = 0;
};

std::vector<CMatrix> normalized_generators(const MatrixTuple& x) {
  std::vector<CMatrix> gens;
  for (const auto& m : x.matrices()) {
    const double s = m.norm();
    if (s > 0.0) gens.push_back(m / s);
  }
  return gens;
}

}  // namespace

std::vector<CMatrix> algebra_basis(const MatrixTuple& x, double rel_tol) {
  const Index n = x.n();
  const auto gens = normalized_generators(x);
  OrthoSpan span(n * n);
  std::vector<Index> frontier;
  const Index first = span.add(linalg::vec_rows(CMatrix::Identity(n, n)), 0.0);
  frontier.push_back(first);
  while (!frontier.empty() && span.rank() < n * n) {
    std::vector<Index> next;
    for (Index idx : frontier) {
      const CMatrix b = linalg::unvec_rows(span.basis().col(idx), n, n);
      for (const auto& g : gens) {
        const Index added = span.add(linalg::vec_rows(g * b), rel_tol);
        if (added >= 0) next.push_back(added);
        if (span.rank() == n * n) break;
      }
      if (span.rank() == n * n) break;
    }
    frontier = std::move(next);
  }
  std::vector<CMatrix> out;
  for (Index k = 0; k < span.rank(); ++k) out.push_back(linalg::unvec_rows(span.basis().col(k), n, n));
  return out;
}

bool is_irreducible(const MatrixTuple& x, double rel_tol) {
  const Index n = x.n();
  if (n == 1) return true;
  return static_cast<Index>(algebra_basis(x, rel_tol).size()) == n * n;
}

bool is_irreducible(const MatrixTuple& x, const Config& cfg) { return is_irreducible(x, cfg.rank_tol); }

double invariance_residual(const MatrixTuple& x, const CMatrix& q) {
  double worst = 0.0;
  for (const auto& m : x.matrices()) {
    const CMatrix xq = m * q;
    worst = std::max(worst, linalg::op_norm(xq - q * (q.adjoint() * xq)));
  }
  return worst;
}

namespace {

// Rank thresholds tried for the cyclic span of an eigenvector, tightest first.
constexpr double kCyclicThresholds[] = {1e-10, 1e-8};
constexpr int kRandomElements = 4;
// Accepted invariance residual, relative to max(1, row norm).
constexpr double kInvarianceTol = 1e-9;

struct Candidate {
  CMatrix q;
  double residual;
};

/// Invariant subspaces of the form A v, with v an eigenvector of a random
/// element of A. When `dual` is set the generated algebra is that of the
/// adjoint tuple and the orthogonal complement is reported.
void collect_cyclic_candidates(const MatrixTuple& x, const std::vector<CMatrix>& basis, bool dual,
                               std::mt19937_64& rng, double scale, std::vector<Candidate>& out) {
  const Index n = x.n();
  const Index r = static_cast<Index>(basis.size());
  for (int trial = 0; trial < kRandomElements; ++trial) {
    const CMatrix c = linalg::random_gaussian(r, 1, rng);
    CMatrix a = CMatrix::Zero(n, n);
    for (Index i = 0; i < r; ++i) a += c(i, 0) * basis[static_cast<std::size_t>(i)];
    Eigen::ComplexEigenSolver<CMatrix> es(a);
    for (Index e = 0; e < n; ++e) {
      const CVector v = es.eigenvectors().col(e);
      CMatrix k(n, r);
      for (Index i = 0; i < r; ++i) k.col(i) = basis[static_cast<std::size_t>(i)] * v;
      for (double thr : kCyclicThresholds) {
        CMatrix q = linalg::column_space(k, thr);
        if (q.cols() == 0 || q.cols() == n) continue;
        if (dual) {
          // Complement of an invariant subspace of the adjoint algebra.
          Eigen::HouseholderQR<CMatrix> qr(q);
          const CMatrix full = qr.householderQ() * CMatrix::Identity(n, n);
          q = full.rightCols(n - q.cols());
        }
        const double res = invariance_residual(x, q);
        if (res <= kInvarianceTol * scale) {
          out.push_back({std::move(q), res});
          break;
        }
      }
    }
  }
}

}  // namespace

std::optional<CMatrix> find_invariant_subspace(const MatrixTuple& x, const Config& cfg) {
  const Index n = x.n();
  if (n == 1) return std::nullopt;
  const auto basis = algebra_basis(x, cfg.rank_tol);
  if (static_cast<Index>(basis.size()) == n * n) return std::nullopt;

  std::mt19937_64 rng(cfg.seed);
  const double scale = std::max(1.0, row_norm(x));
  std::vector<Candidate> found;
  collect_cyclic_candidates(x, basis, false, rng, scale, found);
  if (found.empty()) {
    std::vector<CMatrix> dual_basis;
    for (const auto& b : basis) dual_basis.push_back(b.adjoint());
    collect_cyclic_candidates(x, dual_basis, true, rng, scale, found);
  }
  if (found.empty())
    throw DecompositionFailure("algebra has dimension " + std::to_string(basis.size()) + " < " +
                               std::to_string(n * n) +
                               " but no invariant subspace could be certified");
  const auto best = std::min_element(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.q.cols() != b.q.cols()) return a.q.cols() < b.q.cols();
    return a.residual < b.residual;
  });
  return best->q;
}

MatrixTuple diagonal_block(const MatrixTuple& t, Index offset, Index size) {
  std::vector<CMatrix> out;
  for (const auto& m : t.matrices()) out.push_back(m.block(offset, offset, size, size));
  return MatrixTuple(std::move(out));
}

double below_block_diagonal_norm(const MatrixTuple& t, const std::vector<Index>& sizes) {
  double worst = 0.0;
  for (const auto& m : t.matrices()) {
    CMatrix lower = CMatrix::Zero(m.rows(), m.cols());
    Index offset = 0;
    for (Index s : sizes) {
      const Index below = m.rows() - offset - s;
      if (below > 0) lower.block(offset + s, offset, below, s) = m.block(offset + s, offset, below, s);
      offset += s;
    }
    worst = std::max(worst, linalg::op_norm(lower));
  }
  return worst;
}

namespace {

/// Returns a unitary U with U^* X U block upper triangular and the sizes of
/// its irreducible diagonal blocks.
CMatrix split_recursive(const MatrixTuple& x, const Config& cfg, std::vector<Index>& sizes) {
  const Index n = x.n();
  auto q = find_invariant_subspace(x, cfg);
  if (!q) {
    sizes.push_back(n);
    return CMatrix::Identity(n, n);
  }
  const Index m = q->cols();
  Eigen::HouseholderQR<CMatrix> qr(*q);
  CMatrix u = qr.householderQ() * CMatrix::Identity(n, n);
  // The first m columns span the same space as q; keep q itself for them.
  u.leftCols(m) = *q;
  // Re-orthonormalise the complement against q.
  for (Index j = m; j < n; ++j) {
    CVector v = u.col(j);
    for (int pass = 0; pass < 2; ++pass) v -= u.leftCols(j) * (u.leftCols(j).adjoint() * v);
    u.col(j) = v.normalized();
  }

  std::vector<CMatrix> top, bottom;
  for (const auto& mat : x.matrices()) {
    const CMatrix t = u.adjoint() * mat * u;
    top.push_back(t.topLeftCorner(m, m));
    bottom.push_back(t.bottomRightCorner(n - m, n - m));
  }
  const CMatrix s_top = split_recursive(MatrixTuple(std::move(top)), cfg, sizes);
  const CMatrix s_bottom = split_recursive(MatrixTuple(std::move(bottom)), cfg, sizes);
  CMatrix inner = CMatrix::Zero(n, n);
  inner.topLeftCorner(m, m) = s_top;
  inner.bottomRightCorner(n - m, n - m) = s_bottom;
  return u * inner;
}

}  // namespace

JHDecomposition jordan_holder(const MatrixTuple& x, const Config& cfg) {
  std::vector<Index> sizes;
  const CMatrix s = split_recursive(x, cfg, sizes);
  std::vector<CMatrix> conj;
  for (const auto& m : x.matrices()) conj.push_back(s.adjoint() * m * s);
  const MatrixTuple t(std::move(conj));

  std::vector<MatrixTuple> blocks;
  Index offset = 0;
  for (Index sz : sizes) {
    blocks.push_back(diagonal_block(t, offset, sz));
    offset += sz;
  }
  const double residual = below_block_diagonal_norm(t, sizes) / std::max(1.0, row_norm(x));
  if (residual > cfg.jh_residual)
    throw DecompositionFailure("block triangular residual " + std::to_string(residual) +
                               " exceeds " + std::to_string(cfg.jh_residual));
  return JHDecomposition{s, std::move(blocks), std::move(sizes), residual};
}

std::vector<MatrixTuple> sigma_jh(const MatrixTuple& x, const Config& cfg) {
  return jordan_holder(x, cfg).blocks;
}

namespace {

constexpr int kSimilaritySearchAttempts = 32;
constexpr double kSimilarityResidualTol = 1e-8;

}  // namespace

SimilarityTest are_similar(const MatrixTuple& x, const MatrixTuple& y, const Config& cfg) {
  if (x.d() != y.d() || x.n() != y.n())
    throw DimensionMismatch("similarity test needs tuples of equal shape");
  const Index n = x.n();
  const Index nn = n * n;
  const CMatrix id = CMatrix::Identity(n, n);
  // Row-stacked vec: vec(X S) = (X kron I) vec(S), vec(S Y) = (I kron Y^T) vec(S).
  CMatrix k(static_cast<Index>(x.d()) * nn, nn);
  for (std::size_t j = 0; j < x.d(); ++j)
    k.middleRows(static_cast<Index>(j) * nn, nn) =
        linalg::kron(x[j], id) - linalg::kron(id, y[j].transpose());
  const double scale = std::max(row_norm(x), row_norm(y));
  const CMatrix kernel = linalg::null_space(k, cfg.rank_tol, scale);
  SimilarityTest result{SimilarityStatus::NotSimilar, std::nullopt,
                        static_cast<std::size_t>(kernel.cols()), 0.0};
  if (kernel.cols() == 0) return result;

  auto check = [&](const CVector& v) -> std::optional<std::pair<CMatrix, double>> {
    const CMatrix s = linalg::unvec_rows(v, n, n);
    const double cond = linalg::condition_number(s);
    if (!(cond <= cfg.cond_cap)) return std::nullopt;
    const MatrixTuple conj = conjugate(x, s, cfg);
    const double res = max_distance(conj, y) / std::max(1.0, scale);
    if (res > kSimilarityResidualTol * cond) return std::nullopt;
    return std::make_pair(s, res);
  };

  std::optional<std::pair<CMatrix, double>> hit;
  if (kernel.cols() == 1) {
    hit = check(kernel.col(0));
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (int attempt = 0; attempt < kSimilaritySearchAttempts && !hit; ++attempt)
      hit = check(kernel * linalg::random_gaussian(kernel.cols(), 1, rng));
  }
  if (hit) {
    result.status = SimilarityStatus::Similar;
    result.S = hit->first;
    result.residual = hit->second;
  } else if (kernel.cols() > 1) {
    result.status = SimilarityStatus::Inconclusive;
  }
  return result;
}

}  // namespace ncball
