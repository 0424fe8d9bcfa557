#include "ncball/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ncball/errors.hpp"
#include "ncball/spectral.hpp"

namespace ncball {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

// Position of w among the words of its length (letters read as base-d digits).
Index word_rank(const Word& w, std::size_t d) {
  Index r = 0;
  for (auto letter : w.letters()) r = r * static_cast<Index>(d) + static_cast<Index>(letter);
  return r;
}

}  // namespace

std::size_t fock_dimension(std::size_t d, std::size_t cutoff) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0, level = 1;
  for (std::size_t k = 0; k <= cutoff; ++k) {
    if (total > kMax - level) return kMax;
    total += level;
    if (k < cutoff && level > kMax / std::max<std::size_t>(d, 1)) return kMax;
    level *= d;
  }
  return total;
}

FockTruncation FockTruncation::build(std::size_t d, std::size_t cutoff, const Config& cfg) {
  if (d == 0) throw InvalidArgument("Fock space needs d >= 1");
  const std::size_t dim = fock_dimension(d, cutoff);
  if (dim > cfg.fock_dim_cap)
    throw CapExceeded("Fock truncation (d=" + std::to_string(d) + ", N=" + std::to_string(cutoff) +
                      ") has dimension above the cap " + std::to_string(cfg.fock_dim_cap));
  FockTruncation f;
  f.d_ = d;
  f.cutoff_ = cutoff;
  f.basis_.reserve(dim);
  for (std::size_t k = 0; k <= cutoff; ++k) {
    f.level_offset_.push_back(static_cast<Index>(f.basis_.size()));
    auto words = words_of_length(d, k);
    std::move(words.begin(), words.end(), std::back_inserter(f.basis_));
  }
  const Index n = f.dim();
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::size_t len = 0; len < cutoff; ++len) {
      const Index count = static_cast<Index>(ipow(d, len));
      for (Index r = 0; r < count; ++r)
        trip.emplace_back(f.level_offset_[len + 1] + static_cast<Index>(i) * count + r,
                          f.level_offset_[len] + r, 1.0);
    }
    SparseCMatrix l(n, n);
    l.setFromTriplets(trip.begin(), trip.end());
    f.creation_.push_back(std::move(l));
  }
  return f;
}

std::optional<Index> FockTruncation::index_of(const Word& w) const {
  if (w.size() > cutoff_) return std::nullopt;
  for (auto letter : w.letters())
    if (letter >= d_) return std::nullopt;
  return level_offset_[w.size()] + word_rank(w, d_);
}

SparseCMatrix FockTruncation::evaluate(const FreePolynomial& p) const {
  if (p.d() != d_)
    throw DimensionMismatch("polynomial has d=" + std::to_string(p.d()) + " but Fock space has d=" +
                            std::to_string(d_));
  std::vector<Eigen::Triplet<cplx>> trip;
  for (const auto& [k, a] : p.terms()) {
    if (k.size() > cutoff_) continue;
    const Index rk = word_rank(k, d_);
    for (std::size_t len = 0; len + k.size() <= cutoff_; ++len) {
      const Index count = static_cast<Index>(ipow(d_, len));
      // e_w -> e_{kw}; rank(kw) = rank(k) d^{|w|} + rank(w).
      const Index row0 = level_offset_[len + k.size()] + rk * count;
      for (Index r = 0; r < count; ++r) trip.emplace_back(row0 + r, level_offset_[len] + r, a);
    }
  }
  SparseCMatrix m(dim(), dim());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

namespace {

constexpr Index kDenseLimit = 400;
constexpr Index kLanczosSteps = 48;
constexpr int kLanczosRestarts = 30;
constexpr double kLanczosTol = 1e-14;

/// Largest eigenvalue of M^* M by restarted Lanczos with full
/// reorthogonalisation; each restart begins from the best Ritz vector.
double lanczos_top(const SparseCMatrix& m) {
  const Index n = m.cols();
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  CVector start = linalg::random_gaussian(n, 1, rng);
  start.normalize();
  double theta_prev = 0.0;
  double theta = 0.0;
  const Index steps = std::min(n, kLanczosSteps);
  CMatrix v(n, steps + 1);
  for (int restart = 0; restart < kLanczosRestarts; ++restart) {
    std::vector<double> alpha, beta;
    v.col(0) = start;
    Index k = 0;
    bool breakdown = false;
    for (Index j = 0; j < steps; ++j) {
      CVector w = m.adjoint() * (m * v.col(j));
      const double a = std::real(v.col(j).dot(w));
      alpha.push_back(a);
      for (int pass = 0; pass < 2; ++pass) w -= v.leftCols(j + 1) * (v.leftCols(j + 1).adjoint() * w);
      const double b = w.norm();
      k = j + 1;
      if (b <= 1e-13 * std::max(std::abs(a), 1e-300)) {
        breakdown = true;
        break;
      }
      beta.push_back(b);
      v.col(j + 1) = w / b;
    }
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (Index i = 0; i < k; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    theta = es.eigenvalues()(k - 1);
    const Eigen::VectorXd y = es.eigenvectors().col(k - 1);
    start = v.leftCols(k) * y.cast<cplx>();
    start.normalize();
    if (breakdown || std::abs(theta - theta_prev) <= kLanczosTol * std::max(theta, 1e-300)) break;
    theta_prev = theta;
  }
  return std::max(theta, 0.0);
}

}  // namespace

double multiplier_norm(const FreePolynomial& p, std::size_t cutoff, const Config& cfg) {
  if (p.is_zero()) return 0.0;
  if (cutoff < *p.degree())
    throw InvalidArgument("cutoff " + std::to_string(cutoff) + " is below the degree " +
                          std::to_string(*p.degree()));
  const auto fock = FockTruncation::build(p.d(), cutoff, cfg);
  const SparseCMatrix m = fock.evaluate(p);
  if (fock.dim() <= kDenseLimit) return linalg::op_norm(CMatrix(m));
  return std::sqrt(lanczos_top(m));
}

double multiplier_norm_upper_bound(const FreePolynomial& p) {
  if (p.is_zero()) return 0.0;
  double total = 0.0;
  for (std::size_t n = 0; n <= *p.degree(); ++n) total += p.homogeneous_component(n).coefficient_norm();
  return total;
}

double linear_form_norm(const MatrixTuple& diff, std::uint64_t seed, CVector* best_c) {
  const Index d = static_cast<Index>(diff.d());
  std::vector<CVector> starts;
  for (Index j = 0; j < d; ++j) starts.push_back(CVector::Unit(d, j));
  if (d > 1) {
    std::mt19937_64 rng(seed);
    for (int s = 0; s < 8; ++s) starts.push_back(linalg::random_gaussian(d, 1, rng).normalized());
  }
  double best = -1.0;
  CVector best_vec = CVector::Unit(d, 0);
  for (CVector c : starts) {
    double value = 0.0;
    for (int it = 0; it < 1000; ++it) {
      CMatrix m = CMatrix::Zero(diff.n(), diff.n());
      for (Index j = 0; j < d; ++j) m += c(j) * diff[static_cast<std::size_t>(j)];
      Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const CVector u = svd.matrixU().col(0);
      const CVector v = svd.matrixV().col(0);
      CVector w(d);
      for (Index j = 0; j < d; ++j) w(j) = u.dot(diff[static_cast<std::size_t>(j)] * v);
      const double next = w.norm();
      value = std::max(value, svd.singularValues()(0));
      if (next == 0.0) break;
      c = w.conjugate() / next;
      const bool done = next - value <= 1e-15 * std::max(next, 1e-300);
      value = std::max(value, next);
      if (done) break;
    }
    if (value > best) {
      best = value;
      best_vec = c;
    }
  }
  if (best_c) *best_c = best_vec;
  return std::max(best, 0.0);
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

FreePolynomial random_polynomial(std::size_t d, std::size_t degree, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0 / std::sqrt(2.0));
  FreePolynomial::Terms terms;
  for (std::size_t len = 0; len <= degree; ++len)
    for (auto& w : words_of_length(d, len)) {
      const double re = g(rng);
      const double im = g(rng);
      terms.emplace(std::move(w), cplx(re, im));
    }
  return FreePolynomial(d, std::move(terms));
}

}  // namespace

DeltaBound delta_lower_bound(const MatrixTuple& x, const MatrixTuple& y, const DeltaOptions& opts,
                             const Config& cfg) {
  if (x.d() != y.d()) throw DimensionMismatch("tuples must have the same d");
  if (opts.degree == 0) throw InvalidArgument("degree must be >= 1");
  if (!is_pure(x, cfg) || !is_pure(y, cfg))
    throw NotPure("pseudo-hyperbolic distance needs tuples with joint spectral radius < 1");

  const std::size_t d = x.d();
  const MatrixTuple xa = x.n() == y.n() ? x : direct_sum_power(x, static_cast<std::size_t>(y.n()));
  const MatrixTuple ya = x.n() == y.n() ? y : direct_sum_power(y, static_cast<std::size_t>(x.n()));
  const MatrixTuple diff = xa - ya;

  CVector c;
  double best = linear_form_norm(diff, opts.seed, &c);
  FreePolynomial::Terms lin;
  for (std::size_t j = 0; j < d; ++j) lin.emplace(Word{static_cast<std::uint32_t>(j)}, c(static_cast<Index>(j)));
  FreePolynomial witness(d, std::move(lin));

  if (opts.degree >= 2) {
    for (std::uint32_t j = 0; j < d; ++j)
      for (std::uint32_t k = 0; k < d; ++k) {
        const auto p = FreePolynomial::monomial(d, Word{j, k});
        const double v = linalg::op_norm(evaluate(p, xa) - evaluate(p, ya));
        if (v > best) {
          best = v;
          witness = p;
        }
      }
  }

  const std::size_t count = opts.degree * opts.trials;
  std::vector<double> values(count, 0.0);
  std::vector<std::optional<FreePolynomial>> polys(count);
  linalg::parallel_for(count, [&](std::size_t idx) {
    const std::size_t deg = idx / opts.trials + 1;
    const std::size_t trial = idx % opts.trials;
    std::mt19937_64 rng(splitmix(opts.seed ^ splitmix((static_cast<std::uint64_t>(deg) << 32) ^ trial)));
    FreePolynomial p = random_polynomial(d, deg, rng);
    const double norm = opts.normalization == DeltaNormalization::Certified
                            ? multiplier_norm_upper_bound(p)
                            : multiplier_norm(p, deg + 2, cfg);
    if (!(norm > 0.0)) return;
    values[idx] = linalg::op_norm(evaluate(p, xa) - evaluate(p, ya)) / norm;
    polys[idx] = p * cplx(1.0 / norm);
  });
  for (std::size_t idx = 0; idx < count; ++idx)
    if (values[idx] > best) {
      best = values[idx];
      witness = *polys[idx];
    }
  return DeltaBound{best, std::move(witness), xa.n()};
}

}  // namespace ncball
