#include "ncball/variety.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ncball/errors.hpp"
#include "ncball/spectral.hpp"
#include "ncball/structure.hpp"

namespace ncball {

namespace {

bool all_homogeneous(const std::vector<FreePolynomial>& gens) {
  return std::all_of(gens.begin(), gens.end(), [](const auto& g) { return g.is_homogeneous(); });
}

}  // namespace

IdealSpec::IdealSpec(std::size_t d, std::vector<FreePolynomial> generators)
    : d_(d), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.d() != d_)
      throw DimensionMismatch("generator over d=" + std::to_string(g.d()) + " in a spec with d=" +
                              std::to_string(d_));
  homogeneous_ = all_homogeneous(generators_);
}

IdealSpec::IdealSpec(std::size_t d, std::vector<FreePolynomial> generators, bool claimed_homogeneous)
    : IdealSpec(d, std::move(generators)) {
  if (claimed_homogeneous != homogeneous_)
    throw InvalidArgument(std::string("spec claims homogeneous=") +
                          (claimed_homogeneous ? "true" : "false") + " but the generators are " +
                          (homogeneous_ ? "" : "not ") + "homogeneous");
}

double vanishing_scale(const FreePolynomial& g, const MatrixTuple& x) {
  const double r = row_norm(x);
  double s = 0.0;
  for (const auto& [w, a] : g.terms()) s += std::abs(a) * std::pow(r, static_cast<double>(w.size()));
  return s;
}

double relative_residual(const IdealSpec& spec, const MatrixTuple& x) {
  if (spec.d() != x.d())
    throw DimensionMismatch("spec has d=" + std::to_string(spec.d()) + " but tuple has d=" +
                            std::to_string(x.d()));
  double worst = 0.0;
  for (const auto& g : spec.generators()) {
    const double value = linalg::op_norm(evaluate(g, x));
    const double scale = vanishing_scale(g, x);
    if (scale > 0.0)
      worst = std::max(worst, value / scale);
    else if (value > 0.0)
      worst = std::numeric_limits<double>::infinity();
  }
  return worst;
}

bool vanishes_on(const IdealSpec& spec, const MatrixTuple& x, double tol) {
  return relative_residual(spec, x) <= tol;
}

bool vanishes_on(const IdealSpec& spec, const MatrixTuple& x, const Config& cfg) {
  return vanishes_on(spec, x, cfg.vanish_tol);
}

bool in_envelope(const IdealSpec& spec, const MatrixTuple& x, const Config& cfg) {
  if (!spec.homogeneous())
    throw NonHomogeneousSpec("envelope membership is only characterised for homogeneous varieties");
  return vanishes_on(spec, x, cfg) && in_ball_envelope(x, cfg);
}

IdealSpec qcomm_spec(cplx q) {
  const auto z12 = FreePolynomial::monomial(2, Word{0, 1});
  const auto z21 = FreePolynomial::monomial(2, Word{1, 0});
  return IdealSpec(2, {z12 - q * z21});
}

IdealSpec wcomm_spec(cplx q) {
  const auto z1 = FreePolynomial::variable(2, 0);
  const auto z2 = FreePolynomial::variable(2, 1);
  return IdealSpec(2, {(z1 - z2) * z2 - q * (z2 * (z1 - z2))});
}

std::optional<std::size_t> root_of_unity_order(cplx q, const Config& cfg) {
  cplx power = 1.0;
  for (std::size_t k = 1; k <= cfg.max_root_order; ++k) {
    power *= q;
    if (std::abs(power - 1.0) <= cfg.root_of_unity_tol) return k;
  }
  return std::nullopt;
}

MatrixTuple qcomm_canonical_irreducible(cplx q, cplx lambda, cplx mu, const Config& cfg) {
  const auto order = root_of_unity_order(q, cfg);
  if (!order) throw NotRootOfUnity("q is not a root of unity of order <= " + std::to_string(cfg.max_root_order));
  if (lambda == 0.0 || mu == 0.0) throw InvalidArgument("lambda and mu must be nonzero");
  const Index k = static_cast<Index>(*order);
  CMatrix x = CMatrix::Zero(k, k);
  CMatrix y = CMatrix::Zero(k, k);
  cplx qm = 1.0;
  for (Index i = 0; i < k; ++i) {
    x(i, i) = lambda * qm;
    qm *= q;
    if (i + 1 < k) y(i + 1, i) = 1.0;
  }
  y(0, k - 1) += mu;
  return MatrixTuple({x, y});
}

namespace {

cplx random_unit_annulus(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> r(lo, hi), t(0.0, 2.0 * std::numbers::pi);
  const double rad = r(rng);
  return std::polar(rad, t(rng));
}

/// Random positive parts summing to n.
std::vector<Index> random_composition(Index n, std::mt19937_64& rng) {
  std::vector<Index> parts;
  std::uniform_int_distribution<int> coin(0, 1);
  if (coin(rng)) return {n};
  Index left = n;
  while (left > 0) {
    std::uniform_int_distribution<Index> pick(1, left);
    const Index p = pick(rng);
    parts.push_back(p);
    left -= p;
  }
  return parts;
}

MatrixTuple chain_sample(cplx q, Index n, std::mt19937_64& rng, const Config& cfg) {
  CMatrix diag = CMatrix::Zero(n, n);
  Index pos = 0;
  for (Index len : random_composition(n, rng)) {
    cplx value = random_unit_annulus(rng, 0.3, 1.0);
    for (Index m = 0; m < len; ++m, ++pos) {
      diag(pos, pos) = value;
      value *= q;
    }
  }
  CMatrix s = linalg::random_gaussian(n, n, rng) + 2.0 * CMatrix::Identity(n, n);
  const CMatrix x = s * diag * s.inverse();
  // vec(XY - qYX) = (X kron I - q I kron X^T) vec(Y) in row-stacked form.
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix op = linalg::kron(x, id) - q * linalg::kron(id, x.transpose());
  const CMatrix kernel = linalg::null_space(op, cfg.rank_tol * 100.0);
  CMatrix y = CMatrix::Zero(n, n);
  if (kernel.cols() > 0)
    y = linalg::unvec_rows(kernel * linalg::random_gaussian(kernel.cols(), 1, rng), n, n);
  return MatrixTuple({x, y});
}

MatrixTuple direct_sum_sample(cplx q, Index n, std::optional<std::size_t> order, std::mt19937_64& rng,
                              const Config& cfg) {
  std::optional<MatrixTuple> acc;
  Index size = 0;
  const Index k = order ? static_cast<Index>(*order) : 0;
  while (size < n) {
    MatrixTuple piece = [&] {
      if (k > 1 && size + k <= n)
        return qcomm_canonical_irreducible(q, random_unit_annulus(rng, 0.3, 1.0),
                                           random_unit_annulus(rng, 0.3, 1.0), cfg);
      // Level-1 points satisfy (1 - q) x y = 0.
      std::uniform_int_distribution<int> coin(0, 1);
      const cplx v = random_unit_annulus(rng, 0.1, 0.9);
      const std::vector<cplx> pt = coin(rng) ? std::vector<cplx>{v, 0.0} : std::vector<cplx>{0.0, v};
      return MatrixTuple::scalar(pt);
    }();
    size += piece.n();
    acc = acc ? direct_sum(*acc, piece) : piece;
  }
  const CMatrix s = linalg::random_gaussian(n, n, rng) + 2.0 * CMatrix::Identity(n, n);
  return conjugate(*acc, s, cfg);
}

}  // namespace

ReducibilityReport qcomm_reducibility_probe(cplx q, Index n, std::size_t trials, std::uint64_t seed,
                                            const Config& cfg) {
  if (n < 2) throw InvalidArgument("reducibility probe needs level n >= 2");
  const auto order = root_of_unity_order(q, cfg);
  ReducibilityReport rep{q, n, trials, 0, 0.0, order, order && static_cast<Index>(*order) == n};
  const IdealSpec spec = qcomm_spec(q);
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const MatrixTuple pt = (t % 4 == 3) ? direct_sum_sample(q, n, order, rng, cfg) : chain_sample(q, n, rng, cfg);
    rep.max_relation_residual = std::max(rep.max_relation_residual, relative_residual(spec, pt));
    if (is_irreducible(pt, cfg)) ++rep.irreducible_found;
  }
  return rep;
}

CMatrix angle_change_matrix() {
  const double r = 1.0 / std::numbers::sqrt2;
  CMatrix a(2, 2);
  a << 1.0, r, 0.0, r;
  return a;
}

MatrixTuple angle_change_map(const MatrixTuple& x) {
  if (x.d() != 2) throw DimensionMismatch("angle change map acts on pairs (d = 2)");
  return linear_change(angle_change_matrix(), x);
}

}  // namespace ncball
