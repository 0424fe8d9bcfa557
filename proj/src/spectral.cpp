#include "ncball/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncball/errors.hpp"
#include "ncball/structure.hpp"

namespace ncball {

double jsr(const MatrixTuple& x) {
  return std::sqrt(linalg::spectral_radius(cp_matrix(x).mat));
}

std::vector<double> jsr_iterative(const MatrixTuple& x, std::size_t k_max) {
  if (k_max == 0) throw InvalidArgument("k_max must be >= 1");
  std::vector<double> seq;
  seq.reserve(k_max);
  CMatrix t = CMatrix::Identity(x.n(), x.n());
  double log_scale = 0.0;  // log ||Psi^k(I)|| = log_scale + log ||t||
  for (std::size_t k = 1; k <= k_max; ++k) {
    t = apply_cp(x, t);
    t = 0.5 * (t + t.adjoint());
    const double norm = linalg::hermitian_max_eigenvalue(t);
    if (!(norm > 0.0)) {
      seq.resize(k_max, 0.0);
      return seq;
    }
    log_scale += std::log(norm);
    seq.push_back(std::exp(log_scale / (2.0 * static_cast<double>(k))));
    t /= norm;
  }
  return seq;
}

Region classify(double radius, const Config& cfg) {
  if (radius < 1.0 - cfg.boundary_tol) return Region::Interior;
  if (radius <= 1.0 + cfg.boundary_tol) return Region::Boundary;
  return Region::Exterior;
}

const char* to_string(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Boundary: return "boundary";
    case Region::Exterior: return "exterior";
  }
  return "?";
}

bool is_pure(const MatrixTuple& x, const Config& cfg) {
  return classify(jsr(x), cfg) == Region::Interior;
}

bool in_ball_envelope(const MatrixTuple& x, const Config& cfg) { return is_pure(x, cfg); }

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::StrictContraction: return "strict-contraction";
    case CertificateKind::Coisometry: return "coisometry";
    case CertificateKind::MinimalNorm: return "minimal-norm";
  }
  return "?";
}

namespace {

// Eigenvalues within this relative distance of the Perron root are treated
// as the same eigenvalue.
constexpr double kPerronDegeneracyTol = 1e-8;
// Smallest admissible eigenvalue of the normalised Perron matrix.
constexpr double kPerronPositivityTol = 1e-12;
constexpr double kMinScaling = 1e-12;

double certificate_residual(const MatrixTuple& x, const CMatrix& s, const MatrixTuple& target) {
  double worst = 0.0;
  for (std::size_t j = 0; j < x.d(); ++j)
    worst = std::max(worst, linalg::op_norm(x[j] * s - s * target[j]));
  return worst / (linalg::op_norm(s) * std::max(1.0, row_norm(x)));
}

SimilarityCertificate perron_certificate(const MatrixTuple& x, CertificateKind kind,
                                         const Config& cfg) {
  const CMatrix s = linalg::psd_sqrt(perron_matrix(x));
  auto conj = conjugate_checked(x, s, cfg);
  const double res = certificate_residual(x, s, conj.tuple);
  return SimilarityCertificate{s, std::move(conj.tuple), kind, res, conj.condition};
}

}  // namespace

CMatrix perron_matrix(const MatrixTuple& x) {
  const Index n = x.n();
  const CMatrix psi = cp_matrix(x).mat;
  Eigen::ComplexEigenSolver<CMatrix> es(psi);
  const CVector& ev = es.eigenvalues();
  const double rmax = ev.cwiseAbs().maxCoeff();

  // The Perron root is real and positive; among eigenvalues of maximal
  // modulus pick the one closest to the positive axis.
  Index best = 0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) < rmax * (1.0 - kPerronDegeneracyTol)) continue;
    if (std::abs(ev(best)) < rmax * (1.0 - kPerronDegeneracyTol) || ev(i).real() > ev(best).real())
      best = i;
  }
  Index close = 0;
  for (Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i) - ev(best)) <= kPerronDegeneracyTol * std::max(rmax, 1e-300)) ++close;
  if (close > 1 && rmax > 0.0)
    throw PerronFailure("top eigenvalue of the CP map has multiplicity " + std::to_string(close) +
                        "; tuple is not irreducible");

  CMatrix m = linalg::unvec_rows(es.eigenvectors().col(best), n, n);
  const cplx tr = m.trace();
  if (std::abs(tr) <= 1e-12 * m.norm())
    throw PerronFailure("Perron eigenvector has vanishing trace");
  m *= std::conj(tr) / std::abs(tr);
  CMatrix a = 0.5 * (m + m.adjoint());
  a /= linalg::hermitian_max_eigenvalue(a);
  const double min_ev = linalg::hermitian_min_eigenvalue(a);
  if (!(min_ev > kPerronPositivityTol))
    throw PerronFailure("Perron matrix is not positive definite (min eigenvalue " +
                        std::to_string(min_ev) + ")");
  return a;
}

SimilarityCertificate minimal_norm_similarity(const MatrixTuple& x, const Config& cfg) {
  if (!is_irreducible(x, cfg)) throw NotIrreducible("minimal-norm similarity needs an irreducible tuple");
  return perron_certificate(x, CertificateKind::MinimalNorm, cfg);
}

SimilarityCertificate similarize_to_strict_contraction(const MatrixTuple& x, const Config& cfg) {
  const double rho = jsr(x);
  if (classify(rho, cfg) != Region::Interior)
    throw NotPure("joint spectral radius " + std::to_string(rho) + " is not below 1");
  if (is_irreducible(x, cfg))
    return perron_certificate(x, CertificateKind::StrictContraction, cfg);

  const JHDecomposition jh = jordan_holder(x, cfg);
  const Index n = x.n();
  CMatrix block_perron = CMatrix::Zero(n, n);
  Index offset = 0;
  for (std::size_t b = 0; b < jh.blocks.size(); ++b) {
    const Index sz = jh.block_sizes[b];
    block_perron.block(offset, offset, sz, sz) = linalg::psd_sqrt(perron_matrix(jh.blocks[b]));
    offset += sz;
  }
  const CMatrix base = jh.S * block_perron;
  const MatrixTuple coupled = conjugate(x, base, cfg);

  // Level index of every row/column.
  std::vector<int> level(static_cast<std::size_t>(n));
  offset = 0;
  for (std::size_t b = 0; b < jh.block_sizes.size(); ++b)
    for (Index i = 0; i < jh.block_sizes[b]; ++i) level[static_cast<std::size_t>(offset++)] = static_cast<int>(b);

  // Conjugating by G = diag(t^level) multiplies entry (i,j) by t^(level_j - level_i).
  const double goal = 0.5 * (1.0 + rho);
  for (double t = 1.0; t >= kMinScaling; t *= 0.5) {
    std::vector<CMatrix> scaled;
    for (const auto& m : coupled.matrices()) {
      CMatrix s = m;
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          s(i, j) *= std::pow(t, level[static_cast<std::size_t>(j)] - level[static_cast<std::size_t>(i)]);
      scaled.push_back(std::move(s));
    }
    MatrixTuple target(std::move(scaled));
    if (row_norm(target) < goal) {
      CMatrix g = CMatrix::Zero(n, n);
      for (Index i = 0; i < n; ++i) g(i, i) = std::pow(t, level[static_cast<std::size_t>(i)]);
      const CMatrix s = base * g;
      const double res = certificate_residual(x, s, target);
      return SimilarityCertificate{s, std::move(target), CertificateKind::StrictContraction, res,
                                   linalg::condition_number(s)};
    }
  }
  throw DecompositionFailure("off-diagonal scaling did not reach a strict contraction");
}

SimilarityCertificate similarize_to_coisometry(const MatrixTuple& x, const Config& cfg) {
  if (!is_irreducible(x, cfg)) throw NotIrreducible("coisometric similarity needs an irreducible tuple");
  const double rho = jsr(x);
  if (std::abs(rho - 1.0) > cfg.boundary_tol)
    throw NotUnitRadius("joint spectral radius " + std::to_string(rho) + " differs from 1");
  auto cert = perron_certificate(x, CertificateKind::Coisometry, cfg);
  if (!is_coisometry(cert.target, cfg.coisometry_tol))
    throw PerronFailure("Perron similarity did not produce a coisometry");
  return cert;
}

DiscCurve::DiscCurve(std::vector<MatrixTuple> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw InvalidArgument("disc curve needs at least one coefficient");
  for (const auto& c : coefficients_)
    if (c.d() != coefficients_.front().d() || c.n() != coefficients_.front().n())
      throw DimensionMismatch("disc curve coefficients must share d and n");
}

MatrixTuple DiscCurve::at(cplx z) const {
  // Horner in z.
  MatrixTuple acc = coefficients_.back();
  for (std::size_t m = coefficients_.size() - 1; m-- > 0;) acc = acc * z + coefficients_[m];
  return acc;
}

bool DiscCurve::vanishes_at_origin() const {
  for (const auto& m : coefficients_.front().matrices())
    if (!m.isZero(0.0)) return false;
  return true;
}

MaxPrincipleReport max_principle_probe(const DiscCurve& curve, double radius, std::size_t samples,
                                       const Config& cfg) {
  if (!(radius > 0.0 && radius < 1.0)) throw InvalidArgument("probe radius must lie in (0, 1)");
  if (samples == 0) throw InvalidArgument("probe needs at least one sample");

  std::vector<double> inner(samples), unit(samples);
  linalg::parallel_for(samples, [&](std::size_t s) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(samples);
    const cplx w = std::polar(1.0, theta);
    inner[s] = jsr(curve.at(radius * w));
    unit[s] = jsr(curve.at(w));
  });

  MaxPrincipleReport rep{};
  rep.radius = radius;
  rep.samples = samples;
  rep.center = jsr(curve.at(0.0));
  rep.boundary_max = *std::max_element(inner.begin(), inner.end());
  rep.unit_circle_max = *std::max_element(unit.begin(), unit.end());
  rep.subharmonic_violation = rep.center > rep.boundary_max + cfg.probe_tol;
  if (curve.vanishes_at_origin()) {
    rep.schwarz_ratio = rep.boundary_max / radius;
    rep.schwarz_violation = rep.unit_circle_max < 1.0 && *rep.schwarz_ratio > 1.0 + cfg.probe_tol;
  }
  return rep;
}

}  // namespace ncball
