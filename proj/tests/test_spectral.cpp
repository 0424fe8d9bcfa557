#include "doctest.h"
#include "oracles.hpp"

#include "ncball/errors.hpp"
#include "ncball/spectral.hpp"
#include "ncball/structure.hpp"
#include "ncball/variety.hpp"

using namespace ncball;

namespace {

CMatrix unit(Index n, Index i, Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

const cplx kI(0.0, 1.0);

MatrixTuple x0y0() {
  CMatrix x(2, 2), y(2, 2);
  x << 1, 0, 0, -1;
  y << 0, kI, 1, 0;
  return MatrixTuple({x, y});
}

}  // namespace

TEST_CASE("jsr examples") {
  CHECK(jsr(x0y0()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(jsr(angle_change_map(x0y0())) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-12));
  CHECK(jsr(MatrixTuple::scalar(std::vector<cplx>{0.3, 0.4})) == doctest::Approx(0.5).epsilon(1e-12));
  for (double delta : {0.1, 0.5, 0.9}) {
    const double eps = std::sqrt(1 - delta * delta);
    const MatrixTuple x({eps * std::polar(1.0, -0.4) * unit(2, 0, 1), delta * (unit(2, 0, 1) + unit(2, 1, 0))});
    CHECK(jsr(x) == doctest::Approx(std::sqrt(delta)).epsilon(1e-10));
  }
}

TEST_CASE("jsr agrees with the column-stacked Kronecker oracle") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    const auto x = oracle::random_tuple(1 + i % 3, 1 + i % 6, rng);
    CHECK(jsr(x) == doctest::Approx(oracle::jsr(x)).epsilon(1e-10));
  }
}

TEST_CASE("jsr properties") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 40; ++i) {
    const Index n = 1 + i % 5;
    const auto x = oracle::random_tuple(1 + i % 3, n, rng);
    const auto y = oracle::random_tuple(x.d(), 2, rng);
    const double r = jsr(x);
    // similarity invariance
    const CMatrix s = oracle::well_conditioned(n, rng, 0.8);
    const double cond = linalg::condition_number(s);
    CHECK(std::abs(jsr(conjugate(x, s)) - r) <= 1e-8 * cond * std::max(1.0, r));
    // homogeneity and dominance
    const cplx c(0.3, -1.7);
    CHECK(jsr(x * c) == doctest::Approx(std::abs(c) * r).epsilon(1e-10));
    CHECK(r <= row_norm(x) * (1 + 1e-12));
    // direct sums and block triangular assemblies
    CHECK(jsr(direct_sum(x, y)) == doctest::Approx(std::max(r, jsr(y))).epsilon(1e-10));
    CHECK(jsr(oracle::upper_assembly(x, y, rng)) == doctest::Approx(std::max(r, jsr(y))).epsilon(1e-9));
  }
}

TEST_CASE("jsr_iterative") {
  const auto zeros = jsr_iterative(MatrixTuple::zero(2, 3), 5);
  CHECK(zeros.size() == 5);
  for (double v : zeros) CHECK(v == 0.0);
  const auto nil = jsr_iterative(MatrixTuple({unit(2, 0, 1)}), 4);
  CHECK(nil[0] == doctest::Approx(1.0));
  for (std::size_t k = 1; k < 4; ++k) CHECK(nil[k] == 0.0);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    const auto x = oracle::random_tuple(1 + i % 3, 1 + i % 5, rng);
    const auto seq = jsr_iterative(x, 256);
    CHECK(std::abs(seq[199] - jsr(x)) <= 0.05);
    // ||X^(2k)|| <= ||X^(k)||^2, so entries at powers of two do not increase.
    for (std::size_t k = 1; 2 * k <= 256; k *= 2) CHECK(seq[2 * k - 1] <= seq[k - 1] * (1 + 1e-12));
  }
}

TEST_CASE("purity") {
  CHECK(!is_pure(x0y0()));
  CHECK(is_pure(MatrixTuple({unit(2, 0, 1), CMatrix::Zero(2, 2)})));
  CHECK(!is_pure(MatrixTuple({unit(2, 0, 1), unit(2, 1, 0)})));
  CHECK(classify(1.0) == Region::Boundary);
  CHECK(classify(1.0 - 1e-12) == Region::Boundary);
  CHECK(classify(0.5) == Region::Interior);
  CHECK(classify(1.5) == Region::Exterior);
  // Nilpotent pair with a large corner entry: row norm far above 1, still pure.
  const MatrixTuple big({unit(2, 0, 1) * 100.0, unit(2, 0, 1) * -40.0});
  CHECK(row_norm(big) > 10);
  CHECK(in_ball_envelope(big));
}

TEST_CASE("purity agrees with decay of Psi^K(I)") {
  std::mt19937_64 rng(24);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const auto raw = oracle::random_tuple(1 + i % 3, 1 + i % 4, rng);
    const double target = (i % 2 == 0) ? 0.3 + 0.6 * (i % 7) / 7.0 : 1.1 + 0.1 * (i % 5);
    const auto x = oracle::with_jsr(raw, target);
    // Decay below 1e-6 is decided once rho^(2K) is well separated from it.
    CMatrix t = CMatrix::Identity(x.n(), x.n());
    for (int k = 0; k < 600; ++k) {
      t = apply_cp(x, t);
      const double nt = t.norm();
      if (nt > 1e6 || nt < 1e-30) break;
    }
    const bool decays = oracle::op_norm(t) < 1e-6;
    CHECK(is_pure(x) == decays);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("strict contraction similarity: irreducible tuples attain the radius") {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 40; ++i) {
    const auto x = oracle::with_jsr(oracle::random_tuple(1 + (i % 3 == 0 ? 1 : i % 3), 2 + i % 5, rng), 0.8);
    const auto cert = similarize_to_strict_contraction(x);
    CHECK(cert.kind == CertificateKind::StrictContraction);
    CHECK(row_norm(cert.target) == doctest::Approx(jsr(x)).epsilon(1e-8));
    CHECK(max_distance(conjugate(x, cert.S), cert.target) <= 1e-9);
  }
}

TEST_CASE("strict contraction similarity: reducible inputs") {
  // Upper triangular with a huge coupling block: needs the t-scaling.
  std::mt19937_64 rng(26);
  for (int i = 0; i < 10; ++i) {
    const auto a = oracle::with_jsr(oracle::random_tuple(2, 2, rng), 0.6);
    const auto b = oracle::with_jsr(oracle::random_tuple(2, 3, rng), 0.7);
    auto t = oracle::upper_assembly(a, b, rng);
    std::vector<CMatrix> ms;
    for (std::size_t j = 0; j < 2; ++j) {
      CMatrix m = t[j];
      m.topRightCorner(2, 3) *= 50.0;
      ms.push_back(m);
    }
    const MatrixTuple x(ms);
    REQUIRE(row_norm(x) > 10.0);
    const auto cert = similarize_to_strict_contraction(x);
    CHECK(row_norm(cert.target) < 1.0);
    CHECK(max_distance(conjugate(x, cert.S), cert.target) <= 1e-8 * cert.condition);
  }
  // Commuting diagonal pair (fully reducible).
  CMatrix d1 = CMatrix::Zero(3, 3), d2 = CMatrix::Zero(3, 3);
  d1.diagonal() << 0.5, -0.2, 0.1;
  d2.diagonal() << 0.1, 0.6, cplx(0.0, 0.3);
  const auto cert = similarize_to_strict_contraction(MatrixTuple({d1, d2}));
  CHECK(row_norm(cert.target) < 1.0);

  CHECK_THROWS_AS(similarize_to_strict_contraction(x0y0()), NotPure);
  CHECK_THROWS_AS(similarize_to_strict_contraction(MatrixTuple({unit(2, 0, 1), unit(2, 1, 0)})), NotPure);
}

TEST_CASE("an already contractive tuple stays contractive") {
  std::mt19937_64 rng(27);
  const auto x = oracle::random_tuple(2, 3, rng) * cplx(0.5 / oracle::row_norm(oracle::random_tuple(2, 3, rng)));
  const auto y = x * cplx(0.9 / row_norm(x));
  const auto cert = similarize_to_strict_contraction(y);
  CHECK(row_norm(cert.target) <= row_norm(y) + 1e-9);
}

TEST_CASE("coisometry similarity") {
  const MatrixTuple u({unit(2, 0, 1), unit(2, 1, 0)});
  const auto c0 = similarize_to_coisometry(u);
  CHECK(is_coisometry(c0.target, 1e-10));
  CHECK((c0.S - c0.S(0, 0) * CMatrix::Identity(2, 2)).norm() <= 1e-10 * std::abs(c0.S(0, 0)));

  std::mt19937_64 rng(28);
  for (int i = 0; i < 10; ++i) {
    const auto x = conjugate(u, oracle::well_conditioned(2, rng));
    const auto c = similarize_to_coisometry(x);
    CHECK(is_coisometry(c.target, 1e-8));
    CHECK(c.residual <= 1e-8);
  }
  const auto canon = qcomm_canonical_irreducible(-1.0, 1.0, kI);
  const auto normalised = canon * cplx(1.0 / jsr(canon));
  CHECK(is_coisometry(similarize_to_coisometry(normalised).target, 1e-8));

  CHECK_THROWS_AS(similarize_to_coisometry(x0y0()), NotUnitRadius);
  CHECK_THROWS_AS(similarize_to_coisometry(MatrixTuple({unit(2, 0, 1), CMatrix(CMatrix::Identity(2, 2))})),
                  NotIrreducible);
}

TEST_CASE("Perron matrix is a positive eigenvector of Psi") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 20; ++i) {
    const auto x = oracle::random_tuple(2, 2 + i % 4, rng);
    const CMatrix a = perron_matrix(x);
    const double r = jsr(x);
    CHECK((apply_cp(x, a) - r * r * a).norm() <= 1e-9 * r * r);
    CHECK(linalg::hermitian_min_eigenvalue(a) > 0.0);
  }
}

TEST_CASE("maximum principle and Schwarz probes") {
  std::mt19937_64 rng(30);
  const auto b = oracle::with_jsr(oracle::random_tuple(2, 3, rng), 0.9);
  const auto zero = MatrixTuple::zero(2, 3);

  const auto linear = max_principle_probe(DiscCurve({zero, b}), 0.5, 64);
  REQUIRE(linear.schwarz_ratio.has_value());
  CHECK(*linear.schwarz_ratio == doctest::Approx(jsr(b)).epsilon(1e-9));
  CHECK(!linear.violation());

  auto c = oracle::random_tuple(2, 3, rng);
  // Scale so that the whole closed disc maps into the envelope.
  double s = 1.0;
  for (;;) {
    const DiscCurve f({zero, b * cplx(0.5), c * cplx(s)});
    const auto rep = max_principle_probe(f, 0.7, 360);
    if (rep.unit_circle_max < 1.0) {
      CHECK(!rep.violation());
      CHECK(rep.center <= rep.boundary_max + 1e-6);
      break;
    }
    s *= 0.5;
  }

  const auto constant = max_principle_probe(DiscCurve({b}), 0.3, 16);
  CHECK(constant.center == doctest::Approx(constant.boundary_max).epsilon(1e-12));
  CHECK(!constant.schwarz_ratio.has_value());
}
