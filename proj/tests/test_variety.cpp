#include "doctest.h"
#include "oracles.hpp"

#include "ncball/errors.hpp"
#include "ncball/io.hpp"
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

MatrixTuple separating_point(cplx q) {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 0) = q;
  x(1, 1) = 1.0;
  return MatrixTuple({x, unit(2, 0, 1)}) * (1.0 / (2.0 * std::sqrt(q * q + 1.0)));
}

}  // namespace

TEST_CASE("generator lists") {
  CHECK(qcomm_spec(1.0).generators()[0] == parse_polynomial("z1*z2 - z2*z1", 2));
  CHECK(qcomm_spec(0.0).generators()[0] == parse_polynomial("z1*z2", 2));
  const cplx q(0.3, -0.2);
  const auto expanded =
      parse_polynomial("z1*z2 - z2*z2", 2) - q * parse_polynomial("z2*z1", 2) + q * parse_polynomial("z2*z2", 2);
  CHECK(wcomm_spec(q).generators()[0] == expanded);
  CHECK(qcomm_spec(q).homogeneous());
  CHECK(!IdealSpec(2, {parse_polynomial("z1 - 1", 2)}).homogeneous());
  CHECK_THROWS_AS(IdealSpec(2, {parse_polynomial("z1 - 1", 2)}, true), InvalidArgument);
  CHECK_THROWS_AS(IdealSpec(2, {parse_polynomial("z1", 3)}), DimensionMismatch);
}

TEST_CASE("vanishing") {
  const IdealSpec x2(2, {parse_polynomial("z1^2", 2)});
  std::mt19937_64 rng(51);
  CHECK(vanishes_on(x2, MatrixTuple({unit(2, 0, 1), oracle::gaussian(2, 2, rng)})));
  CHECK(vanishes_on(qcomm_spec(0.4), MatrixTuple::zero(2, 3)));
  CHECK(vanishes_on(qcomm_spec(-1.0), x0y0()));
  CHECK(!vanishes_on(qcomm_spec(1.0), x0y0()));

  const std::vector<cplx> grid = {0.5, -0.5, 0.3 * kI, cplx(0.2, 0.4), cplx(-0.6, 0.1), std::polar(1.0, 1.0),
                                  std::polar(1.0, 2.0), -1.0, 0.9, 0.1};
  for (cplx q : grid) {
    const auto pt = separating_point(q);
    CHECK(row_norm(pt) < 1.0);
    CHECK(vanishes_on(qcomm_spec(q), pt));
    for (cplx p : grid)
      if (std::abs(p - q) > 1e-12 && std::abs(p * q - 1.0) > 1e-12) CHECK(!vanishes_on(qcomm_spec(p), pt));
  }
}

TEST_CASE("vanishing is stable under similarity, direct sums and scaling") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 20; ++i) {
    const cplx q = std::polar(1.0, 2 * M_PI / (2 + i % 4));
    const auto pt = qcomm_canonical_irreducible(q, cplx(0.5, 0.1 * i), cplx(0.2, -0.3));
    const auto s = oracle::well_conditioned(pt.n(), rng);
    const double cond = linalg::condition_number(s);
    CHECK(vanishes_on(qcomm_spec(q), conjugate(pt, s), 1e-12 * cond * cond));
    CHECK(vanishes_on(qcomm_spec(q), direct_sum(pt, separating_point(q))));
    CHECK(vanishes_on(qcomm_spec(q), pt * cplx(37.0, -4.0)));
    CHECK(vanishes_on(qcomm_spec(q), pt * cplx(1e-5)));
  }
}

TEST_CASE("envelope membership") {
  CHECK(!in_envelope(qcomm_spec(-1.0), x0y0()));
  CHECK(in_envelope(qcomm_spec(-1.0), x0y0() * cplx(0.5)));
  CHECK(in_envelope(qcomm_spec(0.5), separating_point(0.5)));
  CHECK_THROWS_AS(in_envelope(IdealSpec(2, {parse_polynomial("z1 - 1", 2)}), x0y0()), NonHomogeneousSpec);
}

TEST_CASE("roots of unity") {
  CHECK(root_of_unity_order(-1.0) == 2u);
  CHECK(root_of_unity_order(kI) == 4u);
  CHECK(root_of_unity_order(std::polar(1.0, 2 * M_PI * 3 / 7)) == 7u);
  CHECK(root_of_unity_order(1.0) == 1u);
  CHECK(!root_of_unity_order(std::exp(1.0)).has_value());
  CHECK(!root_of_unity_order(std::polar(1.0, 1.0)).has_value());
}

TEST_CASE("canonical irreducible points") {
  CHECK(qcomm_canonical_irreducible(-1.0, 1.0, kI) == x0y0());
  CHECK(jsr(qcomm_canonical_irreducible(-1.0, 1.0, kI)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> rad(0.2, 1.0), ang(0.0, 2 * M_PI);
  for (std::size_t k = 2; k <= 6; ++k) {
    const cplx q = std::polar(1.0, 2 * M_PI / static_cast<double>(k));
    for (int t = 0; t < 10; ++t) {
      const cplx lambda = std::polar(rad(rng), ang(rng)), mu = std::polar(rad(rng), ang(rng));
      const auto pt = qcomm_canonical_irreducible(q, lambda, mu);
      CHECK(pt.n() == static_cast<Index>(k));
      CHECK(oracle::op_norm(pt[0] * pt[1] - q * pt[1] * pt[0]) <= 1e-12);
      CHECK(is_irreducible(pt));
    }
  }
  CHECK_THROWS_AS(qcomm_canonical_irreducible(std::exp(1.0), 1.0, 1.0), NotRootOfUnity);
  CHECK_THROWS_AS(qcomm_canonical_irreducible(-1.0, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("reducibility probe") {
  for (Index n = 2; n <= 4; ++n) {
    const auto rep = qcomm_reducibility_probe(std::exp(1.0), n, 50, 7);
    CHECK(rep.irreducible_found == 0u);
    CHECK(!rep.irreducible_expected);
    CHECK(rep.max_relation_residual <= 1e-10);
  }
  const auto two = qcomm_reducibility_probe(-1.0, 2, 20, 7);
  CHECK(two.irreducible_expected);
  CHECK(two.irreducible_found > 0u);
  CHECK(qcomm_reducibility_probe(-1.0, 3, 40, 7).irreducible_found == 0u);
  CHECK(qcomm_reducibility_probe(cplx(0, 1), 3, 40, 7).irreducible_found == 0u);
  CHECK(qcomm_reducibility_probe(cplx(0, 1), 4, 20, 7).irreducible_found > 0u);
}

TEST_CASE("angle change map") {
  CHECK(angle_change_map(MatrixTuple::zero(2, 3)) == MatrixTuple::zero(2, 3));
  const auto img = angle_change_map(MatrixTuple::scalar(std::vector<cplx>{0.2, cplx(0.1, 0.4)}));
  CHECK(std::abs(img[0](0, 0) - (0.2 + cplx(0.1, 0.4) / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(img[1](0, 0) - cplx(0.1, 0.4) / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(jsr(angle_change_map(x0y0())) - jsr(x0y0())) ==
        doctest::Approx(std::sqrt(2.0) - std::pow(3.0, 0.25)).epsilon(1e-10));
  CHECK_THROWS_AS(angle_change_map(MatrixTuple::zero(3, 1)), DimensionMismatch);
}

TEST_CASE("variety JSON") {
  const auto spec = variety_from_json(json::parse(R"({"d":2,"generators":["z1*z2 - (0.5+0i)*z2*z1"]})"));
  CHECK(spec.homogeneous());
  CHECK(spec.generators()[0] == qcomm_spec(0.5).generators()[0]);
  CHECK_THROWS_AS(variety_from_json(json::parse(R"({"d":2,"generators":["z1 + 1"],"homogeneous":true})")),
                  InputError);
  CHECK_THROWS_AS(variety_from_json(json::parse(R"({"d":2,"generators":["z1 +"]})")), ParseError);
  const auto back = variety_from_json(variety_to_json(spec));
  CHECK(back.generators() == spec.generators());
}
