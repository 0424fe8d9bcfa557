// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"

#include "ncball/fock.hpp"
#include "ncball/spectral.hpp"
#include "ncball/structure.hpp"
#include "ncball/variety.hpp"

using namespace ncball;

namespace {

const cplx kI(0.0, 1.0);

CMatrix unit(Index n, Index i, Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

MatrixTuple x0y0() {
  CMatrix x(2, 2), y(2, 2);
  x << 1, 0, 0, -1;
  y << 0, kI, 1, 0;
  return MatrixTuple({x, y});
}

/// Collects failures of one criterion.
struct Ledger {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    else if (!ok) failures.push_back("");
  }
  void near(double computed, double expected, double tol, const std::string& what) {
    std::ostringstream os;
    os << what << ": computed " << computed << ", expected " << expected << " +- " << tol;
    expect(std::abs(computed - expected) <= tol, os.str());
  }
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;
  std::function<void(Ledger&)> body;
};

std::vector<Criterion> criteria() {
  std::vector<Criterion> c;

  c.push_back({"AC1", "spectral radii sqrt 2 and 3^(1/4) of the q = -1 example", 0.010, [](Ledger& l) {
                 l.near(jsr(x0y0()), std::sqrt(2.0), 1e-9, "jsr(X0,Y0)");
                 l.near(jsr(angle_change_map(x0y0())), std::pow(3.0, 0.25), 1e-9, "jsr(A(X0,Y0))");
               }});

  c.push_back({"AC2", "separating points of the q-commutation varieties", 1.0, [](Ledger& l) {
                 const std::vector<cplx> grid = {0.5,  -0.5, 0.3 * kI, cplx(0.2, 0.4), cplx(-0.6, 0.1),
                                                 std::polar(1.0, M_PI / 3), std::polar(1.0, 2 * M_PI / 3), -1.0,
                                                 0.9,  0.1};
                 for (cplx q : grid) {
                   CMatrix x = CMatrix::Zero(2, 2);
                   x(0, 0) = q;
                   x(1, 1) = 1.0;
                   const auto pt = MatrixTuple({x, unit(2, 0, 1)}) * (1.0 / (2.0 * std::sqrt(q * q + 1.0)));
                   std::ostringstream tag;
                   tag << "q = " << q;
                   l.expect(vanishes_on(qcomm_spec(q), pt), tag.str() + " in V_q");
                   for (cplx p : grid) {
                     if (std::abs(p - q) < 1e-12 || std::abs(p * q - 1.0) < 1e-12) continue;
                     std::ostringstream t2;
                     t2 << tag.str() << " outside V_p, p = " << p;
                     l.expect(!vanishes_on(qcomm_spec(p), pt), t2.str());
                   }
                 }
               }});

  c.push_back({"AC3", "canonical irreducible points and the non-root-of-unity probe", 30.0, [](Ledger& l) {
                 std::mt19937_64 rng(303);
                 std::uniform_real_distribution<double> rad(0.2, 1.0), ang(0.0, 2 * M_PI);
                 for (int k = 2; k <= 5; ++k) {
                   const cplx q = std::polar(1.0, 2 * M_PI / k);
                   for (int t = 0; t < 20; ++t) {
                     const auto pt = qcomm_canonical_irreducible(q, std::polar(rad(rng), ang(rng)),
                                                                 std::polar(rad(rng), ang(rng)));
                     const double res = oracle::op_norm(pt[0] * pt[1] - q * pt[1] * pt[0]);
                     l.expect(res <= 1e-12, "k = " + std::to_string(k) + " relation residual " + std::to_string(res));
                     l.expect(is_irreducible(pt), "k = " + std::to_string(k) + " irreducible");
                   }
                 }
                 for (Index n = 2; n <= 4; ++n) {
                   const auto rep = qcomm_reducibility_probe(std::exp(1.0), n, 200, 303);
                   l.expect(rep.irreducible_found == 0,
                            "q = e, n = " + std::to_string(n) + ": " + std::to_string(rep.irreducible_found) +
                                " irreducible samples");
                   l.expect(rep.max_relation_residual <= 1e-10, "q = e samples satisfy the relation");
                 }
               }});

  c.push_back({"AC4", "x^2 example: coisometry, sqrt(delta) family, unitary image radius", 1.0, [](Ledger& l) {
                 const MatrixTuple u({unit(2, 0, 1), unit(2, 1, 0)});
                 l.near(row_norm(u), 1.0, 1e-12, "row norm of (E12, E21)");
                 l.near(jsr(u), 1.0, 1e-9, "jsr of (E12, E21)");
                 for (int i = 1; i <= 9; ++i) {
                   const double delta = 0.1 * i, eps = std::sqrt(1 - delta * delta);
                   const MatrixTuple x({eps * std::polar(1.0, -0.7) * unit(2, 0, 1),
                                        delta * (unit(2, 0, 1) + unit(2, 1, 0))});
                   l.near(jsr(x), std::sqrt(delta), 1e-9, "family jsr at delta " + std::to_string(delta));
                   CMatrix a(2, 2);
                   a << std::polar(1.0, 0.3), 0.0, 0.0, 1.0;
                   l.near(jsr(linear_change(a, x)), std::sqrt(delta) * std::pow(delta * delta + eps * eps, 0.25), 1e-9,
                          "unitary image jsr at delta " + std::to_string(delta));
                 }
               }});

  c.push_back({"AC5", "unboundedness of f(X)^-1 X f(X), f = (1 - z1)^2", 0.010, [](Ledger& l) {
                 const double mu = 0.1;
                 double prev = 0.0;
                 for (double lambda : {0.9, 0.99, 0.999}) {
                   const double a = 0.5 * std::sqrt(1 - lambda * lambda);
                   CMatrix x1 = CMatrix::Zero(2, 2), x2 = CMatrix::Zero(2, 2);
                   x1(0, 0) = lambda;
                   x1(1, 1) = mu;
                   x2(0, 1) = a;
                   const MatrixTuple x({x1, x2});
                   l.expect(row_norm(x) < 1.0, "X in the ball");
                   const CMatrix f = evaluate(parse_polynomial("(1-z1)^2", 2), x);
                   const double g = oracle::op_norm(f.inverse() * x2 * f);
                   l.expect(g > 0.5 * (1 - mu) * (1 - mu) / (1 - lambda),
                            "lambda " + std::to_string(lambda) + ": norm " + std::to_string(g) + " below the bound");
                   if (prev > 0) l.expect(g >= 8 * prev, "growth factor " + std::to_string(g / prev));
                   prev = g;
                 }
               }});

  c.push_back({"AC6", "row norm of the Perron similarity target equals jsr (100 irreducible tuples)", 30.0,
               [](Ledger& l) {
                 std::mt19937_64 rng(606);
                 std::uniform_real_distribution<double> radius(0.05, 0.95);
                 for (int i = 0; i < 100; ++i) {
                   const std::size_t d = 2 + i % 2;
                   const Index n = 1 + i % 6;
                   const auto x = oracle::with_jsr(oracle::random_tuple(d, n, rng), radius(rng));
                   l.expect(is_irreducible(x), "sample is irreducible");
                   const auto cert = similarize_to_strict_contraction(x);
                   l.near(row_norm(cert.target), oracle::jsr(x), 1e-7, "sample " + std::to_string(i));
                   l.expect(max_distance(conjugate(x, cert.S), cert.target) <= 1e-8, "certificate reproduces target");
                 }
               }});

  c.push_back({"AC7", "property suites: similarity, block max rule, convergence, purity, JH, evaluation", 60.0,
               [](Ledger& l) {
                 std::mt19937_64 rng(707);
                 for (int i = 0; i < 100; ++i) {
                   const auto x = oracle::random_tuple(1 + i % 3, 1 + i % 5, rng);
                   const CMatrix s = oracle::well_conditioned(x.n(), rng, 0.9);
                   const double cond = linalg::condition_number(s);
                   const double r = jsr(x);
                   l.expect(std::abs(jsr(conjugate(x, s)) - r) <= 1e-8 * cond * std::max(1.0, r), "similarity");
                   const auto y = oracle::random_tuple(x.d(), 1 + i % 3, rng);
                   const double blk = jsr(oracle::upper_assembly(x, y, rng));
                   l.expect(std::abs(blk - std::max(r, jsr(y))) <= 1e-9 * std::max(1.0, blk), "block max rule");
                   const auto seq = jsr_iterative(x, 200);
                   l.expect(std::abs(seq.back() - r) <= 0.05, "jsr_iterative convergence");
                 }
                 std::uniform_real_distribution<double> inside(0.1, 0.95), outside(1.05, 1.6);
                 for (int i = 0; i < 200; ++i) {
                   const double target = i % 2 ? inside(rng) : outside(rng);
                   const auto x = oracle::with_jsr(oracle::random_tuple(1 + i % 3, 1 + i % 4, rng), target);
                   CMatrix t = CMatrix::Identity(x.n(), x.n());
                   for (int k = 0; k < 2000 && t.norm() > 1e-30 && t.norm() < 1e6; ++k) t = apply_cp(x, t);
                   l.expect(is_pure(x) == (oracle::op_norm(t) < 1e-6), "purity cross-check");
                 }
                 for (int i = 0; i < 50; ++i) {
                   const std::size_t d = 2;
                   const auto a = oracle::random_tuple(d, 1 + i % 3, rng);
                   const auto b = oracle::random_tuple(d, 1 + (i / 3) % 3, rng);
                   const auto x = oracle::upper_assembly(a, b, rng);
                   auto ours = sigma_jh(x);
                   auto theirs = sigma_jh(conjugate(x, oracle::well_conditioned(x.n(), rng)));
                   bool matched = ours.size() == theirs.size();
                   for (const auto& blk : ours) {
                     auto it = std::find_if(theirs.begin(), theirs.end(), [&](const MatrixTuple& o) {
                       return o.n() == blk.n() && are_similar(blk, o).status == SimilarityStatus::Similar;
                     });
                     if (it == theirs.end()) {
                       matched = false;
                       break;
                     }
                     theirs.erase(it);
                   }
                   l.expect(matched, "JH multiset invariance, assembly " + std::to_string(i));
                 }
                 for (int i = 0; i < 200; ++i) {
                   const std::size_t d = 1 + i % 3;
                   const Index n = 1 + i % 4;
                   const auto p = oracle::random_polynomial(d, 3, 5, rng);
                   const auto q = oracle::random_polynomial(d, 2, 4, rng);
                   const auto x = oracle::random_tuple(d, n, rng) * cplx(0.5);
                   const auto y = oracle::random_tuple(d, 2, rng) * cplx(0.5);
                   const CMatrix px = evaluate(p, x), qx = evaluate(q, x);
                   const double sc = (1 + px.norm()) * (1 + qx.norm());
                   l.expect((evaluate(p * q, x) - px * qx).norm() <= 1e-11 * sc, "homomorphism");
                   const CMatrix ds = evaluate(p, direct_sum(x, y));
                   l.expect((ds.topLeftCorner(n, n) - px).norm() <= 1e-12 * sc &&
                                (ds.bottomRightCorner(2, 2) - evaluate(p, y)).norm() <= 1e-12 * (1 + ds.norm()),
                            "direct sum");
                   const CMatrix s = oracle::well_conditioned(n, rng);
                   const double cond = linalg::condition_number(s);
                   l.expect((evaluate(p, conjugate(x, s)) - s.inverse() * px * s).norm() <= 1e-11 * cond * cond * sc,
                            "similarity");
                 }
               }});

  c.push_back({"AC8", "Fock multiplier norms: homogeneous identity and dominance", 60.0, [](Ledger& l) {
                 std::mt19937_64 rng(808);
                 for (int i = 0; i < 100; ++i) {
                   const std::size_t d = 1 + i % 3, deg = 1 + (i / 3) % 4;
                   const auto p = oracle::random_polynomial(d, deg, 1 + i % 6, rng, true);
                   l.near(multiplier_norm(p, deg + 1), p.coefficient_norm(), 1e-12 * std::max(1.0, p.coefficient_norm()),
                          "homogeneous sample " + std::to_string(i));
                 }
                 for (int i = 0; i < 100; ++i) {
                   const std::size_t d = 1 + i % 3, deg = 1 + (i / 3) % 4;
                   const auto p = oracle::random_polynomial(d, deg, 4, rng);
                   auto x = oracle::random_tuple(d, 1 + i % 4, rng);
                   x = x * cplx(0.99 / row_norm(x));
                   const double lhs = oracle::op_norm(evaluate(p, x));
                   const double rhs = multiplier_norm(p, *p.degree() + 6);
                   l.expect(lhs <= rhs * 1.05, "dominance sample " + std::to_string(i) + ": " + std::to_string(lhs) +
                                                   " vs " + std::to_string(rhs));
                 }
               }});

  c.push_back({"AC9", "delta lower bound anchors", 30.0, [](Ledger& l) {
                 std::mt19937_64 rng(909);
                 std::uniform_real_distribution<double> radius(0.05, 0.99);
                 DeltaOptions opts;
                 opts.degree = 1;
                 for (int i = 0; i < 100; ++i) {
                   const std::size_t d = 1 + i % 3;
                   auto x = oracle::random_tuple(d, 1 + i % 4, rng);
                   x = x * cplx(radius(rng) / row_norm(x));
                   opts.seed = static_cast<std::uint64_t>(i);
                   const double b = delta_lower_bound(MatrixTuple::zero(d, x.n()), x, opts).value;
                   const double sup = oracle::linear_sup_sampled(x, 400, rng);
                   l.expect(b >= sup - 1e-9, "at least the sampled linear supremum");
                   l.expect(b <= row_norm(x) + 1e-9, "at most ||X||");
                   l.expect(b <= 2 + 1e-9, "at most 2");
                 }
                 std::uniform_real_distribution<double> coord(-0.7, 0.7);
                 for (int i = 0; i < 50; ++i) {
                   const cplx a(coord(rng), coord(rng)), b(coord(rng), coord(rng));
                   const double v = delta_lower_bound(MatrixTuple::scalar(std::vector<cplx>{a}),
                                                      MatrixTuple::scalar(std::vector<cplx>{b}), opts)
                                        .value;
                   l.near(v, std::abs(a - b), 1e-14, "scalar pair");
                 }
               }});
  return c;
}

}  // namespace

int main() {
  int failed = 0;
  for (const auto& crit : criteria()) {
    Ledger l;
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      crit.body(l);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < crit.budget_seconds;
    const bool ok = error.empty() && l.failures.empty() && in_time;
    std::printf("[%s] %s %s (%zu checks, %.4f s, budget %.3f s)\n", ok ? "PASS" : "FAIL", crit.id.c_str(),
                crit.title.c_str(), l.checks, secs, crit.budget_seconds);
    if (!error.empty()) std::printf("       exception: %s\n", error.c_str());
    if (!in_time) std::printf("       over the runtime budget\n");
    for (const auto& f : l.failures)
      if (!f.empty()) std::printf("       %s\n", f.c_str());
    if (l.failures.size() > 5) std::printf("       ... %zu failures in total\n", l.failures.size());
    failed += ok ? 0 : 1;
  }
  std::printf("%s\n", failed ? "ACCEPTANCE FAILED" : "ALL ACCEPTANCE CRITERIA PASSED");
  return failed ? 1 : 0;
}
