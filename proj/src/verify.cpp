#include "ncball/verify.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "ncball/fock.hpp"
#include "ncball/spectral.hpp"
#include "ncball/structure.hpp"
#include "ncball/variety.hpp"

namespace ncball {

namespace {

using std::numbers::sqrt2;
constexpr cplx kI(0.0, 1.0);

struct CheckDef {
  std::string id;
  std::string anchor;
  std::string description;
  Relation relation;
  double expected;
  double tolerance;
  std::function<double(const Config&)> compute;
};

CMatrix unit(Index n, Index i, Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

MatrixTuple x0y0() {
  CMatrix x(2, 2), y(2, 2);
  x << 1.0, 0.0, 0.0, -1.0;
  y << 0.0, kI, 1.0, 0.0;
  return MatrixTuple({x, y});
}

double max_entry_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Pair from the x^2 example: (eps e^{-i theta} E12, delta (E12 + E21)).
MatrixTuple x2_family(double delta, double theta) {
  const double eps = std::sqrt(1.0 - delta * delta);
  return MatrixTuple({eps * std::polar(1.0, -theta) * unit(2, 0, 1), delta * (unit(2, 0, 1) + unit(2, 1, 0))});
}

// Image of a pair under A = [[a, 0], [c, 1]] acting on the coordinates.
MatrixTuple lower_triangular_image(const MatrixTuple& x, cplx a, cplx c) {
  CMatrix m(2, 2);
  m << a, 0.0, c, 1.0;
  return linear_change(m, x);
}

// Second coordinate of f(X)^-1 X f(X) with f = (1 - z1)^2.
double holo_norm(double lambda, double mu) {
  const double a = 0.5 * std::sqrt(1.0 - lambda * lambda);
  CMatrix x1 = CMatrix::Zero(2, 2), x2 = CMatrix::Zero(2, 2);
  x1(0, 0) = lambda;
  x1(1, 1) = mu;
  x2(0, 1) = a;
  const MatrixTuple x({x1, x2});
  const CMatrix f = evaluate(parse_polynomial("(1-z1)^2", 2), x);
  return linalg::op_norm(f.partialPivLu().solve(x2 * f));
}

double holo_closed_form(double lambda, double mu) {
  const double a = 0.5 * std::sqrt(1.0 - lambda * lambda);
  return a * std::pow((1.0 - mu) / (1.0 - lambda), 2);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::vector<CheckDef> registry() {
  std::vector<CheckDef> c;
  const std::string qa = "q-commutation varieties: angle change at q = -1";
  const std::string qs = "q-commutation varieties: separating points";
  const std::string qi = "q-commutation varieties: irreducible points";

  c.push_back({"q-comm/psi-matrix", qa, "CP matrix of (X0, Y0) equals the printed 4x4 matrix", Relation::Near,
               0.0, 1e-14, [](const Config&) {
                 CMatrix expect(4, 4);
                 expect << 1, 0, 0, 1, 0, -1, kI, 0, 0, -kI, -1, 0, 1, 0, 0, 1;
                 return max_entry_diff(cp_matrix(x0y0()).mat, expect);
               }});
  c.push_back({"q-comm/psi-matrix-angle", qa, "CP matrix of A(X0, Y0) equals the printed 4x4 matrix",
               Relation::Near, 0.0, 1e-14, [](const Config&) {
                 const double r = 1.0 / sqrt2;
                 CMatrix expect(4, 4);
                 expect << 1, -r * kI, r * kI, 1, r, -1, kI, -r * kI, r, -kI, -1, r * kI, 1, -r, -r, 1;
                 return max_entry_diff(cp_matrix(angle_change_map(x0y0())).mat, expect);
               }});
  c.push_back({"q-comm/psi-radius", qa, "largest eigenvalue modulus of Psi_(X0,Y0)", Relation::Near, 2.0, 1e-9,
               [](const Config&) { return linalg::spectral_radius(cp_matrix(x0y0()).mat); }});
  c.push_back({"q-comm/psi-radius-angle", qa, "largest eigenvalue modulus of Psi_A(X0,Y0)", Relation::Near,
               std::sqrt(3.0), 1e-9,
               [](const Config&) { return linalg::spectral_radius(cp_matrix(angle_change_map(x0y0())).mat); }});
  c.push_back({"q-comm/jsr", qa, "jsr(X0, Y0) = sqrt 2", Relation::Near, sqrt2, 1e-9,
               [](const Config&) { return jsr(x0y0()); }});
  c.push_back({"q-comm/jsr-angle", qa, "jsr(A(X0, Y0)) = 3^(1/4)", Relation::Near, std::pow(3.0, 0.25), 1e-9,
               [](const Config&) { return jsr(angle_change_map(x0y0())); }});
  c.push_back({"q-comm/angle-not-preserved", qa, "|jsr(A(X0,Y0)) - jsr(X0,Y0)| = sqrt 2 - 3^(1/4)", Relation::Near,
               sqrt2 - std::pow(3.0, 0.25), 1e-9,
               [](const Config&) { return std::abs(jsr(angle_change_map(x0y0())) - jsr(x0y0())); }});
  c.push_back({"q-comm/x0y0-in-variety", qa, "(X0, Y0) annihilates z1 z2 + z2 z1", Relation::Near, 1.0, 0.0,
               [](const Config& cfg) { return vanishes_on(qcomm_spec(-1.0), x0y0(), cfg) ? 1.0 : 0.0; }});
  c.push_back({"q-comm/x0y0-outside-envelope", qa, "(X0, Y0) is not in the envelope (jsr > 1)", Relation::Near,
               0.0, 0.0, [](const Config& cfg) { return in_envelope(qcomm_spec(-1.0), x0y0(), cfg) ? 1.0 : 0.0; }});

  c.push_back({"q-comm/separating-point", qs,
               "failures over a 10-point grid: c(diag(q,1), E12) lies in V_q and outside V_p for p not in {q, 1/q}",
               Relation::Near, 0.0, 0.0, [](const Config& cfg) {
                 const std::vector<cplx> grid = {0.5,
                                                 -0.5,
                                                 0.3 * kI,
                                                 cplx(0.2, 0.4),
                                                 cplx(-0.6, 0.1),
                                                 std::polar(1.0, std::numbers::pi / 3),
                                                 std::polar(1.0, 2 * std::numbers::pi / 3),
                                                 -1.0,
                                                 0.9,
                                                 0.1};
                 double failures = 0;
                 for (cplx q : grid) {
                   const cplx scale = 1.0 / (2.0 * std::sqrt(q * q + 1.0));
                   CMatrix x = CMatrix::Zero(2, 2);
                   x(0, 0) = q;
                   x(1, 1) = 1.0;
                   const MatrixTuple pt = MatrixTuple({x, unit(2, 0, 1)}) * scale;
                   if (!(row_norm(pt) < 1.0)) ++failures;
                   if (!vanishes_on(qcomm_spec(q), pt, cfg)) ++failures;
                   for (cplx p : grid) {
                     if (std::abs(p - q) < 1e-12 || std::abs(p * q - 1.0) < 1e-12) continue;
                     if (vanishes_on(qcomm_spec(p), pt, cfg)) ++failures;
                   }
                 }
                 return failures;
               }});

  c.push_back({"q-comm/canonical-k2-is-x0y0", qi, "canonical point (k=2, lambda=1, mu=i) equals (X0, Y0)",
               Relation::Near, 0.0, 0.0,
               [](const Config& cfg) { return max_distance(qcomm_canonical_irreducible(-1.0, 1.0, kI, cfg), x0y0()); }});
  for (int k : {2, 3, 4}) {
    const cplx q = std::polar(1.0, 2 * std::numbers::pi / k);
    const std::string tag = "k" + std::to_string(k);
    c.push_back({"q-comm/canonical-" + tag + "-relation", qi,
                 "canonical point for q of order " + std::to_string(k) + ": ||XY - qYX||", Relation::AtMost, 0.0,
                 1e-12, [q](const Config& cfg) {
                   const auto pt = qcomm_canonical_irreducible(q, cplx(0.7, 0.2), cplx(-0.4, 0.5), cfg);
                   return linalg::op_norm(pt[0] * pt[1] - q * pt[1] * pt[0]);
                 }});
    c.push_back({"q-comm/canonical-" + tag + "-irreducible", qi,
                 "canonical point for q of order " + std::to_string(k) + " is irreducible", Relation::Near, 1.0, 0.0,
                 [q](const Config& cfg) {
                   return is_irreducible(qcomm_canonical_irreducible(q, cplx(0.7, 0.2), cplx(-0.4, 0.5), cfg), cfg)
                              ? 1.0
                              : 0.0;
                 }});
  }
  for (int k : {3, 4}) {
    const cplx q = std::polar(1.0, 2 * std::numbers::pi / k);
    c.push_back({"q-comm/angle-not-preserved-k" + std::to_string(k), qa,
                 "|jsr(A(P)) - jsr(P)| for the canonical point P (lambda = mu = 1) of order " + std::to_string(k),
                 Relation::AtLeast, 1e-3, 0.0, [q](const Config& cfg) {
                   const auto pt = qcomm_canonical_irreducible(q, 1.0, 1.0, cfg);
                   return std::abs(jsr(angle_change_map(pt)) - jsr(pt));
                 }});
  }
  c.push_back({"q-comm/no-irreducible-non-root", qi,
               "irreducible samples of V_q at levels 2..4 for q = e (not a root of unity)", Relation::Near, 0.0, 0.0,
               [](const Config& cfg) {
                 double found = 0;
                 for (Index n = 2; n <= 4; ++n)
                   found += static_cast<double>(qcomm_reducibility_probe(std::exp(1.0), n, 40, cfg.seed, cfg).irreducible_found);
                 return found;
               }});

  const std::string xa = "x^2 variety: rigidity of linear maps";
  c.push_back({"x2/coisometry-row-norm", xa, "row norm of (E12, E21)", Relation::Near, 1.0, 1e-12,
               [](const Config&) { return row_norm(MatrixTuple({unit(2, 0, 1), unit(2, 1, 0)})); }});
  c.push_back({"x2/coisometry-jsr", xa, "jsr of the coisometry (E12, E21)", Relation::Near, 1.0, 1e-9,
               [](const Config&) { return jsr(MatrixTuple({unit(2, 0, 1), unit(2, 1, 0)})); }});
  c.push_back({"x2/cp-matrix", xa, "CP matrix of A(E12, E21) for A = [[a,0],[c,1]] equals the printed form",
               Relation::Near, 0.0, 1e-14, [](const Config&) {
                 const cplx a = std::polar(0.6, 0.9), cc = std::polar(0.8, 0.4);
                 const auto img = lower_triangular_image(MatrixTuple({unit(2, 0, 1), unit(2, 1, 0)}), a, cc);
                 CMatrix expect = CMatrix::Zero(4, 4);
                 expect(0, 3) = std::norm(a) + std::norm(cc);
                 expect(1, 2) = cc;
                 expect(2, 1) = std::conj(cc);
                 expect(3, 0) = 1.0;
                 return max_entry_diff(cp_matrix(img).mat, expect);
               }});
  c.push_back({"x2/cp-radius", xa, "spectral radius of that CP matrix is sqrt(|a|^2 + |c|^2)", Relation::Near,
               std::sqrt(0.25 + 0.49), 1e-9, [](const Config&) {
                 const cplx a = 0.5, cc = std::polar(0.7, 1.1);
                 const auto img = lower_triangular_image(MatrixTuple({unit(2, 0, 1), unit(2, 1, 0)}), a, cc);
                 return linalg::spectral_radius(cp_matrix(img).mat);
               }});
  constexpr double kTheta = 0.7;
  for (int i = 1; i <= 9; ++i) {
    const double delta = 0.1 * i;
    const std::string tag = "0." + std::to_string(i);
    c.push_back({"x2/family-jsr-" + tag, xa, "jsr of the boundary pair at delta = " + tag + " is sqrt(delta)",
                 Relation::Near, std::sqrt(delta), 1e-9, [delta](const Config&) { return jsr(x2_family(delta, kTheta)); }});
    c.push_back({"x2/family-boundary-" + tag, xa, "the pair at delta = " + tag + " has row norm 1",
                 Relation::Near, 1.0, 1e-12, [delta](const Config&) { return row_norm(x2_family(delta, kTheta)); }});
    const double eps = std::sqrt(1.0 - delta * delta);
    c.push_back({"x2/image-unitary-" + tag, xa,
                 "diagonal unitary image (r = 0) has jsr sqrt(delta) (delta^2 + eps^2)^(1/4)", Relation::Near,
                 std::sqrt(delta) * std::pow(delta * delta + eps * eps, 0.25), 1e-9, [delta](const Config&) {
                   return jsr(lower_triangular_image(x2_family(delta, kTheta), std::polar(1.0, 0.3), 0.0));
                 }});
  }
  for (double r : {0.3, 0.6}) {
    const double delta = 0.5, eps = std::sqrt(1.0 - delta * delta);
    const double a_abs = std::sqrt(1.0 - r * r);
    const double expected =
        std::sqrt(delta) * std::pow((delta + r * eps) * (delta + r * eps) + a_abs * a_abs * eps * eps, 0.25);
    const std::string tag = fmt(r);
    c.push_back({"x2/image-general-r" + tag, xa,
                 "image jsr sqrt(delta) ((delta + r eps)^2 + |a|^2 eps^2)^(1/4) at delta = 0.5, r = " + tag,
                 Relation::Near, expected, 1e-9, [=](const Config&) {
                   return jsr(lower_triangular_image(x2_family(delta, kTheta), a_abs * std::polar(1.0, 0.2),
                                                     std::polar(r, kTheta)));
                 }});
    c.push_back({"x2/image-moves-radius-r" + tag, xa, "r > 0 changes the radius away from sqrt(delta)",
                 Relation::AtLeast, 1e-3, 0.0, [=](const Config&) {
                   return std::abs(jsr(lower_triangular_image(x2_family(delta, kTheta), a_abs, std::polar(r, kTheta))) -
                                   std::sqrt(delta));
                 }});
  }

  const std::string ha = "unbounded automorphism G(x) = f(x)^-1 x f(x), f = (1 - x1)^2";
  constexpr double kMu = 0.1;
  const std::vector<double> lambdas = {0.9, 0.99, 0.999};
  for (double lambda : lambdas) {
    const std::string tag = fmt(lambda);
    c.push_back({"holo/closed-form-" + tag, ha, "relative error of ||f(X)^-1 X2 f(X)|| against a((1-mu)/(1-lambda))^2",
                 Relation::AtMost, 0.0, 1e-9, [lambda](const Config&) {
                   return std::abs(holo_norm(lambda, kMu) / holo_closed_form(lambda, kMu) - 1.0);
                 }});
    c.push_back({"holo/exceeds-bound-" + tag, ha, "||f(X)^-1 X2 f(X)|| exceeds (1/2)(1-mu)^2/(1-lambda)",
                 Relation::AtLeast, 0.5 * (1 - kMu) * (1 - kMu) / (1 - lambda), 0.0,
                 [lambda](const Config&) { return holo_norm(lambda, kMu); }});
    c.push_back({"holo/in-ball-" + tag, ha, "X is a strict row contraction", Relation::AtMost, 1.0, 0.0,
                 [lambda](const Config&) {
                   CMatrix x1 = CMatrix::Zero(2, 2), x2 = CMatrix::Zero(2, 2);
                   x1(0, 0) = lambda;
                   x1(1, 1) = kMu;
                   x2(0, 1) = 0.5 * std::sqrt(1.0 - lambda * lambda);
                   return row_norm(MatrixTuple({x1, x2})) + 1e-300;
                 }});
  }
  for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
    const double l0 = lambdas[i], l1 = lambdas[i + 1];
    c.push_back({"holo/growth-" + fmt(l0) + "-" + fmt(l1), ha, "growth factor between consecutive lambda values",
                 Relation::AtLeast, 8.0, 0.0, [=](const Config&) { return holo_norm(l1, kMu) / holo_norm(l0, kMu); }});
  }

  const std::string fa = "multiplier norm of homogeneous polynomials";
  const std::vector<std::pair<std::string, std::size_t>> battery = {
      {"z1*z2 - z2*z1", 2},
      {"z1^3", 2},
      {"(0.5+0.5i)*z1*z2 + 2*z2*z1 - z1*z1", 2},
      {"z1*z2*z1 - z2*z1*z2 + (0-3i)*z2*z2*z2", 2},
      {"z1*z2 + z2*z3 + (0.25-1i)*z3*z1", 3},
      {"0.3*z1 - 0.4*z2", 2},
  };
  for (const auto& [text, d] : battery) {
    c.push_back({"fock/homogeneous: " + text, fa,
                 "max over N = deg..deg+3 of |multiplier_norm - l2 coefficient norm|", Relation::Near, 0.0, 1e-12,
                 [text = text, d = d](const Config& cfg) {
                   const auto p = parse_polynomial(text, d);
                   double worst = 0.0;
                   for (std::size_t n = *p.degree(); n <= *p.degree() + 3; ++n)
                     worst = std::max(worst, std::abs(multiplier_norm(p, n, cfg) - p.coefficient_norm()));
                   return worst;
                 }});
  }
  c.push_back({"fock/commutator-sqrt2", fa, "multiplier norm of z1 z2 - z2 z1", Relation::Near, sqrt2, 1e-12,
               [](const Config& cfg) { return multiplier_norm(parse_polynomial("z1*z2 - z2*z1", 2), 4, cfg); }});

  const std::string da = "pseudo-hyperbolic distance to the origin";
  const std::vector<std::pair<std::string, std::function<MatrixTuple()>>> anchors = {
      {"scalar", [] { return MatrixTuple::scalar(std::vector<cplx>{0.3, cplx(0.1, -0.5)}); }},
      {"scaled-coisometry", [] { return MatrixTuple({unit(2, 0, 1), unit(2, 1, 0)}) * cplx(0.9); }},
      {"ampliated-scalar", [] {
         return direct_sum_power(MatrixTuple::scalar(std::vector<cplx>{cplx(0.2, 0.2), 0.4, -0.1}), 3);
       }},
  };
  for (const auto& [name, make] : anchors) {
    c.push_back({"delta/anchor-" + name, da, "|delta lower bound(0, X) - ||X|||, linear search",
                 Relation::Near, 0.0, 5e-2, [make = make](const Config& cfg) {
                   const MatrixTuple x = make();
                   DeltaOptions opts;
                   opts.degree = 1;
                   opts.trials = 16;
                   opts.seed = cfg.seed;
                   const double bound = delta_lower_bound(MatrixTuple::zero(x.d(), x.n()), x, opts, cfg).value;
                   return std::abs(bound - row_norm(x));
                 }});
  }
  c.push_back({"delta/scalar-pair", da, "d = 1, x = 0.5, y = -0.5: linear search gives |x - y|", Relation::Near, 1.0,
               1e-12, [](const Config& cfg) {
                 DeltaOptions opts;
                 opts.degree = 1;
                 opts.trials = 16;
                 opts.seed = cfg.seed;
                 return delta_lower_bound(MatrixTuple::scalar(std::vector<cplx>{0.5}),
                                          MatrixTuple::scalar(std::vector<cplx>{-0.5}), opts, cfg)
                     .value;
               }});
  return c;
}

bool passes(Relation rel, double expected, double computed, double tol) {
  switch (rel) {
    case Relation::Near: return std::abs(computed - expected) <= tol;
    case Relation::AtMost: return computed <= expected + tol;
    case Relation::AtLeast: return computed >= expected - tol;
  }
  return false;
}

const char* relation_name(Relation rel) {
  switch (rel) {
    case Relation::Near: return "near";
    case Relation::AtMost: return "at-most";
    case Relation::AtLeast: return "at-least";
  }
  return "?";
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::vector<std::string> verification_ids() {
  std::vector<std::string> ids;
  for (const auto& def : registry()) ids.push_back(def.id);
  return ids;
}

VerifyReport run_verification(const VerifyOptions& opts, const Config& cfg) {
  VerifyReport report;
  for (const auto& def : registry()) {
    if (!opts.filter.empty() && def.id.find(opts.filter) == std::string::npos) continue;
    double computed = def.compute(cfg);
    if (def.id == opts.inject_fault) {
      const double kick = 10.0 * (std::abs(def.expected) + def.tolerance + 1.0);
      computed = def.relation == Relation::AtLeast ? def.expected - kick : def.expected + kick;
    }
    report.checks.push_back({def.id, def.anchor, def.description, def.relation, def.expected, computed,
                             def.tolerance, passes(def.relation, def.expected, computed, def.tolerance)});
  }
  return report;
}

json report_to_json(const VerifyReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"id", c.id},
                      {"anchor", c.anchor},
                      {"description", c.description},
                      {"relation", relation_name(c.relation)},
                      {"expected", c.expected},
                      {"computed", c.computed},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed}});
  return {{"status", report.all_passed() ? "pass" : "fail"}, {"checks", checks}};
}

std::string report_to_text(const VerifyReport& report) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& c : report.checks) {
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << "\n       " << c.description << "\n       expected "
       << relation_name(c.relation) << ' ' << std::setprecision(12) << c.expected << " (tol " << c.tolerance
       << "), computed " << c.computed << '\n';
    if (!c.passed) ++failed;
  }
  os << report.checks.size() - failed << '/' << report.checks.size() << " checks passed\n";
  return os.str();
}

}  // namespace ncball
