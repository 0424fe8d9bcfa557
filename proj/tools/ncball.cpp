// ncball: command-line front end for nc-ball computations on matrix tuples.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ncball/config.hpp"
#include "ncball/errors.hpp"
#include "ncball/fock.hpp"
#include "ncball/io.hpp"
#include "ncball/spectral.hpp"
#include "ncball/structure.hpp"
#include "ncball/variety.hpp"
#include "ncball/verify.hpp"

using namespace ncball;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInput = 2, kPrecondition = 3, kNumerical = 4 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return kInput;
    case ErrorKind::Precondition: return kPrecondition;
    case ErrorKind::Numerical: return kNumerical;
  }
  return kNumerical;
}

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Numerical: return "numerical";
  }
  return "?";
}

struct Globals {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string config_path;
  bool json_mode = false;
};

/// Which tolerance --tol / NCBALL_TOL controls for a given command.
enum class TolTarget { None, Boundary, Rank, Vanish, Coisometry, JH };

Config resolve_config(const Globals& g, TolTarget target) {
  Config cfg = g.config_path.empty() ? Config{} : load_config_file(g.config_path);
  const auto env = read_environment();
  std::optional<double> tol = g.tol ? g.tol : env.tol;
  if (g.seed) cfg.seed = *g.seed;
  else if (env.seed) cfg.seed = *env.seed;
  if (tol) {
    if (!(*tol > 0.0)) throw InputError("tolerance must be positive");
    switch (target) {
      case TolTarget::None: break;
      case TolTarget::Boundary: cfg.boundary_tol = *tol; break;
      case TolTarget::Rank: cfg.rank_tol = *tol; break;
      case TolTarget::Vanish: cfg.vanish_tol = *tol; break;
      case TolTarget::Coisometry: cfg.coisometry_tol = *tol; break;
      case TolTarget::JH: cfg.jh_residual = *tol; break;
    }
  }
  return cfg;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string matrix_text(const CMatrix& m) {
  std::ostringstream os;
  os << std::setprecision(8);
  for (Index i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (Index k = 0; k < m.cols(); ++k) {
      const cplx z = m(i, k);
      os << (k ? ", " : "") << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
    os << "]\n";
  }
  return os.str();
}

std::string tuple_text(const MatrixTuple& x) {
  std::ostringstream os;
  for (std::size_t j = 0; j < x.d(); ++j) os << " X" << j + 1 << ":\n" << matrix_text(x[j]);
  return os.str();
}

MatrixTuple load_tuple(const std::string& path) { return tuple_from_json(read_json_file(path)); }

/// Number of variables mentioned in polynomial text (largest z-index, with x
/// and y counting as z1 and z2).
std::size_t infer_vars(const std::string& text) {
  std::size_t d = 1;
  static const std::regex var(R"(z(\d+))");
  for (std::sregex_iterator it(text.begin(), text.end(), var), end; it != end; ++it)
    d = std::max<std::size_t>(d, std::stoul((*it)[1].str()));
  if (text.find('y') != std::string::npos) d = std::max<std::size_t>(d, 2);
  return d;
}

IdealSpec parse_variety(const std::string& arg) {
  auto parse_q = [](const std::string& s) {
    const FreePolynomial c = parse_polynomial(s, 1);
    if (c.degree().value_or(0) > 0) throw InputError("variety parameter must be a constant: " + s);
    return c.coefficient(Word{});
  };
  if (arg.rfind("qcomm:", 0) == 0) return qcomm_spec(parse_q(arg.substr(6)));
  if (arg.rfind("wcomm:", 0) == 0) return wcomm_spec(parse_q(arg.substr(6)));
  return variety_from_json(read_json_file(arg));
}

json certificate_json(const SimilarityCertificate& c) {
  return {{"kind", to_string(c.kind)},
          {"S", matrix_to_json(c.S)},
          {"target", tuple_to_json(c.target)},
          {"residual", c.residual},
          {"condition", c.condition},
          {"target_row_norm", row_norm(c.target)}};
}

/// Output of one command: machine form plus human text.
struct Result {
  json data;
  std::string text;
  int code = kOk;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations on matrix tuples and the noncommutative row ball"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Tolerance for the decision the command makes");
  app.add_option("--seed", g.seed, "Seed for randomised steps");
  app.add_option("--config", g.config_path, "JSON file with tolerance overrides");
  app.add_flag("--json", g.json_mode, "Machine-readable output");

  std::function<Result()> action;

  std::string poly_text, tuple_path, tuple_path2, variety_arg, filter, fault;
  std::size_t cutoff = 0, iterations = 0, vars = 0, degree = 1, trials = 64;
  bool check = false, envelope = false;

  auto* eval = app.add_subcommand("eval", "Evaluate a polynomial on a tuple");
  eval->add_option("polynomial", poly_text)->required();
  eval->add_option("tuple", tuple_path)->required();
  eval->callback([&] {
    action = [&] {
      const MatrixTuple x = load_tuple(tuple_path);
      const CMatrix v = evaluate(parse_polynomial(poly_text, x.d()), x);
      return Result{{{"polynomial", poly_text}, {"n", x.n()}, {"value", matrix_to_json(v)}}, matrix_text(v)};
    };
  });

  auto* jsr_cmd = app.add_subcommand("jsr", "Joint spectral radius");
  jsr_cmd->add_option("tuple", tuple_path)->required();
  jsr_cmd->add_option("--iterations", iterations, "Also report ||Psi^k(I)||^(1/2k) for k up to this");
  jsr_cmd->callback([&] {
    action = [&] {
      const MatrixTuple x = load_tuple(tuple_path);
      const double r = jsr(x);
      json out{{"jsr", r}};
      std::string text = "jsr " + num(r) + "\n";
      if (iterations > 0) {
        const auto seq = jsr_iterative(x, iterations);
        out["iterative"] = seq;
        text += "iterative estimate at k=" + std::to_string(iterations) + ": " + num(seq.back()) + "\n";
      }
      return Result{out, text};
    };
  });

  auto* pure = app.add_subcommand("pure", "Classify a tuple as pure, boundary or outside");
  pure->add_option("tuple", tuple_path)->required();
  pure->callback([&] {
    action = [&] {
      const Config cfg = resolve_config(g, TolTarget::Boundary);
      const double r = jsr(load_tuple(tuple_path));
      const Region region = classify(r, cfg);
      json verdict = region == Region::Interior ? json(true) : region == Region::Exterior ? json(false) : json(nullptr);
      return Result{{{"jsr", r}, {"region", to_string(region)}, {"pure", verdict}},
                    std::string(to_string(region)) + " (jsr " + num(r) + ")\n"};
    };
  });

  auto* sim = app.add_subcommand("similarize", "Similarity onto a strict row contraction");
  sim->add_option("tuple", tuple_path)->required();
  sim->add_flag("--check", check, "Recompute the row norm of the target");
  sim->callback([&] {
    action = [&] {
      const Config cfg = resolve_config(g, TolTarget::Boundary);
      const MatrixTuple x = load_tuple(tuple_path);
      const auto cert = similarize_to_strict_contraction(x, cfg);
      json out = certificate_json(cert);
      out["jsr"] = jsr(x);
      std::string text = std::string("certificate ") + to_string(cert.kind) + ", row norm of target " +
                         num(row_norm(cert.target)) + ", cond(S) " + num(cert.condition) + "\n";
      int code = kOk;
      if (check) {
        const MatrixTuple recomputed = conjugate(x, cert.S, cfg);
        const double rn = row_norm(recomputed);
        const bool ok = rn < 1.0;
        out["check"] = {{"row_norm", rn}, {"passed", ok}};
        text += "check: row norm " + num(rn) + (ok ? " < 1" : " NOT < 1") + "\n";
        if (!ok) code = kNumerical;
      }
      return Result{out, text + tuple_text(cert.target), code};
    };
  });

  auto* cois = app.add_subcommand("coisometrize", "Similarity onto a row coisometry (irreducible, jsr = 1)");
  cois->add_option("tuple", tuple_path)->required();
  cois->callback([&] {
    action = [&] {
      const Config cfg = resolve_config(g, TolTarget::Boundary);
      const auto cert = similarize_to_coisometry(load_tuple(tuple_path), cfg);
      return Result{certificate_json(cert), "coisometry found, cond(S) " + num(cert.condition) + "\n" +
                                                tuple_text(cert.target)};
    };
  });

  auto* jh = app.add_subcommand("jh", "Block upper triangular form with irreducible diagonal blocks");
  jh->add_option("tuple", tuple_path)->required();
  jh->callback([&] {
    action = [&] {
      const Config cfg = resolve_config(g, TolTarget::JH);
      const auto dec = jordan_holder(load_tuple(tuple_path), cfg);
      json blocks = json::array();
      std::string text = std::to_string(dec.blocks.size()) + " block(s), sizes";
      for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
        blocks.push_back(tuple_to_json(dec.blocks[i]));
        text += " " + std::to_string(dec.block_sizes[i]);
      }
      text += ", residual " + num(dec.residual) + "\n";
      return Result{{{"S", matrix_to_json(dec.S)},
                     {"block_sizes", dec.block_sizes},
                     {"blocks", blocks},
                     {"residual", dec.residual}},
                    text};
    };
  });

  auto* irred = app.add_subcommand("irred", "Irreducibility test");
  irred->add_option("tuple", tuple_path)->required();
  irred->callback([&] {
    action = [&] {
      const Config cfg = resolve_config(g, TolTarget::Rank);
      const MatrixTuple x = load_tuple(tuple_path);
      const auto basis = algebra_basis(x, cfg.rank_tol);
      const bool irreducible = static_cast<Index>(basis.size()) == x.n() * x.n();
      json out{{"irreducible", irreducible}, {"algebra_dimension", basis.size()}};
      std::string text = std::string(irreducible ? "irreducible" : "reducible") + " (algebra dimension " +
                         std::to_string(basis.size()) + ")\n";
      if (!irreducible) {
        if (const auto q = find_invariant_subspace(x, cfg)) {
          out["invariant_subspace"] = matrix_to_json(*q);
          text += "invariant subspace of dimension " + std::to_string(q->cols()) + "\n";
        }
      }
      return Result{out, text};
    };
  });

  auto* similar = app.add_subcommand("similar", "Search for S with S^-1 X S = Y");
  similar->add_option("x", tuple_path)->required();
  similar->add_option("y", tuple_path2)->required();
  similar->callback([&] {
    action = [&] {
      const Config cfg = resolve_config(g, TolTarget::Rank);
      const auto res = are_similar(load_tuple(tuple_path), load_tuple(tuple_path2), cfg);
      const char* status = res.status == SimilarityStatus::Similar      ? "similar"
                           : res.status == SimilarityStatus::NotSimilar ? "not-similar"
                                                                        : "inconclusive";
      json out{{"status", status}, {"kernel_dim", res.kernel_dim}, {"residual", res.residual}};
      out["S"] = res.S ? matrix_to_json(*res.S) : json(nullptr);
      return Result{out, std::string(status) + " (intertwiner space dimension " + std::to_string(res.kernel_dim) +
                             ")\n"};
    };
  });

  auto* member = app.add_subcommand("member", "Variety membership");
  member->add_option("--variety", variety_arg, "qcomm:Q, wcomm:Q or a variety JSON file")->required();
  member->add_option("tuple", tuple_path)->required();
  member->add_flag("--envelope", envelope, "Test membership in the similarity envelope (needs jsr < 1)");
  member->callback([&] {
    action = [&] {
      const Config cfg = resolve_config(g, TolTarget::Vanish);
      const IdealSpec spec = parse_variety(variety_arg);
      const MatrixTuple x = load_tuple(tuple_path);
      const bool vanishes = vanishes_on(spec, x, cfg);
      json out{{"vanishes", vanishes}, {"relative_residual", relative_residual(spec, x)}};
      std::string text = std::string(vanishes ? "annihilates" : "does not annihilate") + " the generators\n";
      if (envelope) {
        const bool inside = in_envelope(spec, x, cfg);
        const double r = jsr(x);
        out["jsr"] = r;
        out["in_envelope"] = inside;
        text += std::string(inside ? "in" : "not in") + " the envelope (jsr " + num(r) + ")\n";
      }
      return Result{out, text};
    };
  });

  auto* norm = app.add_subcommand("norm", "Multiplier norm on the truncated Fock space");
  norm->add_option("polynomial", poly_text)->required();
  norm->add_option("--cutoff", cutoff, "Word-length cutoff (default: degree + 2)");
  norm->add_option("--vars", vars, "Number of variables (default: inferred from the text)");
  norm->callback([&] {
    action = [&] {
      const Config cfg = resolve_config(g, TolTarget::None);
      const FreePolynomial p = parse_polynomial(poly_text, vars ? vars : infer_vars(poly_text));
      const std::size_t n = cutoff ? cutoff : p.degree().value_or(0) + 2;
      const double v = multiplier_norm(p, n, cfg);
      const double ub = multiplier_norm_upper_bound(p);
      return Result{{{"polynomial", to_string(p)}, {"cutoff", n}, {"norm", v}, {"upper_bound", ub}},
                    "norm " + num(v) + " at cutoff " + std::to_string(n) + " (upper bound " + num(ub) + ")\n"};
    };
  });

  auto* delta = app.add_subcommand("delta", "Lower bound for the pseudo-hyperbolic distance");
  delta->add_option("x", tuple_path)->required();
  delta->add_option("y", tuple_path2)->required();
  delta->add_option("--degree", degree, "Largest degree of the candidate polynomials")->check(CLI::PositiveNumber);
  delta->add_option("--trials", trials, "Random candidates per degree");
  delta->callback([&] {
    action = [&] {
      const Config cfg = resolve_config(g, TolTarget::Boundary);
      DeltaOptions opts;
      opts.degree = degree;
      opts.trials = trials;
      opts.seed = cfg.seed;
      const auto b = delta_lower_bound(load_tuple(tuple_path), load_tuple(tuple_path2), opts, cfg);
      return Result{{{"lower_bound", b.value}, {"level", b.level}, {"witness", to_string(b.witness)}},
                    "delta >= " + num(b.value) + " (witness " + to_string(b.witness) + ")\n"};
    };
  });

  auto* verify = app.add_subcommand("verify-paper", "Run the reproduction checks");
  verify->add_option("--filter", filter, "Only checks whose id contains this string");
  verify->add_option("--inject-fault", fault)->group("");
  verify->callback([&] {
    action = [&] {
      const Config cfg = resolve_config(g, TolTarget::None);
      const auto report = run_verification({filter, fault}, cfg);
      return Result{report_to_json(report), report_to_text(report),
                    report.all_passed() ? kOk : kVerifyFailed};
    };
  });

  // Known before parsing, so that parse errors honour machine mode too.
  for (int i = 1; i < argc; ++i)
    if (std::string_view(argv[i]) == "--json") g.json_mode = true;

  auto fail = [&](const std::string& name, const char* kind, const std::string& message, int code) {
    if (g.json_mode)
      std::cout << json{{"error", {{"type", name}, {"kind", kind}, {"message", message}}}}.dump(2) << '\n';
    else
      std::cerr << "error: " << message << '\n';
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", "input", e.what(), kInput);
  }

  try {
    const Result r = action();
    if (g.json_mode) std::cout << r.data.dump(2) << '\n';
    else std::cout << r.text;
    return r.code;
  } catch (const Error& e) {
    return fail(e.name(), kind_name(e.kind()), e.what(), exit_code(e.kind()));
  } catch (const json::exception& e) {
    return fail("InputError", "input", e.what(), kInput);
  } catch (const std::exception& e) {
    return fail("InternalError", "numerical", e.what(), kNumerical);
  }
}
