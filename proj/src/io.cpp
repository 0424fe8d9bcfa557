#include "ncball/io.hpp"

#include <fstream>

#include "ncball/errors.hpp"

namespace ncball {

namespace {

/// Runs `f`, turning schema errors from the JSON library into InputError.
template <typename F>
auto schema(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json polynomial_to_json(const FreePolynomial& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms()) {
    json word = json::array();
    for (auto letter : w.letters()) word.push_back(letter);
    terms.push_back({{"word", word}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"d", p.d()}, {"terms", terms}};
}

FreePolynomial polynomial_from_json(const json& j) {
  return schema("polynomial JSON", [&] {
    const auto d = j.at("d").get<std::size_t>();
    FreePolynomial::Terms terms;
    for (const auto& t : j.at("terms")) {
      Word w(t.at("word").get<std::vector<std::uint32_t>>());
      const cplx c(t.at("re").get<double>(), t.at("im").get<double>());
      if (!terms.emplace(std::move(w), c).second) throw InputError("polynomial JSON: repeated word");
    }
    try {
      return FreePolynomial(d, std::move(terms));
    } catch (const InvalidArgument& e) {
      throw InputError(std::string("polynomial JSON: ") + e.what());
    }
  });
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  return schema("matrix JSON", [&] {
    if (!j.is_array() || j.empty()) throw InputError("matrix JSON: expected a nonempty array of rows");
    const Index rows = static_cast<Index>(j.size());
    const Index cols = static_cast<Index>(j.at(0).size());
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      const auto& row = j.at(static_cast<std::size_t>(i));
      if (!row.is_array() || static_cast<Index>(row.size()) != cols)
        throw InputError("matrix JSON: ragged rows");
      for (Index k = 0; k < cols; ++k) {
        const auto& e = row.at(static_cast<std::size_t>(k));
        if (e.is_number())
          m(i, k) = cplx(e.get<double>(), 0.0);
        else if (e.is_array() && e.size() == 2)
          m(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        else
          throw InputError("matrix JSON: entries must be [re, im] pairs");
      }
    }
    return m;
  });
}

json tuple_to_json(const MatrixTuple& x) {
  json mats = json::array();
  for (const auto& m : x.matrices()) mats.push_back(matrix_to_json(m));
  return {{"d", x.d()}, {"n", x.n()}, {"matrices", mats}};
}

MatrixTuple tuple_from_json(const json& j) {
  return schema("tuple JSON", [&] {
    const auto d = j.at("d").get<std::size_t>();
    const auto n = j.at("n").get<Index>();
    const auto& mats = j.at("matrices");
    if (!mats.is_array() || mats.size() != d)
      throw InputError("tuple JSON: expected " + std::to_string(d) + " matrices");
    std::vector<CMatrix> ms;
    for (const auto& m : mats) {
      CMatrix c = matrix_from_json(m);
      if (c.rows() != n || c.cols() != n)
        throw InputError("tuple JSON: every matrix must be " + std::to_string(n) + "x" + std::to_string(n));
      ms.push_back(std::move(c));
    }
    return MatrixTuple(std::move(ms));
  });
}

json variety_to_json(const IdealSpec& spec) {
  json gens = json::array();
  for (const auto& g : spec.generators()) gens.push_back(to_string(g));
  return {{"d", spec.d()}, {"generators", gens}, {"homogeneous", spec.homogeneous()}};
}

IdealSpec variety_from_json(const json& j) {
  return schema("variety JSON", [&] {
    const auto d = j.at("d").get<std::size_t>();
    std::vector<FreePolynomial> gens;
    for (const auto& g : j.at("generators")) gens.push_back(parse_polynomial(g.get<std::string>(), d));
    if (j.contains("homogeneous")) {
      try {
        return IdealSpec(d, std::move(gens), j.at("homogeneous").get<bool>());
      } catch (const InvalidArgument& e) {
        throw InputError(std::string("variety JSON: ") + e.what());
      }
    }
    return IdealSpec(d, std::move(gens));
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

}  // namespace ncball
