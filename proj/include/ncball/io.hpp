#pragma once

#include <string>

#include "json.hpp"
#include "ncball/freepoly.hpp"
#include "ncball/mattuple.hpp"
#include "ncball/variety.hpp"

namespace ncball {

using json = nlohmann::json;

/// {"d": int, "terms": [{"word": [int,...], "re": float, "im": float}, ...]}
/// with words in canonical order.
json polynomial_to_json(const FreePolynomial& p);
FreePolynomial polynomial_from_json(const json& j);

/// Rows of [re, im] pairs.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

/// {"d": int, "n": int, "matrices": [matrix, ...]}; doubles round-trip exactly.
json tuple_to_json(const MatrixTuple& x);
MatrixTuple tuple_from_json(const json& j);

/// {"d": int, "generators": [polynomial-text, ...], "homogeneous": bool?}.
/// A given "homogeneous" flag is checked against the generators.
json variety_to_json(const IdealSpec& spec);
IdealSpec variety_from_json(const json& j);

/// Parses a file as JSON; throws InputError on IO or syntax errors.
json read_json_file(const std::string& path);

}  // namespace ncball
