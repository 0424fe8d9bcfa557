#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncball/linalg.hpp"

namespace ncball {

class MatrixTuple;

/// A word in the free monoid on d generators, stored as 0-based letter
/// indices. Words are ordered by length first, then lexicographically.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::uint32_t> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<std::uint32_t> letters) : letters_(letters) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::uint32_t operator[](std::size_t i) const { return letters_[i]; }
  std::span<const std::uint32_t> letters() const noexcept { return letters_; }

  /// Concatenation; z^u z^v = z^{uv}.
  Word operator*(const Word& rhs) const;

  std::strong_ordering operator<=>(const Word& rhs) const;
  bool operator==(const Word& rhs) const = default;

 private:
  std::vector<std::uint32_t> letters_;
};

/// All d^k words of length k in canonical order.
std::vector<Word> words_of_length(std::size_t d, std::size_t k);

/// Polynomial in d noncommuting variables with complex coefficients.
/// Immutable once built; zero coefficients are never stored.
class FreePolynomial {
 public:
  using Terms = std::map<Word, cplx>;

  explicit FreePolynomial(std::size_t d);
  /// Throws InvalidArgument if a word uses a letter >= d.
  FreePolynomial(std::size_t d, Terms terms);

  static FreePolynomial constant(std::size_t d, cplx c);
  /// The generator z_{index+1}.
  static FreePolynomial variable(std::size_t d, std::uint32_t index);
  static FreePolynomial monomial(std::size_t d, Word word, cplx c = 1.0);

  std::size_t d() const noexcept { return d_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Maximum word length in the support; nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const;
  cplx coefficient(const Word& w) const;
  /// sqrt(sum |a_k|^2).
  double coefficient_norm() const;
  /// True if every term has the same length (the zero polynomial counts).
  bool is_homogeneous() const;

  FreePolynomial homogeneous_component(std::size_t n) const;

  FreePolynomial operator+(const FreePolynomial& rhs) const;
  FreePolynomial operator-(const FreePolynomial& rhs) const;
  FreePolynomial operator-() const;
  FreePolynomial operator*(const FreePolynomial& rhs) const;
  FreePolynomial operator*(cplx c) const;
  friend FreePolynomial operator*(cplx c, const FreePolynomial& p) { return p * c; }
  FreePolynomial pow(unsigned k) const;

  bool operator==(const FreePolynomial& rhs) const = default;

 private:
  void require_same_d(const FreePolynomial& rhs) const;

  std::size_t d_;
  Terms terms_;
};

/// Parses the polynomial grammar
///
///   expr    := ['-'] term (('+'|'-') term)*
///   term    := factor ('*' factor)*
///   factor  := atom ('^' uint)?
///   atom    := complex | var | '(' expr ')'
///   var     := 'z' uint | 'x' | 'y'
///   complex := '(' float ('+'|'-') float 'i' ')' | float
///
/// Variables are 1-based (z1..zd); x and y alias z1 and z2. Multiplication
/// must be written explicitly. Throws ParseError.
FreePolynomial parse_polynomial(std::string_view text, std::size_t d);

/// Canonical text form. parse_polynomial(to_string(p), p.d()) == p exactly.
std::string to_string(const FreePolynomial& p);

/// sum_k a_k X^k, with X^{empty} = I. Throws DimensionMismatch if d differs.
CMatrix evaluate(const FreePolynomial& p, const MatrixTuple& x);

/// Product X_{w_1} ... X_{w_k}.
CMatrix word_product(const Word& w, const MatrixTuple& x);

}  // namespace ncball
