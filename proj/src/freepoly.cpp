#include "ncball/freepoly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "ncball/errors.hpp"
#include "ncball/mattuple.hpp"

namespace ncball {

// ---------------------------------------------------------------------------
// Word

Word Word::operator*(const Word& rhs) const {
  std::vector<std::uint32_t> out;
  out.reserve(letters_.size() + rhs.letters_.size());
  out.insert(out.end(), letters_.begin(), letters_.end());
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

std::strong_ordering Word::operator<=>(const Word& rhs) const {
  if (auto c = letters_.size() <=> rhs.letters_.size(); c != 0) return c;
  return letters_ <=> rhs.letters_;
}

std::vector<Word> words_of_length(std::size_t d, std::size_t k) {
  std::vector<Word> out;
  std::vector<std::uint32_t> letters(k, 0);
  while (true) {
    out.emplace_back(letters);
    // Odometer increment, last letter fastest.
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++letters[pos] < d) break;
      letters[pos] = 0;
      if (pos == 0) return out;
    }
    if (k == 0) return out;
  }
}

// ---------------------------------------------------------------------------
// FreePolynomial

namespace {

void drop_zeros(FreePolynomial::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == cplx(0.0, 0.0); });
}

}  // namespace

FreePolynomial::FreePolynomial(std::size_t d) : d_(d) {
  if (d == 0) throw InvalidArgument("polynomial needs at least one generator");
}

FreePolynomial::FreePolynomial(std::size_t d, Terms terms) : FreePolynomial(d) {
  for (const auto& [w, c] : terms)
    for (auto letter : w.letters())
      if (letter >= d)
        throw InvalidArgument("word letter " + std::to_string(letter) + " out of range for d=" +
                              std::to_string(d));
  terms_ = std::move(terms);
  drop_zeros(terms_);
}

FreePolynomial FreePolynomial::constant(std::size_t d, cplx c) {
  return FreePolynomial(d, Terms{{Word{}, c}});
}

FreePolynomial FreePolynomial::variable(std::size_t d, std::uint32_t index) {
  return FreePolynomial(d, Terms{{Word{index}, 1.0}});
}

FreePolynomial FreePolynomial::monomial(std::size_t d, Word word, cplx c) {
  return FreePolynomial(d, Terms{{std::move(word), c}});
}

std::optional<std::size_t> FreePolynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  // Canonical order puts the longest words last.
  return terms_.rbegin()->first.size();
}

cplx FreePolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

double FreePolynomial::coefficient_norm() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) s += std::norm(c);
  return std::sqrt(s);
}

bool FreePolynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.size() == terms_.rbegin()->first.size();
}

FreePolynomial FreePolynomial::homogeneous_component(std::size_t n) const {
  Terms out;
  for (const auto& [w, c] : terms_)
    if (w.size() == n) out.emplace(w, c);
  return FreePolynomial(d_, std::move(out));
}

void FreePolynomial::require_same_d(const FreePolynomial& rhs) const {
  if (d_ != rhs.d_)
    throw DimensionMismatch("polynomials over " + std::to_string(d_) + " and " +
                            std::to_string(rhs.d_) + " generators");
}

FreePolynomial FreePolynomial::operator+(const FreePolynomial& rhs) const {
  require_same_d(rhs);
  Terms out = terms_;
  for (const auto& [w, c] : rhs.terms_) out[w] += c;
  return FreePolynomial(d_, std::move(out));
}

FreePolynomial FreePolynomial::operator-(const FreePolynomial& rhs) const { return *this + (-rhs); }

FreePolynomial FreePolynomial::operator-() const { return *this * cplx(-1.0); }

FreePolynomial FreePolynomial::operator*(const FreePolynomial& rhs) const {
  require_same_d(rhs);
  Terms out;
  for (const auto& [u, a] : terms_)
    for (const auto& [v, b] : rhs.terms_) out[u * v] += a * b;
  return FreePolynomial(d_, std::move(out));
}

FreePolynomial FreePolynomial::operator*(cplx c) const {
  Terms out;
  for (const auto& [w, a] : terms_) out.emplace(w, a * c);
  return FreePolynomial(d_, std::move(out));
}

FreePolynomial FreePolynomial::pow(unsigned k) const {
  FreePolynomial out = constant(d_, 1.0);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

constexpr unsigned kMaxExponent = 64;

class Parser {
 public:
  Parser(std::string_view text, std::size_t d) : s_(text), d_(d) {}

  FreePolynomial parse() {
    FreePolynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  FreePolynomial expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    FreePolynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  FreePolynomial term() {
    FreePolynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  FreePolynomial factor() {
    FreePolynomial base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      unsigned k = 0;
      auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), k);
      if (ec != std::errc() || ptr == s_.data() + start) fail("expected exponent");
      pos_ = static_cast<std::size_t>(ptr - s_.data());
      if (k > kMaxExponent) {
        pos_ = start;
        fail("exponent exceeds " + std::to_string(kMaxExponent));
      }
      base = base.pow(k);
    }
    return base;
  }

  FreePolynomial atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      if (auto lit = try_complex_literal()) return FreePolynomial::constant(d_, *lit);
      ++pos_;
      FreePolynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'z') {
      const std::size_t start = pos_;
      ++pos_;
      std::size_t index = 0;
      auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), index);
      if (ec != std::errc() || ptr == s_.data() + pos_) fail("expected variable index after 'z'");
      pos_ = static_cast<std::size_t>(ptr - s_.data());
      return variable(index, start);
    }
    if (c == 'x' || c == 'y') {
      ++pos_;
      return variable(c == 'x' ? 1 : 2, pos_ - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return FreePolynomial::constant(d_, number(false));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  FreePolynomial variable(std::size_t one_based, std::size_t at) {
    if (one_based == 0 || one_based > d_) {
      pos_ = at;
      fail("variable index " + std::to_string(one_based) + " out of range for d=" +
           std::to_string(d_));
    }
    return FreePolynomial::variable(d_, static_cast<std::uint32_t>(one_based - 1));
  }

  // float := [sign] digits ['.' digits] [('e'|'E') [sign] digits]; the sign
  // is only permitted inside complex literals.
  double number(bool allow_sign) {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    auto digits = [&] {
      const std::size_t b = p;
      while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
      return p - b;
    };
    if (allow_sign && p < s_.size() && (s_[p] == '-' || s_[p] == '+')) ++p;
    std::size_t mantissa = digits();
    if (p < s_.size() && s_[p] == '.') {
      ++p;
      mantissa += digits();
    }
    if (mantissa == 0) fail("expected number");
    if (p < s_.size() && (s_[p] == 'e' || s_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < s_.size() && (s_[q] == '-' || s_[q] == '+')) ++q;
      const std::size_t save = p;
      p = q;
      if (digits() == 0) p = save;
    }
    std::size_t first = start;
    if (s_[first] == '+') ++first;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + first, s_.data() + p, value);
    if (ec != std::errc() || ptr != s_.data() + p) fail("malformed number");
    pos_ = p;
    return value;
  }

  // '(' float ('+'|'-') float 'i' ')'; restores the position on mismatch.
  std::optional<cplx> try_complex_literal() {
    const std::size_t save = pos_;
    try {
      ++pos_;  // '('
      const double re = number(true);
      skip_ws();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) throw ParseError("", pos_);
      const double sign = s_[pos_] == '-' ? -1.0 : 1.0;
      ++pos_;
      const double im = number(false);
      if (pos_ >= s_.size() || s_[pos_] != 'i') throw ParseError("", pos_);
      ++pos_;
      if (!accept(')')) throw ParseError("", pos_);
      return cplx(re, sign * im);
    } catch (const ParseError&) {
      pos_ = save;
      return std::nullopt;
    }
  }

  std::string_view s_;
  std::size_t d_;
  std::size_t pos_ = 0;
};

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += 'z';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

}  // namespace

FreePolynomial parse_polynomial(std::string_view text, std::size_t d) {
  return Parser(text, d).parse();
}

std::string to_string(const FreePolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    std::string coef;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = std::signbit(c.real());
      const double mag = std::abs(c.real());
      if (mag != 1.0 || w.empty()) coef = format_double(mag);
    } else {
      coef = "(" + format_double(c.real()) + (std::signbit(c.imag()) ? "-" : "+") +
             format_double(std::abs(c.imag())) + "i)";
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    out += coef;
    if (!w.empty()) {
      if (!coef.empty()) out += '*';
      out += format_word(w);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

CMatrix word_product(const Word& w, const MatrixTuple& x) {
  const Index n = x.n();
  if (w.empty()) return CMatrix::Identity(n, n);
  CMatrix prod = x[w[0]];
  for (std::size_t i = 1; i < w.size(); ++i) prod = prod * x[w[i]];
  return prod;
}

namespace {

constexpr std::size_t kMemoThreshold = 32;

}  // namespace

CMatrix evaluate(const FreePolynomial& p, const MatrixTuple& x) {
  if (p.d() != x.d())
    throw DimensionMismatch("polynomial has d=" + std::to_string(p.d()) + " but tuple has d=" +
                            std::to_string(x.d()));
  const Index n = x.n();
  CMatrix result = CMatrix::Zero(n, n);
  if (p.terms().size() <= kMemoThreshold) {
    for (const auto& [w, c] : p.terms()) result += c * word_product(w, x);
    return result;
  }

  // Prefix products, keyed by word. Every prefix of a word in the support is
  // cached so shared prefixes are multiplied once.
  std::map<Word, CMatrix> prefix;
  prefix.emplace(Word{}, CMatrix::Identity(n, n));
  for (const auto& [w, c] : p.terms()) {
    const auto letters = w.letters();
    std::size_t known = letters.size();
    std::vector<std::uint32_t> buf(letters.begin(), letters.end());
    auto it = prefix.end();
    while (true) {
      it = prefix.find(Word(std::vector<std::uint32_t>(buf.begin(), buf.begin() + known)));
      if (it != prefix.end()) break;
      --known;
    }
    CMatrix acc = it->second;
    for (std::size_t i = known; i < letters.size(); ++i) {
      acc = acc * x[letters[i]];
      prefix.emplace(Word(std::vector<std::uint32_t>(buf.begin(), buf.begin() + i + 1)), acc);
    }
    result += c * acc;
  }
  return result;
}

}  // namespace ncball
