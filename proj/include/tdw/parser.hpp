#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdw/errors.hpp"
#include "tdw/polynomial.hpp"
#include "tdw/rational.hpp"

namespace tdw {

/// Variables of the ambient ring and the subset S carrying the divisor. An
/// empty variable list means "infer from the expression".
struct VariableDeclaration {
  std::vector<std::string> vars;
  std::vector<std::string> divisor;
};

namespace detail {

inline bool is_identifier_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

inline bool is_digit(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

/// Orders x2 before x10: by letter prefix, then numerically by suffix.
inline bool variable_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t k = s.size();
    while (k > 0 && is_digit(s[k - 1])) --k;
    return std::pair{s.substr(0, k), s.substr(k)};
  };
  const auto [pa, na] = split(a);
  const auto [pb, nb] = split(b);
  if (pa != pb) return pa < pb;
  if (na.size() != nb.size()) return na.size() < nb.size();
  return na < nb;
}

// Exponents beyond this are almost certainly typos and would only exhaust
// memory during expansion.
constexpr long kMaxExponent = 4096;

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, RingPtr ring)
      : text_(text), ring_(std::move(ring)) {}

  LaurentPolynomial parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    auto p = expr();
    skip_space();
    if (pos_ != text_.size())
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  // expr := ('+'|'-')? term (('+'|'-') term)*
  LaurentPolynomial expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    auto acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  LaurentPolynomial term() {
    auto acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  LaurentPolynomial factor() {
    skip_space();
    const std::size_t at = pos_;
    auto b = base();
    if (!accept('^')) return b;
    skip_space();
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    skip_space();
    const std::size_t exp_at = pos_;
    const Integer k = integer("exponent");
    if (abs(k) > kMaxExponent)
      throw ParseError("exponent too large", exp_at);
    const int e = static_cast<int>(k.get_si()) * (negative ? -1 : 1);
    try {
      return pow(b, e);
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& err) {
      throw ParseError(err.what(), at);
    }
  }

  LaurentPolynomial base() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (is_digit(c)) return LaurentPolynomial::constant(ring_, rational());
    if (is_identifier_start(c)) {
      const std::size_t at = pos_;
      std::string name = identifier();
      const auto& names = ring_->names();
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end())
        throw ParseError("undeclared variable '" + name + "'", at);
      return LaurentPolynomial::variable(
          ring_, static_cast<std::size_t>(it - names.begin()));
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Rational rational() {
    const Integer num = integer("number");
    if (!accept('/')) return Rational(num);
    skip_space();
    const std::size_t at = pos_;
    const Integer den = integer("denominator");
    if (den == 0) throw ParseError("zero denominator", at);
    return make_rational(num, den);
  }

  Integer integer(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ == start) throw ParseError(std::string("expected ") + what, start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    const std::size_t start = pos_++;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Variable names appearing in an expression, sorted (x2 before x10).
/// A variable is a letter followed by optional digits.
inline std::vector<std::string> infer_variables(std::string_view text) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < text.size();) {
    if (detail::is_identifier_start(text[i])) {
      std::size_t j = i + 1;
      while (j < text.size() && detail::is_digit(text[j])) ++j;
      seen.emplace(text.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  std::vector<std::string> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), detail::variable_less);
  return out;
}

/// Builds the ring for an expression. Divisor names must be declared
/// variables; with inferred variables, divisor names are added if the
/// expression does not mention them.
inline RingPtr declare_ring(std::string_view text, const VariableDeclaration& decl) {
  std::vector<std::string> vars = decl.vars;
  if (vars.empty()) {
    vars = infer_variables(text);
    for (const auto& s : decl.divisor)
      if (std::find(vars.begin(), vars.end(), s) == vars.end()) vars.push_back(s);
    std::sort(vars.begin(), vars.end(), detail::variable_less);
  }
  std::set<std::string> unique;
  for (const auto& v : vars) {
    if (v.empty() || !detail::is_identifier_start(v[0]) ||
        !std::all_of(v.begin() + 1, v.end(), detail::is_digit))
      throw InputError("invalid variable name '" + v + "'");
    if (!unique.insert(v).second)
      throw InputError("variable '" + v + "' declared twice");
  }
  if (vars.empty()) throw InputError("no variables: declare at least one");
  std::vector<bool> mask(vars.size(), false);
  for (const auto& s : decl.divisor) {
    auto it = std::find(vars.begin(), vars.end(), s);
    if (it == vars.end())
      throw InputError("divisor variable '" + s + "' is not declared");
    mask[static_cast<std::size_t>(it - vars.begin())] = true;
  }
  return make_ring(std::move(vars), std::move(mask));
}

/// Parses text in a given ring.
///
///   expr     := ('+'|'-')? term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' ('+'|'-')? integer)?
///   base     := rational | variable | '(' expr ')'
///   rational := integer ('/' positive-integer)?
inline LaurentPolynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return detail::ExpressionParser(text, ring).parse();
}

inline LaurentPolynomial parse_polynomial(std::string_view text,
                                          const VariableDeclaration& decl = {}) {
  return parse_polynomial(text, declare_ring(text, decl));
}

}  // namespace tdw
