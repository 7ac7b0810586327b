#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "tdw/forms.hpp"
#include "tdw/parser.hpp"
#include "tdw/polynomial.hpp"

namespace tdw::test {

inline LaurentPolynomial parse(const std::string& text, std::vector<std::string> vars,
                               std::vector<std::string> divisor = {}) {
  return parse_polynomial(text, VariableDeclaration{std::move(vars), std::move(divisor)});
}

/// Random polynomial with small rational coefficients. Divisor variables
/// get exponents in [-max_pole, max_degree].
inline LaurentPolynomial random_polynomial(const RingPtr& ring, std::mt19937_64& rng,
                                           int max_terms = 4, int max_degree = 3,
                                           int max_pole = 0) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  LaurentPolynomial p(ring);
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    ExponentVector e(ring->size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      const int lo = ring->in_divisor(i) ? -max_pole : 0;
      e[i] = std::uniform_int_distribution<int>(lo, max_degree)(rng);
    }
    p.add_term(e, make_rational(num(rng), den(rng)));
  }
  return p;
}

inline DifferentialForm random_form(const FormContext& ctx, std::size_t degree,
                                    std::mt19937_64& rng, int max_pole = 0) {
  DifferentialForm w(ctx, degree);
  const std::size_t n = ctx.dimension();
  // Visit every k-subset of {0..n-1} in lexicographic order.
  std::vector<std::size_t> I(degree);
  for (std::size_t k = 0; k < degree; ++k) I[k] = k;
  if (degree > n) return w;
  for (;;) {
    w.add(I, random_polynomial(ctx.ring(), rng, 3, 3, ctx.allows_poles() ? max_pole : 0));
    std::size_t k = degree;
    while (k > 0 && I[k - 1] == n - degree + k - 1) --k;
    if (k == 0) break;
    ++I[k - 1];
    for (std::size_t j = k; j < degree; ++j) I[j] = I[j - 1] + 1;
  }
  return w;
}

}  // namespace tdw::test
