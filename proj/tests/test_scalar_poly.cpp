#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "tdw/polynomial.hpp"
#include "tdw/rational.hpp"

namespace tdw {
namespace {

using test::parse;

TEST(Rational, LowestTerms) {
  const Rational q = make_rational(6, -4);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_EQ(to_string(make_rational(0, 7)), "0");
  EXPECT_EQ(make_rational(0, 7).get_den(), 1);
  EXPECT_THROW(make_rational(1, 0), InputError);
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
  EXPECT_THROW(parse_rational("1.5"), InputError);
}

TEST(PartialDerivative, PowerRule) {
  const auto p = parse("x^2*y", {"x", "y"});
  EXPECT_EQ(partial_derivative(p, 0), parse("2*x*y", {"x", "y"}));
}

TEST(PartialDerivative, NegativeExponent) {
  const auto p = parse("x^-1", {"x"}, {"x"});
  EXPECT_EQ(partial_derivative(p, 0), parse("-x^-2", {"x"}, {"x"}));
  EXPECT_EQ(partial_derivative(p, 0).ring(), p.ring());
}

TEST(PartialDerivative, Constant) {
  EXPECT_TRUE(partial_derivative(parse("5", {"x"}), 0).is_zero());
  EXPECT_THROW(partial_derivative(parse("x", {"x"}), 1), InputError);
}

TEST(WeightedDegree, Examples) {
  auto a = weighted_degree(parse("x^3+y^3", {"x", "y"}), {1, 1});
  EXPECT_EQ(a.degree, 3);
  EXPECT_TRUE(a.homogeneous);
  auto b = weighted_degree(parse("x^3+x*y^3", {"x", "y"}), {3, 2});
  EXPECT_EQ(b.degree, 9);
  EXPECT_TRUE(b.homogeneous);
  auto c = weighted_degree(parse("x^2+x^3", {"x"}), {1});
  EXPECT_EQ(c.degree, 3);
  EXPECT_FALSE(c.homogeneous);
  EXPECT_THROW(weighted_degree(LaurentPolynomial(make_ring({"x"})), {1}), InputError);
}

TEST(QuasiHomogeneousWeights, Examples) {
  EXPECT_EQ(find_quasi_homogeneous_weights(parse("x^3+y^3", {"x", "y"})),
            (std::vector<int>{1, 1}));
  EXPECT_EQ(find_quasi_homogeneous_weights(parse("x^3+x*y^3", {"x", "y"})),
            (std::vector<int>{3, 2}));
  EXPECT_FALSE(find_quasi_homogeneous_weights(parse("x^2+x^3", {"x"})).has_value());
  EXPECT_EQ(find_quasi_homogeneous_weights(parse("x^2*y+y^3", {"x", "y"})),
            (std::vector<int>{1, 1}));
  const auto w = find_quasi_homogeneous_weights(parse("x^3+y^4+z^5", {"x", "y", "z"}));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(*w, (std::vector<int>{20, 15, 12}));
}

TEST(LaurentPolynomial, RejectsNegativePowerOffDivisor) {
  auto ring = make_ring({"x", "y"}, {true, false});
  LaurentPolynomial p(ring);
  EXPECT_NO_THROW(p.add_term({-2, 0}, 1));
  EXPECT_THROW(p.add_term({0, -1}, 1), InputError);
}

TEST(LaurentPolynomial, RingMismatchIsAnError) {
  const auto p = parse("x", {"x", "y"});
  const auto q = parse("x", {"x", "y"}, {"x"});
  EXPECT_THROW(p + q, InputError);
}

TEST(LaurentPolynomial, NoStoredZeros) {
  auto p = parse("x - x + 0*y", {"x", "y"});
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.size(), 0u);
}

TEST(LaurentPolynomial, CanonicalText) {
  const auto p = parse("1 - 3/2*y + y*x^2", {"x", "y"});
  EXPECT_EQ(to_string(p), "x^2*y - 3/2*y + 1");
  EXPECT_EQ(to_string(parse("-x^-1 + 2", {"x"}, {"x"})), "2 - x^-1");
}

TEST(Substitute, LinearChange) {
  const auto p = parse("x^2 + y", {"x", "y"});
  const auto ring = p.ring();
  const auto img_x = parse("x + y", {"x", "y"});
  const auto img_y = parse("y", {"x", "y"});
  EXPECT_EQ(substitute(p, {img_x, img_y}), parse("x^2 + 2*x*y + y^2 + y", {"x", "y"}));
}

class RandomPolynomials : public ::testing::Test {
 protected:
  RingPtr ring = make_ring({"x", "y", "z"}, {true, false, false});
  std::mt19937_64 rng{20240611};
  LaurentPolynomial next() { return test::random_polynomial(ring, rng, 4, 3, 2); }
};

TEST_F(RandomPolynomials, RingAxioms) {
  for (int t = 0; t < 200; ++t) {
    const auto p = next(), q = next(), r = next();
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * q, q * p);
    EXPECT_TRUE((p - p).is_zero());
  }
}

TEST_F(RandomPolynomials, PartialsCommute) {
  for (int t = 0; t < 200; ++t) {
    const auto p = next();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        EXPECT_EQ(partial_derivative(partial_derivative(p, i), j),
                  partial_derivative(partial_derivative(p, j), i));
  }
}

TEST_F(RandomPolynomials, Leibniz) {
  for (int t = 0; t < 200; ++t) {
    const auto p = next(), q = next();
    for (std::size_t i = 0; i < 3; ++i)
      EXPECT_EQ(partial_derivative(p * q, i),
                partial_derivative(p, i) * q + p * partial_derivative(q, i));
  }
}

TEST(MonomialOrder, Basics) {
  const auto drl = MonomialOrder::degrevlex();
  const auto lex = MonomialOrder::lex();
  // x*z^2 vs y^3 (degree 3): degrevlex prefers the smaller last exponent.
  EXPECT_TRUE(drl.greater({0, 3, 0}, {1, 0, 2}));
  EXPECT_TRUE(lex.greater({1, 0, 2}, {0, 3, 0}));
  EXPECT_TRUE(drl.greater({0, 0, 2}, {1, 0, 0}));
  const auto w = MonomialOrder::weighted_degrevlex({3, 1});
  EXPECT_TRUE(w.greater({1, 0}, {0, 2}));
  EXPECT_EQ(drl.compare({1, 1}, {1, 1}), 0);
}

}  // namespace
}  // namespace tdw
