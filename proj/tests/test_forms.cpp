#include <gtest/gtest.h>

#include <map>
#include <random>

#include "test_util.hpp"
#include "tdw/forms.hpp"

namespace tdw {
namespace {

using test::parse;

TEST(InsertSign, CountsSmallerIndices) {
  IndexSet out;
  EXPECT_EQ(insert_sign({1, 3}, 0, out), 1);
  EXPECT_EQ(out, (IndexSet{0, 1, 3}));
  EXPECT_EQ(insert_sign({1, 3}, 2, out), -1);
  EXPECT_EQ(insert_sign({1, 3}, 4, out), 1);
  EXPECT_EQ(insert_sign({1, 3}, 3, out), 0);
}

TEST(ExteriorDerivative, Examples) {
  const auto ring = make_ring({"x", "y"});
  const FormContext ctx(ring, CoefficientMode::polynomial);
  // d(x^2 y) = 2xy dx + x^2 dy
  const auto w = exterior_derivative(DifferentialForm::function(ctx, parse("x^2*y", {"x", "y"})));
  EXPECT_EQ(w.coefficient({0}), parse("2*x*y", {"x", "y"}));
  EXPECT_EQ(w.coefficient({1}), parse("x^2", {"x", "y"}));
  // d(x dy) = dx^dy, d(y dx) = -dx^dy
  EXPECT_EQ(exterior_derivative(DifferentialForm::basis(ctx, {1}, parse("x", {"x", "y"})))
                .coefficient({0, 1}),
            parse("1", {"x", "y"}));
  EXPECT_EQ(exterior_derivative(DifferentialForm::basis(ctx, {0}, parse("y", {"x", "y"})))
                .coefficient({0, 1}),
            parse("-1", {"x", "y"}));
}

TEST(ExteriorDerivative, LogCovectors) {
  const auto ring = make_ring({"x", "y"}, {true, false});
  const FormContext ctx(ring, CoefficientMode::log);
  // d(x) = x dlog x; dlog x is closed.
  const auto dx = exterior_derivative(DifferentialForm::function(ctx, parse("x", {"x", "y"}, {"x"})));
  EXPECT_EQ(dx.coefficient({0}), parse("x", {"x", "y"}, {"x"}));
  EXPECT_TRUE(exterior_derivative(DifferentialForm::basis(ctx, {0}, parse("1", {"x", "y"}, {"x"})))
                  .is_zero());
  EXPECT_EQ(to_string(DifferentialForm::basis(ctx, {0, 1}, parse("y", {"x", "y"}, {"x"}))),
            "(y) * dlog x^dy");
}

TEST(FormContext, Validation) {
  const auto ring = make_ring({"x"});
  EXPECT_THROW(FormContext(ring, CoefficientMode::log), InputError);
  const FormContext ctx(ring, CoefficientMode::polynomial);
  DifferentialForm w(ctx, 1);
  EXPECT_THROW(w.add({0, 0}, parse("x", {"x"})), InputError);
  EXPECT_THROW(w.add({1}, parse("x", {"x"})), InputError);
}

TEST(PoleLevel, Examples) {
  const auto p = parse("x^-2*y^-1 + x^-1 + y", {"x", "y"}, {"x", "y"});
  EXPECT_EQ(pole_filtration_level(p), 2);
  EXPECT_EQ(pole_filtration_level(parse("x^3", {"x"}, {"x"})), 0);
  EXPECT_EQ(pole_level({-1, -3}, *p.ring()), 3);
  EXPECT_THROW(pole_filtration_level(LaurentPolynomial(p.ring())), InputError);
}

TEST(PoleLevel, Subadditive) {
  std::mt19937_64 rng(17);
  const auto ring = make_ring({"x", "y", "z"}, {true, true, false});
  for (int t = 0; t < 200; ++t) {
    const auto a = test::random_polynomial(ring, rng, 3, 3, 3);
    const auto b = test::random_polynomial(ring, rng, 3, 3, 3);
    if (a.is_zero() || b.is_zero()) continue;
    const auto prod = a * b;
    if (!prod.is_zero())
      EXPECT_LE(pole_filtration_level(prod), pole_filtration_level(a) + pole_filtration_level(b));
    const auto sum = a + b;
    if (!sum.is_zero())
      EXPECT_LE(pole_filtration_level(sum),
                std::max(pole_filtration_level(a), pole_filtration_level(b)));
  }
}

struct ModeCase {
  CoefficientMode mode;
  std::vector<bool> divisor;
};

class OperatorLaws : public ::testing::TestWithParam<ModeCase> {};

TEST_P(OperatorLaws, SquaresVanish) {
  const auto& mc = GetParam();
  const auto ring = make_ring({"x", "y", "z"}, mc.divisor);
  const FormContext ctx(ring, mc.mode);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto f = test::random_polynomial(ring, rng, 4, 3, 0);
    const std::size_t k = static_cast<std::size_t>(t % 3);
    const auto w = test::random_form(ctx, k, rng, 2);
    EXPECT_TRUE(exterior_derivative(exterior_derivative(w)).is_zero());
    EXPECT_TRUE(wedge_df(wedge_df(w, f), f).is_zero());
    EXPECT_TRUE(twisted_operator(twisted_operator(w, f, 1), f, 1).is_zero());
    const Rational u = make_rational(t % 7 - 3, 2);
    EXPECT_TRUE(twisted_operator(twisted_operator(w, f, u), f, u).is_zero());
  }
}

INSTANTIATE_TEST_SUITE_P(
    Modes, OperatorLaws,
    ::testing::Values(ModeCase{CoefficientMode::polynomial, {}},
                      ModeCase{CoefficientMode::log, {true, false, true}},
                      ModeCase{CoefficientMode::meromorphic, {true, true, false}}));

TEST(LogEmbedding, CommutesWithOperators) {
  const auto ring = make_ring({"x", "y", "z"}, {true, false, true});
  const FormContext log(ring, CoefficientMode::log);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const auto f = test::random_polynomial(ring, rng, 4, 3, 0);
    const auto w = test::random_form(log, static_cast<std::size_t>(t % 3), rng);
    EXPECT_EQ(to_meromorphic(exterior_derivative(w)), exterior_derivative(to_meromorphic(w)));
    EXPECT_EQ(to_meromorphic(wedge_df(w, f)), wedge_df(to_meromorphic(w), f));
    EXPECT_EQ(to_meromorphic(twisted_operator(w, f, 1)),
              twisted_operator(to_meromorphic(w), f, 1));
  }
}

// Splits a meromorphic form into its pure pole-level parts.
std::map<int, DifferentialForm> by_level(const DifferentialForm& w) {
  std::map<int, DifferentialForm> out;
  const Ring& ring = *w.context().ring();
  for (const auto& [I, g] : w.components())
    for (const auto& [e, c] : g.terms()) {
      const int p = pole_level(e, ring);
      out.try_emplace(p, w.context(), w.degree()).first->second.add_term(I, e, c);
    }
  return out;
}

template <class Op>
DifferentialForm graded_apply(const DifferentialForm& w, Op op) {
  DifferentialForm out(w.context(), w.degree() + 1);
  for (const auto& [p, part] : by_level(w)) out += op(part, p);
  return out;
}

TEST(GradedOperators, SquaresVanish) {
  const auto ring = make_ring({"x", "y", "z"}, {true, true, false});
  const FormContext ctx(ring, CoefficientMode::meromorphic);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto f = test::random_polynomial(ring, rng, 4, 3, 0);
    const auto w = test::random_form(ctx, static_cast<std::size_t>(t % 3), rng, 3);
    auto gd = [](const DifferentialForm& a, int p) { return graded_exterior_derivative(a, p); };
    auto gw = [&](const DifferentialForm& a, int p) { return graded_wedge_df(a, f, p); };
    auto gt = [&](const DifferentialForm& a, int p) { return graded_twisted_operator(a, f, p); };
    EXPECT_TRUE(graded_apply(graded_apply(w, gd), gd).is_zero());
    EXPECT_TRUE(graded_apply(graded_apply(w, gw), gw).is_zero());
    EXPECT_TRUE(graded_apply(graded_apply(w, gt), gt).is_zero());
  }
}

TEST(GradedOperators, LevelShifts) {
  const auto ring = make_ring({"x"}, {true});
  const FormContext ctx(ring, CoefficientMode::meromorphic);
  // gr d: x^-1 (level 1) -> -x^-2 dx (level 2)
  const auto w = DifferentialForm::function(ctx, parse("x^-1", {"x"}, {"x"}));
  EXPECT_EQ(graded_exterior_derivative(w, 1).coefficient({0}), parse("-x^-2", {"x"}, {"x"}));
  // d of x^2 stays at level 0 and is discarded.
  EXPECT_TRUE(graded_exterior_derivative(DifferentialForm::function(ctx, parse("x^2", {"x"}, {"x"})), 0)
                  .is_zero());
  // df^ with f = x sends x^-1 (level 1) to x^-1 dx (level 1): kept.
  EXPECT_EQ(graded_wedge_df(w, parse("x", {"x"}, {"x"}), 1).coefficient({0}),
            parse("x^-1", {"x"}, {"x"}));
  // f = x^2 sends x^-1 to 2x dx (level 0): dropped.
  EXPECT_TRUE(graded_wedge_df(w, parse("x^2", {"x"}, {"x"}), 1).is_zero());
  EXPECT_THROW(graded_exterior_derivative(w, 0), InputError);
}

// Weighted degree of a form: coefficient exponents plus one w_i per dx_i.
long form_weight(const IndexSet& I, const ExponentVector& e, const std::vector<int>& w) {
  long s = weighted_degree(e, w);
  for (std::size_t i : I) s += w[i];
  return s;
}

TEST(WeightGrading, OperatorsAreHomogeneous) {
  const auto f = parse("x^3 + x*y^3", {"x", "y"});
  const std::vector<int> w = {3, 2};
  const long N = 9;
  const FormContext ctx(f.ring(), CoefficientMode::polynomial);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (const IndexSet& I : {IndexSet{}, IndexSet{0}, IndexSet{1}}) {
        const ExponentVector e{a, b};
        const auto form = DifferentialForm::basis(ctx, I, LaurentPolynomial::monomial(f.ring(), e, 1));
        const long base = form_weight(I, e, w);
        const auto wedged = wedge_df(form, f);
        const auto derived = exterior_derivative(form);
        for (const auto& [J, g] : wedged.components())
          for (const auto& [ge, c] : g.terms()) EXPECT_EQ(form_weight(J, ge, w), base + N);
        for (const auto& [J, g] : derived.components())
          for (const auto& [ge, c] : g.terms()) EXPECT_EQ(form_weight(J, ge, w), base);
      }
}

}  // namespace
}  // namespace tdw
