#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tdw/errors.hpp"
#include "tdw/polynomial.hpp"

namespace tdw {

/// Reduced Groebner basis: monic generators sorted by increasing leading
/// monomial, plus their leading exponents (the corners of the staircase).
struct GroebnerBasis {
  MonomialOrder order;
  RingPtr ring;
  std::vector<LaurentPolynomial> generators;
  std::vector<ExponentVector> leading;

  bool is_unit() const {
    return leading.size() == 1 &&
           std::all_of(leading[0].begin(), leading[0].end(),
                       [](int e) { return e == 0; });
  }
};

namespace detail {

inline void require_polynomial_ring(const LaurentPolynomial& p) {
  if (p.ring()->has_divisor())
    throw InputError(
        "Groebner computations need a ring without divisor variables");
  if (p.has_negative_exponents())
    throw InputError("Groebner computations need polynomial input");
}

/// Terms kept in decreasing monomial order.
class OrderedTerms {
 public:
  struct Desc {
    const MonomialOrder* order;
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
      return order->greater(a, b);
    }
  };
  using Map = std::map<ExponentVector, Rational, Desc>;

  explicit OrderedTerms(const MonomialOrder& order) : terms_(Desc{&order}) {}

  OrderedTerms(const LaurentPolynomial& p, const MonomialOrder& order)
      : OrderedTerms(order) {
    for (const auto& [e, c] : p.terms()) terms_.emplace(e, c);
  }

  bool empty() const { return terms_.empty(); }
  const ExponentVector& lead_exp() const { return terms_.begin()->first; }
  const Rational& lead_coef() const { return terms_.begin()->second; }
  Map& map() { return terms_; }
  const Map& map() const { return terms_; }

  void add(const ExponentVector& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// this -= c * x^shift * g
  void sub_multiple(const OrderedTerms& g, const Rational& c,
                    const ExponentVector& shift) {
    for (const auto& [e, d] : g.terms_) add(e + shift, -c * d);
  }

  void make_monic() {
    if (terms_.empty()) return;
    const Rational inv = 1 / lead_coef();
    for (auto& [e, c] : terms_) c *= inv;
  }

  LaurentPolynomial to_polynomial(const RingPtr& ring) const {
    LaurentPolynomial p(ring);
    for (const auto& [e, c] : terms_) p.add_term(e, c);
    return p;
  }

 private:
  Map terms_;
};

/// Full reduction of p by the list G (every term, not just the leading one).
inline OrderedTerms reduce(OrderedTerms p, const std::vector<OrderedTerms>& G,
                           const MonomialOrder& order) {
  OrderedTerms rem(order);
  while (!p.empty()) {
    const ExponentVector lead = p.lead_exp();
    const Rational coef = p.lead_coef();
    const OrderedTerms* divisor = nullptr;
    for (const auto& g : G) {
      if (!g.empty() && divides(g.lead_exp(), lead)) {
        divisor = &g;
        break;
      }
    }
    if (divisor) {
      p.sub_multiple(*divisor, coef / divisor->lead_coef(),
                     lead - divisor->lead_exp());
    } else {
      rem.add(lead, coef);
      p.map().erase(p.map().begin());
    }
  }
  return rem;
}

inline OrderedTerms s_polynomial(const OrderedTerms& f, const OrderedTerms& g,
                                 const MonomialOrder& order) {
  const ExponentVector l = lcm(f.lead_exp(), g.lead_exp());
  OrderedTerms s(order);
  s.sub_multiple(f, Rational(-1) / f.lead_coef(), l - f.lead_exp());
  s.sub_multiple(g, Rational(1) / g.lead_coef(), l - g.lead_exp());
  return s;
}

inline bool coprime(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

}  // namespace detail

/// Remainder of p on division by G. Every term of the result is standard.
inline LaurentPolynomial normal_form(const LaurentPolynomial& p,
                                     const GroebnerBasis& G) {
  require_same_ring(p.ring(), G.ring);
  detail::require_polynomial_ring(p);
  std::vector<detail::OrderedTerms> gs;
  gs.reserve(G.generators.size());
  for (const auto& g : G.generators) gs.emplace_back(g, G.order);
  return detail::reduce(detail::OrderedTerms(p, G.order), gs, G.order)
      .to_polynomial(p.ring());
}

/// Buchberger's algorithm with the coprime and chain criteria and the normal
/// selection strategy (smallest lcm first, ties broken by pair index).
inline GroebnerBasis buchberger(const std::vector<LaurentPolynomial>& gens,
                                const MonomialOrder& order = {}) {
  if (gens.empty()) throw InputError("empty generator list");
  const RingPtr ring = gens.front().ring();
  for (const auto& g : gens) {
    require_same_ring(ring, g.ring());
    detail::require_polynomial_ring(g);
  }
  if (order.kind == MonomialOrder::Kind::weighted_degrevlex &&
      order.weights.size() != ring->size())
    throw InputError("order weights do not match the number of variables");

  using detail::OrderedTerms;
  std::vector<OrderedTerms> basis;
  for (const auto& g : gens) {
    OrderedTerms t(g, order);
    if (!t.empty()) {
      t.make_monic();
      basis.push_back(std::move(t));
    }
  }
  GroebnerBasis out{order, ring, {}, {}};
  if (basis.empty()) return out;  // zero ideal

  // Pending pairs, keyed so that iteration gives the normal strategy.
  struct PairKey {
    const MonomialOrder* order;
    bool operator()(const std::pair<ExponentVector, std::pair<std::size_t, std::size_t>>& a,
                    const std::pair<ExponentVector, std::pair<std::size_t, std::size_t>>& b) const {
      const int c = order->compare(a.first, b.first);
      if (c != 0) return c < 0;
      return a.second < b.second;
    }
  };
  using Pair = std::pair<ExponentVector, std::pair<std::size_t, std::size_t>>;
  std::set<Pair, PairKey> pending(PairKey{&order});
  std::set<std::pair<std::size_t, std::size_t>> open;

  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (basis[i].empty()) continue;
      pending.insert({lcm(basis[i].lead_exp(), basis[j].lead_exp()), {i, j}});
      open.insert({i, j});
    }
  };
  for (std::size_t j = 0; j < basis.size(); ++j) add_pairs_for(j);

  auto is_open = [&](std::size_t a, std::size_t b) {
    return open.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  while (!pending.empty()) {
    const auto [l, ij] = *pending.begin();
    pending.erase(pending.begin());
    open.erase(ij);
    const auto [i, j] = ij;
    if (basis[i].empty() || basis[j].empty()) continue;
    if (detail::coprime(basis[i].lead_exp(), basis[j].lead_exp())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == i || k == j || basis[k].empty()) continue;
      if (divides(basis[k].lead_exp(), l) && !is_open(i, k) && !is_open(j, k))
        chain = true;
    }
    if (chain) continue;
    auto r = detail::reduce(detail::s_polynomial(basis[i], basis[j], order),
                            basis, order);
    if (r.empty()) continue;
    r.make_monic();
    basis.push_back(std::move(r));
    add_pairs_for(basis.size() - 1);
  }

  // Minimalize: drop elements whose leading monomial is divisible by
  // another's (keeping the first among equal leading monomials).
  std::vector<OrderedTerms> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < basis.size() && !redundant; ++k) {
      if (k == i) continue;
      if (divides(basis[k].lead_exp(), basis[i].lead_exp()) &&
          (basis[k].lead_exp() != basis[i].lead_exp() || k < i))
        redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // Interreduce tails.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<OrderedTerms> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    OrderedTerms head(order);
    head.add(minimal[i].lead_exp(), minimal[i].lead_coef());
    OrderedTerms tail = minimal[i];
    tail.map().erase(tail.map().begin());
    auto reduced_tail = detail::reduce(std::move(tail), others, order);
    for (const auto& [e, c] : reduced_tail.map()) head.add(e, c);
    head.make_monic();
    minimal[i] = std::move(head);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const OrderedTerms& a, const OrderedTerms& b) {
              return order.compare(a.lead_exp(), b.lead_exp()) < 0;
            });
  for (const auto& g : minimal) {
    out.generators.push_back(g.to_polynomial(ring));
    out.leading.push_back(g.lead_exp());
  }
  return out;
}

struct QuotientDimension {
  bool finite = false;
  std::size_t dim = 0;
  /// Standard monomials in increasing order (only when finite).
  std::vector<ExponentVector> basis;
};

/// dim of Q[x]/I counted as the monomials under the staircase of G.
inline QuotientDimension quotient_dimension(const GroebnerBasis& G) {
  const std::size_t n = G.ring->size();
  QuotientDimension out;
  if (G.generators.empty()) return out;  // zero ideal: infinite
  if (G.is_unit()) {
    out.finite = true;
    return out;
  }
  std::vector<int> bound(n, -1);
  for (const auto& e : G.leading) {
    std::size_t nonzero = 0, which = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] > 0) {
        ++nonzero;
        which = i;
      }
    if (nonzero == 1 && (bound[which] < 0 || e[which] < bound[which]))
      bound[which] = e[which];
  }
  for (int b : bound)
    if (b < 0) return out;
  out.finite = true;
  ExponentVector e(n, 0);
  // Odometer over the box bounded by the pure powers.
  for (;;) {
    bool standard = true;
    for (const auto& l : G.leading)
      if (divides(l, e)) {
        standard = false;
        break;
      }
    if (standard) out.basis.push_back(e);
    std::size_t i = 0;
    while (i < n && e[i] + 1 >= bound[i]) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  std::sort(out.basis.begin(), out.basis.end(),
            [&](const ExponentVector& a, const ExponentVector& b) {
              return G.order.compare(a, b) < 0;
            });
  out.dim = out.basis.size();
  return out;
}

inline QuotientDimension quotient_dimension(
    const std::vector<LaurentPolynomial>& gens,
    const MonomialOrder& order = {}) {
  return quotient_dimension(buchberger(gens, order));
}

inline bool is_zero_dimensional(const std::vector<LaurentPolynomial>& gens,
                                const MonomialOrder& order = {}) {
  return quotient_dimension(gens, order).finite;
}

inline bool ideal_membership(const LaurentPolynomial& p,
                             const std::vector<LaurentPolynomial>& gens,
                             const MonomialOrder& order = {}) {
  if (!gens.empty()) require_same_ring(p.ring(), gens.front().ring());
  if (p.is_zero()) return true;
  return normal_form(p, buchberger(gens, order)).is_zero();
}

/// S-polynomial of two nonzero polynomials (exposed for basis checks).
inline LaurentPolynomial s_polynomial(const LaurentPolynomial& f,
                                      const LaurentPolynomial& g,
                                      const MonomialOrder& order) {
  require_same_ring(f.ring(), g.ring());
  return detail::s_polynomial(detail::OrderedTerms(f, order),
                              detail::OrderedTerms(g, order), order)
      .to_polynomial(f.ring());
}

inline std::string monomial_string(const ExponentVector& e, const Ring& ring) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ring.name(i);
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace tdw
