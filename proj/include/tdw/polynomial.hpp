#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdw/errors.hpp"
#include "tdw/rational.hpp"

namespace tdw {

using ExponentVector = std::vector<int>;

/// Ambient polynomial ring: variable names and the divisor set S of
/// variables that may carry negative exponents.
class Ring {
 public:
  Ring(std::vector<std::string> names, std::vector<bool> divisor)
      : names_(std::move(names)), divisor_(std::move(divisor)) {
    if (divisor_.empty()) divisor_.assign(names_.size(), false);
    if (divisor_.size() != names_.size())
      throw InputError("divisor mask does not match the number of variables");
  }

  explicit Ring(std::vector<std::string> names)
      : Ring(std::move(names), {}) {}

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool in_divisor(std::size_t i) const { return divisor_.at(i); }
  const std::vector<bool>& divisor() const noexcept { return divisor_; }

  bool has_divisor() const {
    return std::find(divisor_.begin(), divisor_.end(), true) != divisor_.end();
  }

  std::vector<std::size_t> divisor_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < divisor_.size(); ++i)
      if (divisor_[i]) out.push_back(i);
    return out;
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.names_ == b.names_ && a.divisor_ == b.divisor_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<bool> divisor_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names,
                         std::vector<bool> divisor = {}) {
  return std::make_shared<const Ring>(std::move(names), std::move(divisor));
}

/// Same variables, different divisor set.
inline RingPtr with_divisor(const RingPtr& ring, std::vector<bool> divisor) {
  return make_ring(ring->names(), std::move(divisor));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || *a == *b;
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b))
    throw InputError("ring mismatch: operands live in different rings");
}

/// Monomial order on exponent vectors. The comparison is a total order on
/// all of Z^n (used for rendering Laurent terms); it is a well-order only on
/// nonnegative vectors.
struct MonomialOrder {
  enum class Kind { degrevlex, lex, weighted_degrevlex };

  Kind kind = Kind::degrevlex;
  std::vector<int> weights;

  static MonomialOrder degrevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::lex, {}}; }
  static MonomialOrder weighted_degrevlex(std::vector<int> w) {
    for (int x : w)
      if (x <= 0) throw InputError("monomial order weights must be positive");
    return {Kind::weighted_degrevlex, std::move(w)};
  }

  /// -1, 0 or 1 as a is smaller than, equal to, or greater than b.
  int compare(const ExponentVector& a, const ExponentVector& b) const {
    const std::size_t n = a.size();
    if (kind == Kind::lex) {
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    }
    long da = 0, db = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const long w = kind == Kind::weighted_degrevlex ? weights.at(i) : 1;
      da += w * a[i];
      db += w * b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = n; i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }

  bool greater(const ExponentVector& a, const ExponentVector& b) const {
    return compare(a, b) > 0;
  }

  std::string name() const {
    switch (kind) {
      case Kind::degrevlex: return "degrevlex";
      case Kind::lex: return "lex";
      case Kind::weighted_degrevlex: return "weighted-degrevlex";
    }
    return "?";
  }
};

inline int total_degree(const ExponentVector& a) {
  return std::accumulate(a.begin(), a.end(), 0);
}

inline bool divides(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline ExponentVector operator+(ExponentVector a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline ExponentVector operator-(ExponentVector a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline ExponentVector lcm(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

/// Sparse Laurent polynomial with exact rational coefficients. Terms are
/// stored in a map keyed by exponent vector (lexicographic key order), so
/// iteration is deterministic; rendering re-sorts by a monomial order.
class LaurentPolynomial {
 public:
  using TermMap = std::map<ExponentVector, Rational>;
  using Term = std::pair<ExponentVector, Rational>;

  explicit LaurentPolynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static LaurentPolynomial constant(RingPtr ring, const Rational& c) {
    LaurentPolynomial p(ring);
    p.add_term(ExponentVector(ring->size(), 0), c);
    return p;
  }

  static LaurentPolynomial variable(RingPtr ring, std::size_t i) {
    ExponentVector e(ring->size(), 0);
    e.at(i) = 1;
    return monomial(std::move(ring), std::move(e), Rational(1));
  }

  static LaurentPolynomial monomial(RingPtr ring, ExponentVector e,
                                    const Rational& c) {
    LaurentPolynomial p(std::move(ring));
    p.add_term(std::move(e), c);
    return p;
  }

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept { return ring_->size(); }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(),
                        terms_.begin()->first.end(),
                        [](int e) { return e == 0; }));
  }

  Rational coefficient(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c*x^e. Negative exponents are only allowed on divisor variables.
  void add_term(ExponentVector e, const Rational& c) {
    if (e.size() != ring_->size())
      throw InputError("exponent vector has wrong length");
    if (c == 0) return;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] < 0 && !ring_->in_divisor(i))
        throw InputError("negative power on non-divisor variable " +
                         ring_->name(i));
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool has_negative_exponents() const {
    for (const auto& [e, c] : terms_)
      for (int x : e)
        if (x < 0) return true;
    return false;
  }

  /// Largest total degree of a term; -infinity is reported as INT_MIN.
  int total_degree() const {
    int best = std::numeric_limits<int>::min();
    for (const auto& [e, c] : terms_) best = std::max(best, tdw::total_degree(e));
    return best;
  }

  std::vector<Term> sorted_terms(const MonomialOrder& order) const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) {
      return order.greater(a.first, b.first);
    });
    return out;
  }

  Term leading_term(const MonomialOrder& order) const {
    if (is_zero()) throw InputError("leading term of the zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(best); it != terms_.end(); ++it)
      if (order.greater(it->first, best->first)) best = it;
    return *best;
  }

  /// Reinterpret in another ring over the same variables.
  LaurentPolynomial in_ring(RingPtr ring) const {
    if (ring->names() != ring_->names())
      throw InputError("ring mismatch: different variables");
    LaurentPolynomial out(std::move(ring));
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    require_same_ring(ring_, o.ring_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
    require_same_ring(ring_, o.ring_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  LaurentPolynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  /// Adds c * x^shift * o.
  void add_scaled(const LaurentPolynomial& o, const Rational& c,
                  const ExponentVector& shift) {
    require_same_ring(ring_, o.ring_);
    if (c == 0) return;
    for (const auto& [e, d] : o.terms_) add_term(e + shift, c * d);
  }

  friend LaurentPolynomial operator+(LaurentPolynomial a,
                                     const LaurentPolynomial& b) {
    return a += b;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a,
                                     const LaurentPolynomial& b) {
    return a -= b;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a) {
    return a *= Rational(-1);
  }
  friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& s) {
    return a *= s;
  }
  friend LaurentPolynomial operator*(const Rational& s, LaurentPolynomial a) {
    return a *= s;
  }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a,
                                     const LaurentPolynomial& b) {
    require_same_ring(a.ring_, b.ring_);
    LaurentPolynomial out(a.ring_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }

  friend bool operator==(const LaurentPolynomial& a,
                         const LaurentPolynomial& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
  }

 private:
  RingPtr ring_;
  TermMap terms_;
};

/// p^k for k >= 0; negative k only for a single monomial whose negative
/// exponents land on divisor variables.
inline LaurentPolynomial pow(const LaurentPolynomial& p, int k) {
  if (k < 0) {
    if (p.size() != 1)
      throw InputError("negative power of a non-monomial expression");
    const auto& [e, c] = *p.terms().begin();
    ExponentVector out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = e[i] * k;
    Rational inv = 1 / c;
    Rational coef = 1;
    for (int j = 0; j < -k; ++j) coef *= inv;
    return LaurentPolynomial::monomial(p.ring(), std::move(out), coef);
  }
  auto result = LaurentPolynomial::constant(p.ring(), 1);
  auto base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

/// Formal partial derivative with respect to variable i (0-based).
inline LaurentPolynomial partial_derivative(const LaurentPolynomial& p,
                                            std::size_t i) {
  if (i >= p.nvars()) throw InputError("variable index out of range");
  LaurentPolynomial out(p.ring());
  for (const auto& [e, c] : p.terms()) {
    if (e[i] == 0) continue;
    ExponentVector d = e;
    d[i] -= 1;
    out.add_term(std::move(d), c * e[i]);
  }
  return out;
}

struct WeightedDegree {
  long degree = 0;
  bool homogeneous = true;
};

inline long weighted_degree(const ExponentVector& e, const std::vector<int>& w) {
  long d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long>(w.at(i)) * e[i];
  return d;
}

inline WeightedDegree weighted_degree(const LaurentPolynomial& p,
                                      const std::vector<int>& w) {
  if (p.is_zero()) throw InputError("weighted degree of the zero polynomial");
  if (w.size() != p.nvars()) throw InputError("weight vector has wrong length");
  for (int x : w)
    if (x <= 0) throw InputError("weights must be positive");
  WeightedDegree out{std::numeric_limits<long>::min(), true};
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const long d = weighted_degree(e, w);
    if (!first && d != out.degree) out.homogeneous = false;
    out.degree = std::max(out.degree, d);
    first = false;
  }
  return out;
}

namespace detail {

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m,
                                     std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::optional<std::vector<int>> positive_integer_vector(
    const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& q : v) {
    if (q <= 0) return std::nullopt;
    den = lcm(den, Integer(q.get_den()));
  }
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& q : v) {
    Integer x = Integer(q.get_num()) * (den / Integer(q.get_den()));
    g = gcd(g, x);
    ints.push_back(x);
  }
  std::vector<int> out;
  for (auto& x : ints) {
    x /= g;
    if (!x.fits_sint_p()) return std::nullopt;
    out.push_back(static_cast<int>(x.get_si()));
  }
  return out;
}

}  // namespace detail

/// Positive integer weights making p weighted-homogeneous, if any. Solves
/// "every exponent vector has the same weighted degree" over the rationals.
/// When the solution space has free directions, small positive values are
/// tried for the free coordinates.
inline std::optional<std::vector<int>> find_quasi_homogeneous_weights(
    const LaurentPolynomial& p) {
  if (p.is_zero()) throw InputError("zero polynomial has no weights");
  if (p.ring()->has_divisor())
    throw InputError("quasi-homogeneity is only defined without a divisor");
  const std::size_t n = p.nvars();
  if (p.is_constant()) return std::nullopt;

  std::vector<std::vector<Rational>> rows;
  const ExponentVector& base = p.terms().begin()->first;
  for (const auto& [e, c] : p.terms()) {
    if (e == base) continue;
    std::vector<Rational> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = e[i] - base[i];
    rows.push_back(std::move(row));
  }
  const auto pivots = detail::rref(rows, n);
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
      free_cols.push_back(c);
  if (free_cols.empty()) return std::nullopt;

  // Odometer over free-coordinate values 1..6.
  constexpr int kMaxFree = 6;
  std::vector<int> vals(free_cols.size(), 1);
  for (;;) {
    std::vector<Rational> w(n);
    for (std::size_t j = 0; j < free_cols.size(); ++j) w[free_cols[j]] = vals[j];
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Rational s = 0;
      for (std::size_t j = 0; j < free_cols.size(); ++j)
        s -= rows[r][free_cols[j]] * vals[j];
      w[pivots[r]] = s;
    }
    if (auto ints = detail::positive_integer_vector(w)) return ints;
    std::size_t j = 0;
    while (j < vals.size() && vals[j] == kMaxFree) vals[j++] = 1;
    if (j == vals.size()) return std::nullopt;
    ++vals[j];
  }
}

/// Replaces variable i by images[i]. Negative exponents need monomial
/// images (the substitution must stay Laurent).
inline LaurentPolynomial substitute(const LaurentPolynomial& p,
                                    const std::vector<LaurentPolynomial>& images) {
  if (images.size() != p.nvars())
    throw InputError("substitution needs one image per variable");
  if (images.empty()) return p;
  const RingPtr target = images.front().ring();
  for (const auto& q : images) require_same_ring(target, q.ring());
  LaurentPolynomial out(target);
  for (const auto& [e, c] : p.terms()) {
    auto term = LaurentPolynomial::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term = term * pow(images[i], e[i]);
    out += term;
  }
  return out;
}

/// Canonical text form: terms sorted by the order (descending), coefficients
/// as num/den, monomials as x1^2*x2.
inline std::string to_string(const LaurentPolynomial& p,
                             const MonomialOrder& order = {}) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.sorted_terms(order)) {
    const bool neg = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += p.ring()->name(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace tdw
