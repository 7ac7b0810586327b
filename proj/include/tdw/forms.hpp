#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tdw/errors.hpp"
#include "tdw/polynomial.hpp"

namespace tdw {

/// What the coefficients of a form may be, and which covectors span it.
///   polynomial   coefficients in Q[x], basis dx_i
///   log          coefficients in Q[x], basis dlog x_i = dx_i/x_i for i in S
///                and dx_j otherwise
///   meromorphic  Laurent coefficients with poles on S, basis dx_i
enum class CoefficientMode { polynomial, log, meromorphic };

inline std::string to_string(CoefficientMode m) {
  switch (m) {
    case CoefficientMode::polynomial: return "polynomial";
    case CoefficientMode::log: return "log";
    case CoefficientMode::meromorphic: return "meromorphic";
  }
  return "?";
}

class FormContext {
 public:
  FormContext(RingPtr ring, CoefficientMode mode)
      : ring_(std::move(ring)), mode_(mode) {
    if (mode_ != CoefficientMode::polynomial && !ring_->has_divisor())
      throw InputError(to_string(mode_) + " forms need a nonempty divisor");
  }

  const RingPtr& ring() const noexcept { return ring_; }
  CoefficientMode mode() const noexcept { return mode_; }
  std::size_t dimension() const noexcept { return ring_->size(); }

  /// True when covector i is dlog x_i rather than dx_i.
  bool is_log_covector(std::size_t i) const {
    return mode_ == CoefficientMode::log && ring_->in_divisor(i);
  }

  bool allows_poles() const { return mode_ == CoefficientMode::meromorphic; }

  friend bool operator==(const FormContext& a, const FormContext& b) {
    return a.mode_ == b.mode_ && same_ring(a.ring_, b.ring_);
  }

 private:
  RingPtr ring_;
  CoefficientMode mode_;
};

/// Sorted, duplicate-free set of covector indices (0-based).
using IndexSet = std::vector<std::size_t>;

/// Sign of inserting index i into the sorted set I, and the resulting set.
/// Returns 0 when i is already present.
inline int insert_sign(const IndexSet& I, std::size_t i, IndexSet& out) {
  out.clear();
  out.reserve(I.size() + 1);
  int smaller = 0;
  for (std::size_t j : I) {
    if (j == i) return 0;
    if (j < i) ++smaller;
  }
  out = I;
  out.insert(std::upper_bound(out.begin(), out.end(), i), i);
  return smaller % 2 == 0 ? 1 : -1;
}

class DifferentialForm {
 public:
  using ComponentMap = std::map<IndexSet, LaurentPolynomial>;

  DifferentialForm(FormContext ctx, std::size_t degree)
      : ctx_(std::move(ctx)), degree_(degree) {}

  static DifferentialForm function(FormContext ctx, const LaurentPolynomial& g) {
    DifferentialForm w(std::move(ctx), 0);
    w.add({}, g);
    return w;
  }

  static DifferentialForm basis(FormContext ctx, IndexSet I,
                                const LaurentPolynomial& g) {
    DifferentialForm w(std::move(ctx), I.size());
    w.add(std::move(I), g);
    return w;
  }

  const FormContext& context() const noexcept { return ctx_; }
  std::size_t degree() const noexcept { return degree_; }
  const ComponentMap& components() const noexcept { return comps_; }
  bool is_zero() const noexcept { return comps_.empty(); }

  /// Degree above the ambient dimension; such forms are always zero.
  bool beyond_top() const noexcept { return degree_ > ctx_.dimension(); }

  LaurentPolynomial coefficient(const IndexSet& I) const {
    auto it = comps_.find(I);
    return it == comps_.end() ? LaurentPolynomial(ctx_.ring()) : it->second;
  }

  /// Adds g * basis_I.
  void add(IndexSet I, const LaurentPolynomial& g) {
    require_same_ring(ctx_.ring(), g.ring());
    if (I.size() != degree_) throw InputError("index set has wrong size");
    for (std::size_t k = 0; k < I.size(); ++k) {
      if (I[k] >= ctx_.dimension()) throw InputError("covector index out of range");
      if (k > 0 && I[k - 1] >= I[k]) throw InputError("index set must be sorted");
    }
    if (!ctx_.allows_poles() && g.has_negative_exponents())
      throw InputError("negative exponents need meromorphic coefficients");
    if (g.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(std::move(I), g);
    if (!inserted) {
      it->second += g;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  /// Adds c * x^e * basis_I without the validation of add().
  void add_term(const IndexSet& I, const ExponentVector& e, const Rational& c) {
    if (c == 0) return;
    auto it = comps_.find(I);
    if (it == comps_.end())
      it = comps_.emplace(I, LaurentPolynomial(ctx_.ring())).first;
    it->second.add_term(e, c);
    if (it->second.is_zero()) comps_.erase(it);
  }

  DifferentialForm& operator+=(const DifferentialForm& o) {
    require_compatible(o);
    for (const auto& [I, g] : o.comps_) add(I, g);
    return *this;
  }

  DifferentialForm& operator-=(const DifferentialForm& o) {
    require_compatible(o);
    for (const auto& [I, g] : o.comps_) add(I, -g);
    return *this;
  }

  DifferentialForm& operator*=(const Rational& s) {
    if (s == 0) {
      comps_.clear();
    } else {
      for (auto& [I, g] : comps_) g *= s;
    }
    return *this;
  }

  friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) {
    return a += b;
  }
  friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) {
    return a -= b;
  }
  friend DifferentialForm operator*(const Rational& s, DifferentialForm a) {
    return a *= s;
  }

  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    return a.ctx_ == b.ctx_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

 private:
  void require_compatible(const DifferentialForm& o) const {
    if (!(ctx_ == o.ctx_)) throw InputError("forms live in different contexts");
    if (degree_ != o.degree_) throw InputError("forms have different degrees");
  }

  FormContext ctx_;
  std::size_t degree_;
  ComponentMap comps_;
};

/// The coefficients of df in the context basis: x_i * df/dx_i on dlog x_i,
/// df/dx_j on dx_j.
inline std::vector<LaurentPolynomial> differential_coefficients(
    const FormContext& ctx, const LaurentPolynomial& f) {
  require_same_ring(ctx.ring(), f.ring());
  if (f.has_negative_exponents())
    throw InputError("f must be a polynomial (no poles)");
  std::vector<LaurentPolynomial> out;
  const std::size_t n = ctx.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    auto di = partial_derivative(f, i);
    if (ctx.is_log_covector(i)) di = di * LaurentPolynomial::variable(ctx.ring(), i);
    out.push_back(std::move(di));
  }
  return out;
}

/// df ^ omega. Inserting covector i into I contributes
/// (-1)^(number of elements of I smaller than i).
inline DifferentialForm wedge_df(const DifferentialForm& w,
                                 const LaurentPolynomial& f) {
  const auto& ctx = w.context();
  const auto coeffs = differential_coefficients(ctx, f);
  DifferentialForm out(ctx, w.degree() + 1);
  IndexSet J;
  for (const auto& [I, g] : w.components()) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i].is_zero()) continue;
      const int s = insert_sign(I, i, J);
      if (s == 0) continue;
      for (const auto& [ea, ca] : coeffs[i].terms())
        for (const auto& [eb, cb] : g.terms()) out.add_term(J, ea + eb, s * ca * cb);
    }
  }
  return out;
}

/// d omega. d(g basis_I) = sum_j dg/dx_j dx_j ^ basis_I, with dx_j written
/// as x_j dlog x_j on log covectors; basis covectors are closed.
inline DifferentialForm exterior_derivative(const DifferentialForm& w) {
  const auto& ctx = w.context();
  const std::size_t n = ctx.dimension();
  DifferentialForm out(ctx, w.degree() + 1);
  IndexSet J;
  for (const auto& [I, g] : w.components()) {
    for (std::size_t j = 0; j < n; ++j) {
      const int s = insert_sign(I, j, J);
      if (s == 0) continue;
      const bool log = ctx.is_log_covector(j);
      for (const auto& [e, c] : g.terms()) {
        if (e[j] == 0) continue;
        ExponentVector de = e;
        if (!log) de[j] -= 1;
        out.add_term(J, de, s * c * e[j]);
      }
    }
  }
  return out;
}

/// u d omega - df ^ omega.
inline DifferentialForm twisted_operator(const DifferentialForm& w,
                                         const LaurentPolynomial& f,
                                         const Rational& u) {
  DifferentialForm out = wedge_df(w, f);
  out *= Rational(-1);
  if (u != 0) {
    auto dw = exterior_derivative(w);
    dw *= u;
    out += dw;
  }
  return out;
}

/// Largest pole order of a single monomial along the divisor components.
inline int pole_level(const ExponentVector& e, const Ring& ring) {
  int level = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (ring.in_divisor(i)) level = std::max(level, -e[i]);
  return level;
}

/// Smallest k with g in F_k: the maximum over terms and divisor components
/// of the pole order.
inline int pole_filtration_level(const LaurentPolynomial& g) {
  if (g.is_zero()) throw InputError("pole level of the zero polynomial");
  int level = 0;
  for (const auto& [e, c] : g.terms())
    level = std::max(level, pole_level(e, *g.ring()));
  return level;
}

namespace detail {

inline void require_pure_level(const DifferentialForm& w, int p) {
  if (w.context().mode() != CoefficientMode::meromorphic)
    throw InputError("graded operators act on meromorphic forms");
  if (p < 0) throw InputError("pole level must be nonnegative");
  const Ring& ring = *w.context().ring();
  for (const auto& [I, g] : w.components())
    for (const auto& [e, c] : g.terms())
      if (pole_level(e, ring) != p)
        throw InputError("form is not a pure class of pole level " +
                         std::to_string(p));
}

/// Keeps the terms whose pole level satisfies keep(level).
template <class Pred>
DifferentialForm filter_levels(const DifferentialForm& w, Pred keep) {
  DifferentialForm out(w.context(), w.degree());
  const Ring& ring = *w.context().ring();
  for (const auto& [I, g] : w.components())
    for (const auto& [e, c] : g.terms())
      if (keep(pole_level(e, ring))) out.add_term(I, e, c);
  return out;
}

}  // namespace detail

/// Symbol of d on gr^F_p -> gr^F_{p+1}: d omega with every term of pole
/// level <= p discarded.
inline DifferentialForm graded_exterior_derivative(const DifferentialForm& w,
                                                   int p) {
  detail::require_pure_level(w, p);
  return detail::filter_levels(exterior_derivative(w),
                               [p](int level) { return level > p; });
}

/// df ^ acting on gr^F_p: df ^ omega with the terms that dropped below pole
/// level p discarded.
inline DifferentialForm graded_wedge_df(const DifferentialForm& w,
                                        const LaurentPolynomial& f, int p) {
  detail::require_pure_level(w, p);
  return detail::filter_levels(wedge_df(w, f),
                               [p](int level) { return level == p; });
}

/// gr^F d - df ^ on a pure class of level p.
inline DifferentialForm graded_twisted_operator(const DifferentialForm& w,
                                                const LaurentPolynomial& f,
                                                int p) {
  return graded_exterior_derivative(w, p) - graded_wedge_df(w, f, p);
}

/// Rewrites a log form in the meromorphic basis: dlog x_i -> x_i^-1 dx_i.
inline DifferentialForm to_meromorphic(const DifferentialForm& w) {
  const auto& ctx = w.context();
  if (ctx.mode() != CoefficientMode::log)
    throw InputError("only log forms embed into meromorphic forms");
  FormContext mero(ctx.ring(), CoefficientMode::meromorphic);
  DifferentialForm out(mero, w.degree());
  for (const auto& [I, g] : w.components()) {
    ExponentVector shift(ctx.dimension(), 0);
    for (std::size_t i : I)
      if (ctx.is_log_covector(i)) shift[i] = -1;
    for (const auto& [e, c] : g.terms()) out.add_term(I, e + shift, c);
  }
  return out;
}

inline std::string covector_string(const FormContext& ctx, const IndexSet& I) {
  std::string out;
  for (std::size_t i : I) {
    if (!out.empty()) out += "^";
    out += (ctx.is_log_covector(i) ? "dlog " : "d") + ctx.ring()->name(i);
  }
  return out;
}

/// "(coef) * dx1^dx3 + ..." with log covectors rendered "dlog x1".
inline std::string to_string(const DifferentialForm& w,
                             const MonomialOrder& order = {}) {
  if (w.is_zero()) return "0";
  std::string out;
  for (const auto& [I, g] : w.components()) {
    if (!out.empty()) out += " + ";
    if (I.empty()) {
      out += "(" + to_string(g, order) + ")";
    } else {
      out += "(" + to_string(g, order) + ") * " + covector_string(w.context(), I);
    }
  }
  return out;
}

}  // namespace tdw
