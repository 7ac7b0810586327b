#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdw/cohomology.hpp"
#include "tdw/errors.hpp"
#include "tdw/forms.hpp"
#include "tdw/groebner.hpp"
#include "tdw/polynomial.hpp"

namespace tdw {

enum class VerdictStatus { pass, fail, unstable, degenerate };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::pass: return "pass";
    case VerdictStatus::fail: return "fail";
    case VerdictStatus::unstable: return "unstable";
    case VerdictStatus::degenerate: return "degenerate";
  }
  return "?";
}

/// Outcome of comparing two cohomology computations. Each side keeps its
/// full report (staircase, truncation trace) as evidence.
struct TheoremVerdict {
  std::string id;
  DimensionReport left;
  DimensionReport right;
  bool equal = false;
  bool certified = false;
  VerdictStatus status = VerdictStatus::fail;
  std::vector<std::string> notes;
  /// Sub-equalities, for statements that bundle several.
  std::vector<TheoremVerdict> parts;
};

namespace detail {

inline TheoremVerdict compare(std::string id, DimensionReport left,
                              DimensionReport right) {
  TheoremVerdict v;
  v.id = std::move(id);
  const bool stable = left.stable && right.stable;
  v.equal = stable && left.dims == right.dims;
  v.certified = v.equal && left.certified && right.certified;
  v.status = !stable ? VerdictStatus::unstable
                     : (v.equal ? VerdictStatus::pass : VerdictStatus::fail);
  v.left = std::move(left);
  v.right = std::move(right);
  return v;
}

inline void require_nonconstant(const LaurentPolynomial& f) {
  if (f.is_constant()) throw InputError("f must be nonconstant");
  if (f.has_negative_exponents()) throw InputError("f must be a polynomial");
}

inline const char* kNonIsolated =
    "non-isolated critical locus: the critical set V(J(f)) is not finite, so "
    "the Koszul complex of the partials is not a regular sequence and its "
    "cohomology is not finite-dimensional";

}  // namespace detail

struct CriticalLocus {
  GroebnerBasis ideal;
  bool zero_dimensional = false;
  std::optional<std::size_t> total_multiplicity;
  std::vector<ExponentVector> staircase;
};

/// Groebner basis of J(f); when finite, dim Q[x]/J(f) is the sum of the
/// local Milnor numbers over all critical points.
inline CriticalLocus critical_locus(const LaurentPolynomial& f,
                                    const MonomialOrder& order = {}) {
  detail::require_nonconstant(f);
  auto gens = detail::nonzero(jacobian_ideal(f));
  CriticalLocus out{buchberger(gens, order), false, {}, {}};
  const auto q = quotient_dimension(out.ideal);
  out.zero_dimensional = q.finite;
  if (q.finite) {
    out.total_multiplicity = q.dim;
    out.staircase = q.basis;
  }
  return out;
}

enum class MilnorScope { local_at_origin, global };

inline std::string to_string(MilnorScope s) {
  return s == MilnorScope::local_at_origin ? "local-at-origin" : "global";
}

struct MilnorNumber {
  std::size_t value = 0;
  MilnorScope scope = MilnorScope::global;
  std::vector<ExponentVector> staircase;
};

/// dim Q[x]/J(f). Only quasi-homogeneous f are reported as local at the
/// origin (their critical locus is a weighted cone, hence {0}).
inline MilnorNumber milnor_number(const LaurentPolynomial& f,
                                  const MonomialOrder& order = {}) {
  const auto locus = critical_locus(f, order);
  if (!locus.zero_dimensional) throw InputError(detail::kNonIsolated);
  MilnorNumber m;
  m.value = *locus.total_multiplicity;
  m.staircase = locus.staircase;
  m.scope = find_quasi_homogeneous_weights(without_divisor(f))
                ? MilnorScope::local_at_origin
                : MilnorScope::global;
  return m;
}

inline FormContext plain_context(const LaurentPolynomial& f) {
  return FormContext(f.ring(), CoefficientMode::polynomial);
}

/// (Omega, d - df^) against (Omega, df^): windowed linear algebra on the
/// left, Groebner staircase on the right.
inline TheoremVerdict check_kontsevich_barannikov(const LaurentPolynomial& f,
                                                  const Truncation& t = {}) {
  detail::require_nonconstant(f);
  const auto plain = without_divisor(f);
  if (!critical_locus(plain).zero_dimensional)
    throw InputError(detail::kNonIsolated);
  auto left = truncated_complex_dims(
      {plain_context(plain), plain, ComplexOperator::twisted, 1, t});
  auto right = koszul_cohomology_dims(plain, t);
  return detail::compare("KB", std::move(left), std::move(right));
}

/// (Omega(log D), d - df^) against (Omega(log D), df^).
inline TheoremVerdict check_log_corollary(const LaurentPolynomial& f,
                                          const Truncation& t = {}) {
  detail::require_nonconstant(f);
  if (!f.ring()->has_divisor()) throw InputError("log complexes need a divisor");
  if (!quotient_of(log_jacobian_ideal(f)).finite) {
    TheoremVerdict v;
    v.id = "KB-log";
    v.status = VerdictStatus::degenerate;
    v.notes.push_back(
        "degenerate modified ideal: (x_i df/dx_i for i in S, df/dx_j "
        "otherwise) is not zero-dimensional, so the log Koszul cohomology is "
        "not finite-dimensional");
    return v;
  }
  auto left = truncated_complex_dims({FormContext(f.ring(), CoefficientMode::log),
                                      f, ComplexOperator::twisted, 1, t});
  auto right = log_koszul_cohomology_dims(f, t);
  return detail::compare("KB-log", std::move(left), std::move(right));
}

/// Sum over critical values of the vanishing-cycle dimensions, instantiated
/// for isolated critical points as the total Milnor number, against the
/// twisted de Rham dimensions (which must vanish below the top degree).
inline TheoremVerdict check_sum_of_vanishing_cycles(const LaurentPolynomial& f,
                                                    const Truncation& t = {}) {
  detail::require_nonconstant(f);
  const auto plain = without_divisor(f);
  const auto locus = critical_locus(plain);
  if (!locus.zero_dimensional) throw InputError(detail::kNonIsolated);
  DimensionReport left;
  left.dims.assign(plain.nvars() + 1, 0);
  left.dims.back() = *locus.total_multiplicity;
  left.stable = true;
  left.certified = true;
  left.staircase = locus.staircase;
  left.notes.push_back("sum of Milnor numbers over all critical points");
  auto right = truncated_complex_dims(
      {plain_context(plain), plain, ComplexOperator::twisted, 1, t});
  return detail::compare("sum-vanishing-cycles", std::move(left), std::move(right));
}

/// The two consequences of the log/meromorphic filtered quasi-isomorphism:
///  (a) (Omega(log D), d - df^) vs (Omega[*D], d - df^)
///  (b) (Omega(log D), -df^) vs (Omega (x) gr^F O[*D], gr^F d - df^)
inline TheoremVerdict check_log_quasi_iso(const LaurentPolynomial& f,
                                          const Truncation& t = {}) {
  detail::require_nonconstant(f);
  if (!f.ring()->has_divisor()) throw InputError("log complexes need a divisor");
  const FormContext log_ctx(f.ring(), CoefficientMode::log);
  const FormContext mero_ctx(f.ring(), CoefficientMode::meromorphic);

  auto a = detail::compare(
      "a",
      truncated_complex_dims({log_ctx, f, ComplexOperator::twisted, 1, t}),
      truncated_complex_dims({mero_ctx, f, ComplexOperator::twisted, 1, t}));
  auto b = detail::compare(
      "b", log_koszul_cohomology_dims(f, t),
      truncated_complex_dims({mero_ctx, f, ComplexOperator::graded_meromorphic, 1, t}));

  TheoremVerdict v;
  v.id = "log-quasi-iso";
  v.equal = a.equal && b.equal;
  v.certified = a.certified && b.certified;
  if (a.status == VerdictStatus::unstable || b.status == VerdictStatus::unstable)
    v.status = VerdictStatus::unstable;
  else
    v.status = v.equal ? VerdictStatus::pass : VerdictStatus::fail;
  v.parts = {std::move(a), std::move(b)};
  return v;
}

}  // namespace tdw
