#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tdw/errors.hpp"
#include "tdw/forms.hpp"
#include "tdw/groebner.hpp"
#include "tdw/lattice.hpp"
#include "tdw/linalg.hpp"
#include "tdw/polynomial.hpp"

namespace tdw {

enum class ComplexOperator {
  koszul,              // df ^
  twisted,             // u d - df ^
  graded_meromorphic,  // gr^F d - df ^ on gr^F of meromorphic forms
};

inline std::string to_string(ComplexOperator op) {
  switch (op) {
    case ComplexOperator::koszul: return "koszul";
    case ComplexOperator::twisted: return "twisted";
    case ComplexOperator::graded_meromorphic: return "graded-meromorphic";
  }
  return "?";
}

/// Window parameters. A degree bound of 0 means "use the certified bound".
struct Truncation {
  long degree_bound = 0;
  int pole_bound = 1;
  int max_doublings = 4;
  /// Overrides the weights used for the window; the polynomial must have
  /// weighted degree <= N in every term for the window to be a subcomplex.
  std::optional<std::vector<int>> weights;
};

struct TruncationLevel {
  long degree_bound = 0;
  int pole_bound = 0;
  std::vector<std::size_t> dims;
};

struct DimensionReport {
  std::vector<std::size_t> dims;  // empty when not stable
  bool stable = false;
  bool certified = false;
  std::vector<TruncationLevel> trace;
  std::vector<ExponentVector> staircase;
  std::vector<std::string> notes;
};

struct ComplexSpec {
  FormContext context;
  LaurentPolynomial f;
  ComplexOperator op = ComplexOperator::twisted;
  Rational u = 1;
  Truncation truncation;
};

/// Weights used to cut windows out of a complex: x_i and dx_i both weigh
/// w_i, dlog x_i weighs 0, and f has weighted degree at most N termwise.
/// Then d keeps the weight, df^ raises it by at most N.
struct WindowGrading {
  std::vector<int> weights;
  long N = 0;
  bool quasi_homogeneous = false;
  bool nondegenerate_leading_form = false;

  /// Weighted socle degree of the Milnor algebra plus one operator step.
  long certified_bound() const {
    long b = N;
    for (int w : weights) b += N - w;
    return b;
  }
};

inline LaurentPolynomial without_divisor(const LaurentPolynomial& p) {
  return p.in_ring(with_divisor(p.ring(), {}));
}

namespace detail {

inline std::vector<LaurentPolynomial> nonzero(std::vector<LaurentPolynomial> v) {
  std::erase_if(v, [](const LaurentPolynomial& p) { return p.is_zero(); });
  return v;
}

}  // namespace detail

/// Generators of the Jacobian ideal in the divisor-free ring.
inline std::vector<LaurentPolynomial> jacobian_ideal(const LaurentPolynomial& f) {
  const auto plain = without_divisor(f);
  std::vector<LaurentPolynomial> gens;
  for (std::size_t i = 0; i < plain.nvars(); ++i)
    gens.push_back(partial_derivative(plain, i));
  return gens;
}

/// x_i df/dx_i for divisor variables, df/dx_j otherwise, in the
/// divisor-free ring.
inline std::vector<LaurentPolynomial> log_jacobian_ideal(const LaurentPolynomial& f) {
  const auto plain = without_divisor(f);
  std::vector<LaurentPolynomial> gens;
  for (std::size_t i = 0; i < plain.nvars(); ++i) {
    auto di = partial_derivative(plain, i);
    if (f.ring()->in_divisor(i)) di = di * LaurentPolynomial::variable(plain.ring(), i);
    gens.push_back(std::move(di));
  }
  return gens;
}

/// Finite quotient of a (possibly zero) generator list; the zero ideal is
/// reported infinite and the unit ideal as dimension 0.
inline QuotientDimension quotient_of(const std::vector<LaurentPolynomial>& gens) {
  const auto nz = detail::nonzero(gens);
  if (nz.empty()) return {};
  return quotient_dimension(nz);
}

/// Terms of f of top weighted degree.
inline LaurentPolynomial leading_form(const LaurentPolynomial& f, const std::vector<int>& w) {
  const long top = weighted_degree(f, w).degree;
  LaurentPolynomial out(f.ring());
  for (const auto& [e, c] : f.terms())
    if (weighted_degree(e, w) == top) out += LaurentPolynomial::monomial(f.ring(), e, c);
  return out;
}

namespace detail {

// Largest single weight tried when looking for a nondegenerate leading form.
constexpr int kMaxSearchWeight = 6;

/// Whether the leading form of f for weights w has finite (log) Jacobian
/// quotient, the condition under which weight windows converge to the
/// true cohomology.
inline bool nondegenerate_leading_form(const LaurentPolynomial& f, const std::vector<int>& w) {
  const auto lead = leading_form(f, w);
  const auto gens = f.ring()->divisor_indices().empty() ? jacobian_ideal(lead)
                                                        : log_jacobian_ideal(lead);
  return quotient_of(gens).finite;
}

/// Weight vectors with entries in 1..max, by increasing sum, then
/// lexicographically.
inline std::vector<std::vector<int>> candidate_weights(std::size_t n, int max) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(n, 1);
  for (;;) {
    out.push_back(w);
    std::size_t i = 0;
    while (i < n && w[i] == max) w[i++] = 1;
    if (i == n) break;
    ++w[i];
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const int sa = std::accumulate(a.begin(), a.end(), 0);
    const int sb = std::accumulate(b.begin(), b.end(), 0);
    return sa != sb ? sa < sb : a < b;
  });
  return out;
}

}  // namespace detail

inline WindowGrading window_grading(const LaurentPolynomial& f,
                                    const std::optional<std::vector<int>>& override_w = {}) {
  if (f.is_constant()) throw InputError("f must be nonconstant");
  if (f.has_negative_exponents()) throw InputError("f must be a polynomial");
  WindowGrading g;
  const auto plain = without_divisor(f);
  if (override_w) {
    g.weights = *override_w;
    const auto wd = weighted_degree(plain, g.weights);
    g.N = wd.degree;
    g.quasi_homogeneous = wd.homogeneous;
  } else if (auto w = find_quasi_homogeneous_weights(plain)) {
    g.weights = *w;
    g.N = weighted_degree(plain, g.weights).degree;
    g.quasi_homogeneous = true;
  } else {
    // Without a grading making f homogeneous, windows are cut by weights
    // whose leading form is nondegenerate. With a degenerate leading form
    // the window boundary leaks spurious classes that survive doubling.
    g.weights.assign(f.nvars(), 1);
    if (f.nvars() <= 3) {
      for (const auto& w : detail::candidate_weights(f.nvars(), detail::kMaxSearchWeight))
        if (detail::nondegenerate_leading_form(f, w)) {
          g.weights = w;
          g.nondegenerate_leading_form = true;
          break;
        }
    }
    g.N = weighted_degree(plain, g.weights).degree;
  }
  if (g.N <= 0) throw InputError("f has nonpositive weighted degree");
  return g;
}

/// f rewritten in linear coordinates where its windows can be trusted,
/// with the substitution that was applied.
struct AdaptedCoordinates {
  LaurentPolynomial f;
  std::string description;
};

namespace detail {

// Integers beyond this are not factored when searching for rational roots.
constexpr long kMaxFactoredCoefficient = 1000000000000L;

inline std::vector<Integer> positive_divisors(Integer v) {
  v = abs(v);
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= v; ++d) {
    if (v % d != 0) continue;
    small.push_back(d);
    if (d * d != v) large.push_back(v / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Rational roots of c[0] + c[1] t + ... (distinct, ascending), or nothing
/// when the coefficients are too large to factor.
inline std::optional<std::vector<Rational>> rational_roots(std::vector<Rational> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::vector<Rational> roots;
  if (c.size() <= 1) return roots;
  if (c.front() == 0) {
    roots.push_back(0);
    while (c.front() == 0) c.erase(c.begin());
  }
  Integer den = 1;
  for (const auto& x : c) den = lcm(den, Integer(x.get_den()));
  std::vector<Integer> z;
  for (const auto& x : c) z.push_back(Integer(x.get_num()) * (den / Integer(x.get_den())));
  if (abs(z.front()) > kMaxFactoredCoefficient || abs(z.back()) > kMaxFactoredCoefficient)
    return std::nullopt;
  for (const auto& p : positive_divisors(z.front()))
    for (const auto& q : positive_divisors(z.back()))
      for (int sign : {-1, 1}) {
        const Rational t = make_rational(sign * p, q);
        Rational v = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
        if (v == 0 && std::find(roots.begin(), roots.end(), t) == roots.end())
          roots.push_back(t);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Linear forms (coefficient vectors) dividing the binary form top.
inline std::vector<std::vector<Rational>> binary_linear_factors(const LaurentPolynomial& top,
                                                                int d) {
  std::vector<Rational> c(static_cast<std::size_t>(d) + 1, 0);
  for (const auto& [e, coef] : top.terms()) c[static_cast<std::size_t>(e[0])] = coef;
  std::vector<std::vector<Rational>> out;
  if (c.back() == 0) out.push_back({0, 1});  // y divides
  if (auto roots = rational_roots(c))
    for (const auto& t : *roots) out.push_back({1, -t});  // x - t y
  return out;
}

inline LaurentPolynomial linear_form(const RingPtr& ring, const std::vector<Rational>& a) {
  LaurentPolynomial out(ring);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) out += a[i] * LaurentPolynomial::variable(ring, i);
  return out;
}

inline std::string substitution_text(const RingPtr& ring,
                                     const std::vector<LaurentPolynomial>& images) {
  std::string out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] == LaurentPolynomial::variable(ring, i)) continue;
    out += (out.empty() ? "" : ", ") + ring->name(i) + " -> " + to_string(images[i]);
  }
  return out;
}

/// Candidate substitutions, each listing the image of every variable.
inline std::vector<std::vector<LaurentPolynomial>> coordinate_candidates(
    const LaurentPolynomial& f) {
  const std::size_t n = f.nvars();
  const int d = f.total_degree();
  const auto& ring = f.ring();
  const auto top = leading_form(f, std::vector<int>(n, 1));
  std::vector<std::vector<LaurentPolynomial>> out;

  if (n == 2) {
    // New coordinates X = l1, Y = l2 from linear factors of the top form
    // and the old coordinates; old variables are images of the inverse map.
    auto forms = binary_linear_factors(top, d);
    forms.push_back({1, 0});
    forms.push_back({0, 1});
    for (const auto& l1 : forms)
      for (const auto& l2 : forms) {
        const Rational det = l1[0] * l2[1] - l1[1] * l2[0];
        if (det == 0) continue;
        if (l1 == std::vector<Rational>{1, 0} && l2 == std::vector<Rational>{0, 1}) continue;
        out.push_back({linear_form(ring, {l2[1] / det, -l1[1] / det}),
                       linear_form(ring, {-l2[0] / det, l1[0] / det})});
      }
    return out;
  }

  // Top form c*l^d: make l a coordinate.
  std::size_t k = n;
  Rational ck;
  for (std::size_t i = 0; i < n && k == n; ++i) {
    ExponentVector e(n, 0);
    e[i] = d;
    ck = top.coefficient(e);
    if (ck != 0) k = i;
  }
  if (k == n) return out;
  auto l = top;
  for (int j = 1; j < d; ++j) l = partial_derivative(l, k);
  std::vector<Rational> a(n, 0);
  std::size_t support = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ExponentVector e(n, 0);
    e[i] = 1;
    a[i] = l.coefficient(e);
    if (a[i] != 0) ++support;
  }
  if (support < 2) return out;
  Rational ak_pow = 1;
  for (int j = 0; j < d; ++j) ak_pow *= a[k];
  if (top * LaurentPolynomial::constant(ring, ak_pow) != ck * pow(l, d)) return out;
  // x_k -> (x_k - sum_{i != k} a_i x_i) / a_k turns l into a_k * x_k.
  std::vector<LaurentPolynomial> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(LaurentPolynomial::variable(ring, i));
  auto img = images[k];
  for (std::size_t i = 0; i < n; ++i)
    if (i != k) img -= a[i] * images[i];
  images[k] = LaurentPolynomial::constant(ring, 1 / a[k]) * img;
  out.push_back(std::move(images));
  return out;
}

}  // namespace detail

/// Linear coordinates in which f is quasi-homogeneous or has a
/// nondegenerate leading form, found among coordinates built from linear
/// factors of the top-degree form. Twisted cohomology is invariant under
/// linear automorphisms, so windows may be cut in the new coordinates.
inline std::optional<AdaptedCoordinates> adapted_coordinates(const LaurentPolynomial& f) {
  if (f.nvars() < 2 || f.total_degree() < 2) return std::nullopt;
  // Quasi-homogeneous coordinates first: they also certify the window.
  std::optional<AdaptedCoordinates> fallback;
  for (const auto& images : detail::coordinate_candidates(f)) {
    auto g = substitute(f, images);
    const auto grading = window_grading(g);
    if (grading.quasi_homogeneous)
      return AdaptedCoordinates{std::move(g), detail::substitution_text(f.ring(), images)};
    if (grading.nondegenerate_leading_form && !fallback)
      fallback = AdaptedCoordinates{std::move(g), detail::substitution_text(f.ring(), images)};
  }
  return fallback;
}

namespace detail {

struct BasisElement {
  IndexSet covectors;
  ExponentVector exponent;  // of the coefficient monomial
};

/// One multidegree class of a windowed complex: basis per form degree.
struct Block {
  std::vector<std::vector<BasisElement>> cells;
  std::vector<std::map<std::pair<IndexSet, ExponentVector>, std::size_t>> index;
};

inline std::vector<IndexSet> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  IndexSet cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Enumerates the windowed basis of degree-k forms: multidegree m = a + e_I
/// (dlog covectors contribute 0), with m_i >= -P on divisor variables in the
/// meromorphic modes, coefficients polynomial otherwise, and
/// sum_i w_i m_i <= D + k N.
template <class Visit>
void enumerate_window(const FormContext& ctx, const WindowGrading& g,
                      std::size_t k, long D, int P, Visit&& visit) {
  const std::size_t n = ctx.dimension();
  const bool poles = ctx.allows_poles();
  const long budget = D + static_cast<long>(k) * g.N;
  for (const auto& I : subsets_of_size(n, k)) {
    std::vector<int> shift(n, 0), lower(n, 0);
    for (std::size_t i : I)
      if (!ctx.is_log_covector(i)) shift[i] = 1;
    for (std::size_t i = 0; i < n; ++i)
      lower[i] = (poles && ctx.ring()->in_divisor(i)) ? -P : shift[i];
    // suffix_min[i] = least weight of coordinates i..n-1
    std::vector<long> suffix_min(n + 1, 0);
    for (std::size_t i = n; i-- > 0;)
      suffix_min[i] = suffix_min[i + 1] + static_cast<long>(g.weights[i]) * lower[i];
    ExponentVector m(n, 0);
    auto rec = [&](auto&& self, std::size_t i, long used) -> void {
      if (i == n) {
        ExponentVector a(n);
        for (std::size_t j = 0; j < n; ++j) a[j] = m[j] - shift[j];
        visit(I, m, std::move(a));
        return;
      }
      for (int v = lower[i];; ++v) {
        const long w = used + static_cast<long>(g.weights[i]) * v;
        if (w + suffix_min[i + 1] > budget) break;
        m[i] = v;
        self(self, i + 1, w);
      }
    };
    if (suffix_min[0] <= budget) rec(rec, 0, 0);
  }
}

inline DifferentialForm apply_operator(const ComplexSpec& spec,
                                       const DifferentialForm& w,
                                       const ExponentVector& exponent) {
  switch (spec.op) {
    case ComplexOperator::koszul:
      return wedge_df(w, spec.f);
    case ComplexOperator::twisted:
      return twisted_operator(w, spec.f, spec.u);
    case ComplexOperator::graded_meromorphic:
      return graded_twisted_operator(
          w, spec.f, pole_level(exponent, *spec.context.ring()));
  }
  throw InternalError("unknown operator");
}

/// Cohomology dimensions of the finite subcomplex cut out by (D, P).
/// Runs body on every item using a few worker threads; the first exception
/// is rethrown after all workers finish.
template <class T, class Body>
void parallel_for_each(std::vector<T>& items, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(items.size(), std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (auto& item : items) body(item);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < items.size(); i = next++) {
        try {
          body(items[i]);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline std::vector<std::size_t> window_dims(const ComplexSpec& spec,
                                            const WindowGrading& g,
                                            const LatticeQuotient& classes,
                                            long D, int P) {
  const auto& ctx = spec.context;
  const std::size_t n = ctx.dimension();
  std::map<ExponentVector, Block> blocks;
  for (std::size_t k = 0; k <= n; ++k) {
    enumerate_window(ctx, g, k, D, P,
                     [&](const IndexSet& I, const ExponentVector& m, ExponentVector a) {
                       Block& b = blocks[classes.reduce(m)];
                       if (b.cells.empty()) {
                         b.cells.resize(n + 1);
                         b.index.resize(n + 1);
                       }
                       b.index[k].emplace(std::make_pair(I, a), b.cells[k].size());
                       b.cells[k].push_back({I, std::move(a)});
                     });
  }
  struct Job {
    const Block* block;
    std::size_t k;
    std::size_t rank = 0;
  };
  std::vector<Job> jobs;
  for (const auto& [key, b] : blocks)
    for (std::size_t k = 0; k < n; ++k)
      if (!b.cells[k].empty() && !b.cells[k + 1].empty()) jobs.push_back({&b, k});

  auto run = [&](Job& job) {
    const Block& b = *job.block;
    const std::size_t k = job.k;
    SparseMatrix M(b.cells[k].size(), b.cells[k + 1].size());
    for (std::size_t r = 0; r < b.cells[k].size(); ++r) {
      const auto& e = b.cells[k][r];
      auto w = DifferentialForm::basis(
          ctx, e.covectors, LaurentPolynomial::monomial(ctx.ring(), e.exponent, Rational(1)));
      const auto image = apply_operator(spec, w, e.exponent);
      SparseMatrix::Row row;
      for (const auto& [J, coef] : image.components()) {
        for (const auto& [ex, c] : coef.terms()) {
          auto it = b.index[k + 1].find({J, ex});
          if (it == b.index[k + 1].end())
            throw InternalError("truncation window is not a subcomplex");
          row.emplace_back(it->second, c);
        }
      }
      M.set_row(r, std::move(row));
    }
    job.rank = exact_rank(M);
  };
  parallel_for_each(jobs, run);

  std::map<const Block*, std::vector<std::size_t>> ranks;
  for (const auto& job : jobs) {
    auto& r = ranks[job.block];
    if (r.empty()) r.assign(n + 1, 0);
    r[job.k] = job.rank;
  }
  std::vector<std::size_t> dims(n + 1, 0);
  for (const auto& [key, b] : blocks) {
    std::vector<std::size_t> rank(n + 1, 0);
    if (auto it = ranks.find(&b); it != ranks.end()) rank = it->second;
    for (std::size_t k = 0; k <= n; ++k) {
      const std::size_t in = k > 0 ? rank[k - 1] : 0;
      dims[k] += b.cells[k].size() - rank[k] - in;
    }
  }
  return dims;
}

inline std::vector<ExponentVector> support(const LaurentPolynomial& f) {
  std::vector<ExponentVector> out;
  for (const auto& [e, c] : f.terms()) out.push_back(e);
  return out;
}

}  // namespace detail

/// Cohomology of the complex in growing windows. Windows are genuine
/// subcomplexes (see enumerate_window), so each level's numbers are exact
/// cohomology of a finite complex; the window doubles until two consecutive
/// levels agree. Certification needs quasi-homogeneous f, an isolated
/// critical locus of the matching Koszul ideal, and a degree bound at or
/// above WindowGrading::certified_bound.
inline DimensionReport truncated_complex_dims(const ComplexSpec& spec) {
  const auto& ctx = spec.context;
  require_same_ring(ctx.ring(), spec.f.ring());
  const auto& t = spec.truncation;
  if (t.degree_bound < 0 || t.pole_bound <= 0 || t.max_doublings < 0)
    throw InputError("truncation bounds must be positive");
  if (spec.op == ComplexOperator::graded_meromorphic &&
      ctx.mode() != CoefficientMode::meromorphic)
    throw InputError("the graded operator needs a meromorphic context");

  const WindowGrading g = window_grading(spec.f, t.weights);
  const bool plain_mode = ctx.mode() == CoefficientMode::polynomial &&
                          spec.f.ring()->divisor_indices().empty();
  if (!g.quasi_homogeneous && !g.nondegenerate_leading_form && !t.weights && plain_mode) {
    if (auto adapted = adapted_coordinates(spec.f)) {
      ComplexSpec changed = spec;
      changed.f = adapted->f;
      auto report = truncated_complex_dims(changed);
      report.notes.insert(report.notes.begin(),
                          "coordinates changed: " + adapted->description);
      return report;
    }
  }
  const LatticeQuotient classes(detail::support(spec.f), ctx.dimension());
  const long D0 = t.degree_bound > 0 ? t.degree_bound : g.certified_bound();

  DimensionReport report;
  std::string wnote = "weights (";
  for (std::size_t i = 0; i < g.weights.size(); ++i)
    wnote += (i ? "," : "") + std::to_string(g.weights[i]);
  wnote += "), weighted degree " + std::to_string(g.N);
  report.notes.push_back(wnote);
  report.notes.push_back(g.quasi_homogeneous ? "quasi-homogeneous"
                                             : "not quasi-homogeneous");
  if (!g.quasi_homogeneous && !t.weights)
    report.notes.push_back(g.nondegenerate_leading_form
                               ? "leading form nondegenerate for these weights"
                               : "no weights up to 6 give a nondegenerate leading form");

  for (int j = 0; j <= t.max_doublings; ++j) {
    const long D = D0 << j;
    const int P = t.pole_bound << j;
    TruncationLevel level{D, ctx.allows_poles() ? P : 0,
                          detail::window_dims(spec, g, classes, D, P)};
    report.trace.push_back(level);
    const auto& tr = report.trace;
    if (tr.size() >= 2 && tr[tr.size() - 1].dims == tr[tr.size() - 2].dims) {
      report.stable = true;
      report.dims = level.dims;
      break;
    }
  }
  if (!report.stable) {
    report.notes.push_back("unstable: no two consecutive windows agree");
    return report;
  }
  if (!g.quasi_homogeneous && !g.nondegenerate_leading_form && !t.weights) {
    // Agreement across doublings proves nothing here: the associated graded
    // complex is not exact, so the window boundary keeps contributing.
    report.stable = false;
    report.dims.clear();
    report.notes.push_back("unstable: windows agree but need not converge "
                           "(degenerate leading form)");
    return report;
  }

  bool isolated = false;
  if (g.quasi_homogeneous && spec.op != ComplexOperator::graded_meromorphic) {
    std::vector<LaurentPolynomial> gens;
    const auto plain = without_divisor(spec.f);
    for (std::size_t i = 0; i < ctx.dimension(); ++i) {
      auto di = partial_derivative(plain, i);
      if (ctx.mode() != CoefficientMode::polynomial && ctx.ring()->in_divisor(i))
        di = di * LaurentPolynomial::variable(plain.ring(), i);
      gens.push_back(std::move(di));
    }
    std::erase_if(gens, [](const LaurentPolynomial& p) { return p.is_zero(); });
    isolated = !gens.empty() && is_zero_dimensional(gens);
  }
  report.certified = g.quasi_homogeneous && isolated &&
                     report.trace.front().degree_bound >= g.certified_bound() &&
                     spec.op != ComplexOperator::graded_meromorphic;
  return report;
}

inline DimensionReport staircase_report(std::size_t n, const QuotientDimension& q) {
  DimensionReport r;
  r.dims.assign(n + 1, 0);
  r.dims[n] = q.dim;
  r.stable = true;
  r.certified = true;
  r.staircase = q.basis;
  return r;
}

/// (Omega, df^) on affine space. With an isolated critical locus the
/// partials form a regular sequence and only the top degree survives; it
/// is the staircase count of Q[x]/J(f).
inline DimensionReport koszul_cohomology_dims(const LaurentPolynomial& f,
                                              const Truncation& fallback = {}) {
  if (f.is_constant()) throw InputError("f must be nonconstant");
  const auto plain = without_divisor(f);
  const auto q = quotient_of(jacobian_ideal(plain));
  if (q.finite) {
    auto r = staircase_report(plain.nvars(), q);
    r.notes.push_back("Jacobian ideal zero-dimensional: regular sequence");
    return r;
  }
  auto r = truncated_complex_dims(
      {FormContext(plain.ring(), CoefficientMode::polynomial), plain,
       ComplexOperator::koszul, 0, fallback});
  r.certified = false;
  r.notes.push_back("Jacobian ideal not zero-dimensional: truncated fallback");
  return r;
}

/// (Omega(log D), df^). Top degree from the staircase of the modified ideal
/// (x_i f_i for i in S, f_j otherwise); lower degrees from windowed linear
/// algebra.
inline DimensionReport log_koszul_cohomology_dims(const LaurentPolynomial& f,
                                                  const Truncation& t = {}) {
  if (f.is_constant()) throw InputError("f must be nonconstant");
  if (!f.ring()->has_divisor()) throw InputError("log complexes need a divisor");
  const std::size_t n = f.nvars();
  const FormContext ctx(f.ring(), CoefficientMode::log);
  auto windowed = truncated_complex_dims({ctx, f, ComplexOperator::koszul, 0, t});
  const auto q = quotient_of(log_jacobian_ideal(f));
  if (!q.finite) {
    windowed.certified = false;
    windowed.notes.push_back("modified ideal not zero-dimensional");
    return windowed;
  }
  DimensionReport r = staircase_report(n, q);
  r.trace = windowed.trace;
  r.notes = windowed.notes;
  r.notes.push_back("modified ideal zero-dimensional: regular sequence");
  if (!windowed.stable) {
    r.dims.clear();
    r.stable = false;
    r.certified = false;
    r.notes.push_back("unstable: lower degrees did not stabilize");
    return r;
  }
  bool lower_zero = true;
  for (std::size_t k = 0; k < n; ++k) {
    r.dims[k] = windowed.dims[k];
    if (windowed.dims[k] != 0) lower_zero = false;
  }
  r.certified = lower_zero;
  return r;
}

}  // namespace tdw
