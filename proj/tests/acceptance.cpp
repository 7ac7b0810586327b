// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tdw/tdw.hpp"

#ifndef TDW_CORPUS_FILE
#define TDW_CORPUS_FILE "data/corpus.jsonl"
#endif

namespace {

using namespace tdw;
using Dims = std::vector<std::size_t>;

struct Criterion {
  bool ok = true;
  std::vector<std::string> details;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      details.push_back(what);
    }
  }
};

std::string dims_str(const Dims& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "]";
}

std::vector<detail::CorpusMember> load_corpus() {
  std::ifstream in(TDW_CORPUS_FILE);
  if (!in) throw InputError(std::string("cannot open ") + TDW_CORPUS_FILE);
  return detail::read_corpus(in);
}

// Top dimensions stated for the dimension-equality corpus.
const std::map<std::string, std::size_t>& stated_tops() {
  static const std::map<std::string, std::size_t> m = [] {
    std::map<std::string, std::size_t> out;
    for (int k = 1; k <= 6; ++k) out["x^" + std::to_string(k + 1)] = k;
    out["x^2*y + y^3"] = 4;
    out["x^3 + y^4"] = 6;
    out["x^3 + x*y^3"] = 7;
    out["x^3 + y^5"] = 8;
    for (int p = 2; p <= 5; ++p)
      for (int q = 2; q <= 5; ++q)
        out["x^" + std::to_string(p) + " + y^" + std::to_string(q)] = (p - 1) * (q - 1);
    out["x^2 + y^2 + z^2"] = 1;
    out["x^3 + y^3 + z^3"] = 8;
    out["x^3 - 3*x"] = 2;
    out["(x^2 - 1)^2"] = 3;
    return out;
  }();
  return m;
}

// 1 and 2 share the per-member computations.
void dimension_suites(Criterion& c1, Criterion& c2, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  std::set<std::string> covered;
  for (const auto& m : load_corpus()) {
    if (!m.divisor.empty()) continue;
    covered.insert(m.f);
    const auto f = parse_polynomial(m.f, VariableDeclaration{m.vars, m.divisor});
    const auto kb = check_kontsevich_barannikov(f);
    const bool qh = find_quasi_homogeneous_weights(f).has_value();
    c1.require(kb.equal, m.name + ": twisted " + dims_str(kb.left.dims) + " vs koszul " +
                             dims_str(kb.right.dims));
    if (qh) c1.require(kb.certified, m.name + ": quasi-homogeneous but not certified");
    const auto it = stated_tops().find(m.f);
    c1.require(it != stated_tops().end(), m.name + ": not in the stated list");
    if (it != stated_tops().end() && kb.equal)
      c1.require(kb.right.dims.back() == it->second,
                 m.name + ": top " + std::to_string(kb.right.dims.back()) + ", stated " +
                     std::to_string(it->second));

    const auto locus = critical_locus(f);
    const auto mu = milnor_number(f);
    c2.require(locus.zero_dimensional, m.name + ": critical locus not isolated");
    c2.require(m.expected_milnor && *m.expected_milnor == mu.value,
               m.name + ": corpus expects a different Milnor number");
    if (kb.equal && locus.total_multiplicity) {
      c2.require(mu.value == *locus.total_multiplicity && mu.value == kb.right.dims.back() &&
                     mu.value == kb.left.dims.back(),
                 m.name + ": milnor " + std::to_string(mu.value) + ", koszul top " +
                     std::to_string(kb.right.dims.back()) + ", twisted top " +
                     std::to_string(kb.left.dims.back()));
      for (std::size_t k = 0; k + 1 < kb.left.dims.size(); ++k)
        c2.require(kb.left.dims[k] == 0, m.name + ": nonzero lower twisted dimension");
    }
    const auto sum = check_sum_of_vanishing_cycles(f);
    c2.require(sum.equal, m.name + ": vanishing-cycle sum mismatch");
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& [f, top] : stated_tops())
    c1.require(covered.count(f) == 1, "corpus lacks " + f);
  c1.require(seconds < 120.0, "runtime " + std::to_string(seconds) + " s");
}

struct LogPair {
  const char* f;
  std::vector<std::string> vars;
  std::vector<std::string> divisor;
};

const std::vector<LogPair> kLogPairs = {
    {"x", {"x"}, {"x"}},
    {"x^2", {"x"}, {"x"}},
    {"x + y^2", {"x", "y"}, {"x"}},
    {"x + y", {"x", "y"}, {"x", "y"}},
    {"x^3 + y^3", {"x", "y"}, {"x"}},
    {"x + y + z", {"x", "y", "z"}, {"x", "y", "z"}},
};

std::string pair_name(const LogPair& p) {
  std::string s = std::string("(") + p.f + ", {";
  for (std::size_t i = 0; i < p.divisor.size(); ++i) s += (i ? "," : "") + p.divisor[i];
  return s + "})";
}

void log_suite(Criterion& c) {
  std::size_t passed = 0;
  for (const auto& p : kLogPairs) {
    const auto f = parse_polynomial(p.f, VariableDeclaration{p.vars, p.divisor});
    const bool zero_dim = quotient_of(log_jacobian_ideal(f)).finite;
    c.require(zero_dim, pair_name(p) + ": modified ideal not zero-dimensional");
    const auto v = check_log_corollary(f);
    c.require(v.status == VerdictStatus::pass,
              pair_name(p) + ": " + dims_str(v.left.dims) + " vs " + dims_str(v.right.dims));
    if (v.status == VerdictStatus::pass) ++passed;
  }
  c.require(passed >= 5, "fewer than 5 pairs passed");
  // (xy, {x}): the modified ideal (xy, x) cuts out the line x = 0, so the
  // log Koszul side is infinite-dimensional. It must be reported as such.
  const auto xy = parse_polynomial("x*y", VariableDeclaration{{"x", "y"}, {"x"}});
  c.require(!quotient_of(log_jacobian_ideal(xy)).finite,
            "(x*y, {x}): modified ideal unexpectedly zero-dimensional");
  c.require(check_log_corollary(xy).status == VerdictStatus::degenerate,
            "(x*y, {x}): not reported as degenerate");
  c.details.push_back(std::to_string(passed) + " zero-dimensional pairs equal; (x*y, {x}) "
                      "reported degenerate (modified ideal (x*y, x) is not zero-dimensional)");
}

void quasi_iso_suite(Criterion& c) {
  std::size_t passed = 0;
  for (const auto& p : kLogPairs) {
    const auto f = parse_polynomial(p.f, VariableDeclaration{p.vars, p.divisor});
    const auto v = check_log_quasi_iso(f);
    bool ok = v.status == VerdictStatus::pass;
    for (const auto& part : v.parts) {
      for (const auto* side : {&part.left, &part.right}) {
        const auto& tr = side->trace;
        if (tr.size() >= 2) ok = ok && tr[tr.size() - 1].dims == tr[tr.size() - 2].dims;
      }
    }
    const bool required = std::string(p.f) == "x" || std::string(p.f) == "x + y^2";
    if (required) c.require(ok, pair_name(p) + ": " + to_string(v.status));
    if (ok) ++passed;
  }
  c.require(passed >= 3, "fewer than 3 examples passed");
  c.details.push_back(std::to_string(passed) + " of " + std::to_string(kLogPairs.size()) +
                      " examples pass both equalities");
}

// --- Groebner oracle -------------------------------------------------------

std::vector<ExponentVector> monomials_up_to(std::size_t n, int d) {
  std::vector<ExponentVector> out;
  ExponentVector e(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      out.push_back(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[i] = a;
      rec(i + 1, left - a);
    }
    e[i] = 0;
  };
  rec(0, d);
  // Higher degree first, so echelon rows with a low-degree pivot span the
  // low-degree part of the row space.
  std::stable_sort(out.begin(), out.end(), [](const ExponentVector& a, const ExponentVector& b) {
    return total_degree(a) > total_degree(b) ||
           (total_degree(a) == total_degree(b) && a > b);
  });
  return out;
}

// Row echelon form over Q, dense; returns pivot rows.
std::vector<std::vector<Rational>> echelon(std::vector<std::vector<Rational>> rows,
                                           std::size_t cols) {
  std::vector<std::vector<Rational>> out;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Rational inv = 1 / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      const Rational m = rows[i][col];
      for (std::size_t j = col; j < cols; ++j) rows[i][j] -= m * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

// Reduces v against echelon rows; true if v lands in their span.
bool in_span(std::vector<Rational> v, const std::vector<std::vector<Rational>>& basis) {
  for (const auto& row : basis) {
    std::size_t col = 0;
    while (row[col] == 0) ++col;
    if (v[col] == 0) continue;
    const Rational m = v[col];
    for (std::size_t j = col; j < v.size(); ++j) v[j] -= m * row[j];
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

enum class OracleAnswer { member, non_member, inconsistent, undetermined };

// Membership of p in (gens) by linear algebra on the span of m*g with
// deg(m g) <= D. Non-membership is concluded once the degree <= deg p part
// of the span has the dimension that the staircase predicts for I_{<=deg p};
// a span exceeding that prediction exposes an incomplete basis.
OracleAnswer membership_oracle(const LaurentPolynomial& p,
                               const std::vector<LaurentPolynomial>& gens,
                               const GroebnerBasis& G, int max_extra) {
  const std::size_t n = p.nvars();
  const int dp = std::max(0, p.total_degree());
  std::size_t predicted = 0;  // dim I_{<= dp}
  for (const auto& e : monomials_up_to(n, dp)) {
    bool standard = true;
    for (const auto& l : G.leading)
      if (divides(l, e)) standard = false;
    if (!standard) ++predicted;
  }
  int max_gen = 0;
  for (const auto& g : gens) max_gen = std::max(max_gen, g.total_degree());
  for (int D = std::max(dp, max_gen); D <= std::max(dp, max_gen) + max_extra; ++D) {
    const auto monos = monomials_up_to(n, D);
    std::map<ExponentVector, std::size_t> col;
    for (std::size_t i = 0; i < monos.size(); ++i) col[monos[i]] = i;
    std::vector<std::vector<Rational>> rows;
    for (const auto& g : gens)
      for (const auto& m : monomials_up_to(n, D - g.total_degree())) {
        std::vector<Rational> row(monos.size(), 0);
        for (const auto& [e, c] : g.terms()) row[col.at(e + m)] = c;
        rows.push_back(std::move(row));
      }
    const auto basis = echelon(std::move(rows), monos.size());
    std::vector<Rational> v(monos.size(), 0);
    for (const auto& [e, c] : p.terms()) v[col.at(e)] = c;
    if (in_span(v, basis)) return OracleAnswer::member;
    std::size_t low = 0;
    for (const auto& row : basis) {
      std::size_t c = 0;
      while (row[c] == 0) ++c;
      if (total_degree(monos[c]) <= dp) ++low;
    }
    if (low > predicted) return OracleAnswer::inconsistent;
    if (low == predicted) return OracleAnswer::non_member;
  }
  return OracleAnswer::undetermined;
}

void groebner_suite(Criterion& c) {
  std::mt19937_64 rng(515);
  std::uniform_int_distribution<int> nvars(1, 3), ngens(1, 3), coin(0, 1);
  std::size_t members = 0, non_members = 0;
  const MonomialOrder order = MonomialOrder::degrevlex();
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(nvars(rng));
    std::vector<std::string> names = {"x", "y", "z"};
    names.resize(n);
    const auto ring = make_ring(names);
    std::vector<LaurentPolynomial> gens;
    const int k = ngens(rng);
    while (static_cast<int>(gens.size()) < k) {
      auto g = test::random_polynomial(ring, rng, 3, 3);
      if (!g.is_zero()) gens.push_back(std::move(g));
    }
    LaurentPolynomial p(ring);
    if (coin(rng)) {
      for (const auto& g : gens) p += test::random_polynomial(ring, rng, 2, 2) * g;
    } else {
      p = test::random_polynomial(ring, rng, 4, 3);
    }
    const auto G = buchberger(gens, order);
    const std::string label = "ideal " + std::to_string(t);
    // Basis properties.
    for (std::size_t i = 0; i < G.generators.size(); ++i)
      for (std::size_t j = i + 1; j < G.generators.size(); ++j)
        c.require(normal_form(s_polynomial(G.generators[i], G.generators[j], order), G).is_zero(),
                  label + ": S-polynomial does not reduce to 0");
    const auto r = normal_form(p, G);
    c.require(normal_form(r, G) == r, label + ": normal form not idempotent");

    const bool claimed = ideal_membership(p, gens, order);
    const auto oracle = membership_oracle(p, gens, G, 10);
    if (oracle == OracleAnswer::member) ++members;
    if (oracle == OracleAnswer::non_member) ++non_members;
    c.require(oracle != OracleAnswer::inconsistent, label + ": span exceeds staircase prediction");
    c.require(oracle != OracleAnswer::undetermined, label + ": oracle undetermined");
    if (oracle == OracleAnswer::member || oracle == OracleAnswer::non_member)
      c.require(claimed == (oracle == OracleAnswer::member),
                label + ": ideal_membership disagrees with the linear-system oracle");
  }
  c.details.push_back(std::to_string(members) + " members, " + std::to_string(non_members) +
                      " non-members confirmed by the oracle");
}

void rank_suite(Criterion& c) {
  std::mt19937_64 rng(6006);
  std::uniform_int_distribution<int> dim(1, 20);
  std::uniform_int_distribution<long> mag(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  std::mt19937_64 prime_rng(77);
  for (int t = 0; t < 100; ++t) {
    const int rows = dim(rng), cols = dim(rng);
    // Every third matrix is a product of thin factors, hence rank deficient.
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols, 0));
    if (t % 3 == 0) {
      const int r = 1 + t % std::max(1, std::min(rows, cols));
      std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(r)),
          b(r, std::vector<Rational>(cols));
      for (auto& row : a)
        for (auto& x : row) x = make_rational(mag(rng) % 1000, 1 + den(rng) % 100);
      for (auto& row : b)
        for (auto& x : row) x = make_rational(mag(rng) % 1000, 1 + den(rng) % 100);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
          for (int l = 0; l < r; ++l) m[i][j] += a[i][l] * b[l][j];
    } else {
      for (auto& row : m)
        for (auto& x : row) x = (rng() % 4 == 0) ? Rational(0) : make_rational(mag(rng), den(rng));
    }
    const auto M = SparseMatrix::dense(m);
    const auto ff = fraction_free_rank(M);
    const auto p1 = random_large_prime(prime_rng);
    auto p2 = random_large_prime(prime_rng);
    while (p2 == p1) p2 = random_large_prime(prime_rng);
    const auto r1 = modular_rank(M, p1), r2 = modular_rank(M, p2);
    c.require(ff == r1 && ff == r2,
              "matrix " + std::to_string(t) + ": fraction-free " + std::to_string(ff) +
                  ", mod p1 " + std::to_string(r1) + ", mod p2 " + std::to_string(r2));
    c.require(exact_rank(M) == ff, "matrix " + std::to_string(t) + ": exact_rank differs");
  }
}

void operator_suite(Criterion& c) {
  std::mt19937_64 rng(7007);
  struct Mode {
    CoefficientMode mode;
    std::vector<bool> divisor;
  };
  for (const Mode& md : {Mode{CoefficientMode::polynomial, {}},
                         Mode{CoefficientMode::log, {true, false, true}},
                         Mode{CoefficientMode::meromorphic, {true, true, false}}}) {
    const auto ring = make_ring({"x", "y", "z"}, md.divisor);
    const FormContext ctx(ring, md.mode);
    for (int t = 0; t < 100; ++t) {
      const auto f = test::random_polynomial(ring, rng, 4, 3, 0);
      const auto w = test::random_form(ctx, static_cast<std::size_t>(t % 3), rng, 2);
      const std::string label = to_string(md.mode) + " form " + std::to_string(t);
      c.require(exterior_derivative(exterior_derivative(w)).is_zero(), label + ": d^2 != 0");
      c.require(wedge_df(wedge_df(w, f), f).is_zero(), label + ": (df^)^2 != 0");
      c.require(twisted_operator(twisted_operator(w, f, 1), f, 1).is_zero(),
                label + ": (d - df^)^2 != 0");
      if (md.mode == CoefficientMode::log) {
        c.require(to_meromorphic(exterior_derivative(w)) == exterior_derivative(to_meromorphic(w)),
                  label + ": embedding does not commute with d");
        c.require(to_meromorphic(wedge_df(w, f)) == wedge_df(to_meromorphic(w), f),
                  label + ": embedding does not commute with df^");
      }
    }
  }
}

void determinism_suite(Criterion& c) {
  RunConfig cfg;
  cfg.command = "corpus";
  cfg.corpus_path = TDW_CORPUS_FILE;
  cfg.format = OutputFormat::json;
  const auto a = run_command(cfg);
  const auto b = run_command(cfg);
  c.require(a.output == b.output, "corpus reports differ between two runs");
  c.require(a.exit_code == 0, "corpus exit code " + std::to_string(a.exit_code));
  c.details.push_back("report size " + std::to_string(a.output.size()) + " bytes");
}

}  // namespace

int main() {
  struct Entry {
    std::string title;
    Criterion result;
  };
  std::vector<Entry> entries;
  auto run = [&](const std::string& title, const std::function<void(Criterion&)>& body) {
    Criterion c;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    entries.push_back({title, std::move(c)});
  };

  Criterion c1, c2;
  double seconds = 0;
  try {
    dimension_suites(c1, c2, seconds);
  } catch (const std::exception& e) {
    c1.require(false, std::string("exception: ") + e.what());
    c2.require(false, std::string("exception: ") + e.what());
  }
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << seconds;
  c1.details.push_back("runtime " + t.str() + " s");
  entries.push_back({"1 dimension equality, twisted vs Koszul, on the corpus", c1});
  entries.push_back({"2 Milnor number = Koszul top = twisted top", c2});
  run("3 log suite, twisted-log vs log-Koszul", log_suite);
  run("4 log/meromorphic quasi-isomorphism, parts (a) and (b)", quasi_iso_suite);
  run("5 Groebner bases vs linear-system oracle", groebner_suite);
  run("6 fraction-free rank vs two modular ranks", rank_suite);
  run("7 operator laws and log embedding", operator_suite);
  run("8 deterministic corpus reports", determinism_suite);

  bool all = true;
  for (const auto& e : entries) {
    std::cout << (e.result.ok ? "PASS " : "FAIL ") << e.title << "\n";
    for (const auto& d : e.result.details) std::cout << "     " << d << "\n";
    all = all && e.result.ok;
  }
  return all ? 0 : 1;
}
