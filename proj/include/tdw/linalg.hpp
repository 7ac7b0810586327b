#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "tdw/errors.hpp"
#include "tdw/rational.hpp"

namespace tdw {

/// Row-sparse matrix of rationals. Each row is sorted by column with no
/// stored zeros.
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, Rational>;
  using Row = std::vector<Entry>;

  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseMatrix dense(const std::vector<std::vector<Rational>>& m) {
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    SparseMatrix out(m.size(), cols);
    for (std::size_t r = 0; r < m.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (m[r][c] != 0) out.rows_[r].emplace_back(c, m[r][c]);
    return out;
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const Row& row(std::size_t r) const { return rows_.at(r); }
  const std::vector<Row>& data() const noexcept { return rows_; }

  /// Replaces row r; entries may be unsorted and contain duplicates.
  void set_row(std::size_t r, Row entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Row merged;
    for (auto& [c, v] : entries) {
      if (c >= cols_) throw InternalError("matrix column out of range");
      if (!merged.empty() && merged.back().first == c) {
        merged.back().second += v;
      } else {
        merged.emplace_back(c, std::move(v));
      }
    }
    std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
    rows_.at(r) = std::move(merged);
  }

  void append_row(Row entries) {
    rows_.emplace_back();
    set_row(rows_.size() - 1, std::move(entries));
  }

 private:
  std::size_t cols_;
  std::vector<Row> rows_;
};

namespace detail {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

/// Scale a rational row to a primitive integer row (same span).
inline IntRow primitive_row(const SparseMatrix::Row& row) {
  Integer den = 1;
  for (const auto& [c, v] : row) den = lcm(den, Integer(v.get_den()));
  IntRow out;
  out.reserve(row.size());
  Integer g = 0;
  for (const auto& [c, v] : row) {
    Integer x = Integer(v.get_num()) * (den / Integer(v.get_den()));
    g = gcd(g, x);
    out.emplace_back(c, std::move(x));
  }
  if (g > 1)
    for (auto& [c, x] : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

inline void make_primitive(IntRow& row) {
  Integer g = 0;
  for (const auto& [c, x] : row) {
    g = gcd(g, x);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [c, x] : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

/// a*r - b*p over the union of supports, dropping zeros.
inline IntRow combine(const Integer& a, const IntRow& r, const Integer& b,
                      const IntRow& p) {
  IntRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  Integer t;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.emplace_back(r[i].first, a * r[i].second);
      ++i;
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -b * p[j].second);
      ++j;
    } else {
      t = a * r[i].second - b * p[j].second;
      if (t != 0) out.emplace_back(r[i].first, t);
      ++i;
      ++j;
    }
  }
  return out;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t to_mod(const Integer& x, std::uint64_t p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace detail

namespace detail {

/// Relabels columns so that sparse columns come first; rank does not
/// depend on the column order.
inline std::vector<std::size_t> sparse_first_labels(const SparseMatrix& m) {
  std::vector<std::size_t> count(m.cols(), 0), order(m.cols()), label(m.cols());
  for (const auto& r : m.data())
    for (const auto& e : r) ++count[e.first];
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return count[a] < count[b]; });
  for (std::size_t i = 0; i < order.size(); ++i) label[order[i]] = i;
  return label;
}

}  // namespace detail

/// Rank over Q by fraction-free row reduction. Rows are kept as primitive
/// integer vectors and bucketed by leading column. Each column in turn takes
/// as pivot its cheapest row (fewest entries, then smallest entries), and
/// every other row r led by that column becomes lead(p)*r - r[c]*p followed
/// by content removal.
inline std::size_t fraction_free_rank(const SparseMatrix& m) {
  using detail::IntRow;
  const auto label = detail::sparse_first_labels(m);
  std::vector<std::vector<IntRow>> buckets(m.cols());
  for (const auto& r : m.data())
    if (!r.empty()) {
      auto row = detail::primitive_row(r);
      for (auto& e : row) e.first = label[e.first];
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      const std::size_t c = row.front().first;
      buckets[c].push_back(std::move(row));
    }
  auto cost = [](const IntRow& r) {
    std::size_t bits = 0;
    for (const auto& [c, x] : r) bits += mpz_sizeinbase(x.get_mpz_t(), 2);
    return std::pair{r.size(), bits};
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    auto& bucket = buckets[c];
    if (bucket.empty()) continue;
    ++rank;
    std::size_t best = 0;
    auto best_cost = cost(bucket[0]);
    for (std::size_t i = 1; i < bucket.size(); ++i) {
      const auto ci = cost(bucket[i]);
      if (ci < best_cost) {
        best = i;
        best_cost = ci;
      }
    }
    const IntRow p = std::move(bucket[best]);
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      if (i == best) continue;
      IntRow& row = bucket[i];
      const Integer g = gcd(p.front().second, row.front().second);
      const Integer a = p.front().second / g;
      const Integer b = row.front().second / g;
      IntRow next = detail::combine(a, row, b, p);
      if (next.empty()) continue;
      detail::make_primitive(next);
      const std::size_t lead = next.front().first;
      buckets[lead].push_back(std::move(next));
    }
    std::vector<IntRow>().swap(bucket);
  }
  return rank;
}

/// Rank over Z/p for a prime p < 2^63. Rows are scaled to integers first,
/// so the result is the rank of the matrix with each row multiplied by the
/// lcm of its denominators.
inline std::size_t modular_rank(const SparseMatrix& m, std::uint64_t p) {
  using ModRow = std::vector<std::pair<std::size_t, std::uint64_t>>;
  const auto label = detail::sparse_first_labels(m);
  std::vector<std::vector<ModRow>> buckets(m.cols());
  for (const auto& r : m.data()) {
    ModRow row;
    for (const auto& [c, x] : detail::primitive_row(r)) {
      const std::uint64_t v = detail::to_mod(x, p);
      if (v) row.emplace_back(label[c], v);
    }
    if (row.empty()) continue;
    std::sort(row.begin(), row.end());
    buckets[row.front().first].push_back(std::move(row));
  }
  std::size_t rank = 0;
  ModRow next;
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    auto& bucket = buckets[c];
    if (bucket.empty()) continue;
    ++rank;
    std::size_t best = 0;
    for (std::size_t i = 1; i < bucket.size(); ++i)
      if (bucket[i].size() < bucket[best].size()) best = i;
    ModRow piv = std::move(bucket[best]);
    const std::uint64_t inv = detail::pow_mod(piv.front().second, p - 2, p);
    for (auto& [col, v] : piv) v = detail::mul_mod(v, inv, p);
    for (std::size_t b = 0; b < bucket.size(); ++b) {
      if (b == best) continue;
      const ModRow& row = bucket[b];
      const std::uint64_t f = row.front().second;
      next.clear();
      std::size_t i = 1, j = 1;
      while (i < row.size() || j < piv.size()) {
        if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
          next.push_back(row[i++]);
        } else if (i == row.size() || piv[j].first < row[i].first) {
          next.emplace_back(piv[j].first, p - detail::mul_mod(f, piv[j].second, p));
          ++j;
        } else {
          const std::uint64_t s = detail::mul_mod(f, piv[j].second, p);
          const std::uint64_t v = row[i].second >= s ? row[i].second - s : row[i].second + p - s;
          if (v) next.emplace_back(row[i].first, v);
          ++i;
          ++j;
        }
      }
      if (!next.empty()) buckets[next.front().first].push_back(next);
    }
    std::vector<ModRow>().swap(bucket);
  }
  return rank;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// A prime in [2^61, 2^62) drawn from rng.
template <class Rng>
std::uint64_t random_large_prime(Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(1ull << 61, (1ull << 62) - 1);
  for (;;) {
    const std::uint64_t c = dist(rng) | 1ull;
    if (is_prime_u64(c)) return c;
  }
}

/// Rank over Q. The fraction-free result is cross-checked against the rank
/// modulo a random large prime; on disagreement a second prime decides
/// whether the first was merely unlucky. Persistent disagreement means an
/// arithmetic bug and raises InternalError.
inline std::size_t exact_rank(const SparseMatrix& m) {
  const std::size_t exact = fraction_free_rank(m);
  // Seeded from the shape so results stay reproducible run to run.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (m.rows() * 1315423911ull + m.cols()));
  const std::uint64_t p1 = random_large_prime(rng);
  if (modular_rank(m, p1) == exact) return exact;
  std::uint64_t p2 = random_large_prime(rng);
  while (p2 == p1) p2 = random_large_prime(rng);
  if (modular_rank(m, p2) == exact) return exact;
  throw InternalError("exact and modular ranks disagree for two primes");
}

}  // namespace tdw
