#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <utility>
#include <vector>

#include "tdw/polynomial.hpp"

namespace tdw {

/// Z^n modulo the sublattice spanned by a set of integer vectors. The
/// generators are brought to row echelon form with positive pivots; reducing
/// every pivot coordinate into [0, pivot) in row order then yields a
/// canonical representative of each coset.
class LatticeQuotient {
 public:
  LatticeQuotient(const std::vector<ExponentVector>& generators, std::size_t n)
      : n_(n) {
    std::vector<std::vector<long>> rows;
    for (const auto& g : generators) {
      std::vector<long> row(g.begin(), g.end());
      if (std::any_of(row.begin(), row.end(), [](long x) { return x != 0; }))
        rows.push_back(std::move(row));
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < n_ && r < rows.size(); ++col) {
      for (;;) {
        std::size_t best = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
          if (rows[i][col] != 0 &&
              (best == rows.size() ||
               std::labs(rows[i][col]) < std::labs(rows[best][col])))
            best = i;
        if (best == rows.size()) break;
        std::swap(rows[r], rows[best]);
        bool done = true;
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
          if (rows[i][col] == 0) continue;
          const long q = rows[i][col] / rows[r][col];
          for (std::size_t c = 0; c < n_; ++c) rows[i][c] -= q * rows[r][c];
          if (rows[i][col] != 0) done = false;
        }
        if (done) break;
      }
      if (r < rows.size() && rows[r][col] != 0) {
        if (rows[r][col] < 0)
          for (auto& x : rows[r]) x = -x;
        pivot_cols_.push_back(col);
        basis_.push_back(rows[r]);
        ++r;
      }
    }
  }

  std::size_t rank() const noexcept { return basis_.size(); }

  /// Canonical representative of v + L.
  ExponentVector reduce(ExponentVector v) const {
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const std::size_t c = pivot_cols_[r];
      const long p = basis_[r][c];
      long q = v[c] / p;
      if (v[c] - q * p < 0) --q;
      if (q == 0) continue;
      for (std::size_t k = 0; k < n_; ++k)
        v[k] -= static_cast<int>(q * basis_[r][k]);
    }
    return v;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<std::vector<long>> basis_;
};

}  // namespace tdw
