#pragma once

// Small dense Gaussian elimination over F_q with deterministic pivoting
// (first nonzero column, first nonzero row). Used for Riemann-Roch nullspace
// computation and basis rank checks.

#include <vector>

#include "ellseq/gf.hpp"

namespace ellseq {

using FqMatrix = std::vector<std::vector<FqElem>>;

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> fq_mat_rref(const FieldDescriptor& f, FqMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && fq_is_zero(f, m[sel][c])) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    FqElem s = fq_inv(f, m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = fq_mul(f, m[r][j], s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || fq_is_zero(f, m[i][c])) continue;
      FqElem factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = fq_sub(f, m[i][j], fq_mul(f, factor, m[r][j]));
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

inline int fq_mat_rank(const FieldDescriptor& f, FqMatrix m) {
  return static_cast<int>(fq_mat_rref(f, m).size());
}

// Nullspace basis vectors in the standard reduced-echelon form: one vector
// per free column, free columns in ascending order.
inline FqMatrix fq_mat_nullspace(const FieldDescriptor& f, FqMatrix m, std::size_t cols) {
  std::vector<int> pivots = fq_mat_rref(f, m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  FqMatrix basis;
  for (std::size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<FqElem> v(cols, fq_zero(f));
    v[fc] = fq_one(f);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      v[pivots[pr]] = fq_neg(f, m[pr][fc]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ellseq
