#include "amsolve/linalg_zp.hpp"

#include <algorithm>
#include <numeric>

namespace amsolve {

namespace {

/// row[k] -= a * pivot[k] over the pivot row's nonzero positions.
inline void axpy_sparse(std::uint32_t* row, const std::uint32_t* pivot,
                        const std::vector<std::size_t>& support, std::uint32_t a,
                        std::uint64_t p) {
  const std::uint64_t neg_a = p - a;
  for (std::size_t k : support) {
    row[k] = static_cast<std::uint32_t>((row[k] + neg_a * pivot[k]) % p);
  }
}

}  // namespace

RrefResult rref(ZpMatrix& A, const PrimeField& F, Exec exec) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  const std::uint64_t p = F.modulus();
  RrefResult res;
  res.row_origin.resize(m);
  std::iota(res.row_origin.begin(), res.row_origin.end(), std::size_t{0});
  std::vector<std::size_t> support;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t r = rank;
    while (r < m && A(r, col) == 0) ++r;
    if (r == m) continue;
    if (r != rank) {
      std::swap_ranges(A.row(r), A.row(r) + n, A.row(rank));
      std::swap(res.row_origin[r], res.row_origin[rank]);
    }
    std::uint32_t* prow = A.row(rank);
    const FieldElem inv = F.inverse(FieldElem{prow[col]});
    support.clear();
    for (std::size_t k = col; k < n; ++k) {
      if (prow[k] == 0) continue;
      prow[k] = F.mul(FieldElem{prow[k]}, inv).value;
      support.push_back(k);
    }
    const std::size_t pr = rank;
    const auto m_signed = static_cast<std::ptrdiff_t>(m);
    if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < m_signed; ++i) {
        const auto ri = static_cast<std::size_t>(i);
        if (ri == pr) continue;
        std::uint32_t a = A(ri, col);
        if (a != 0) axpy_sparse(A.row(ri), prow, support, a, p);
      }
    } else {
      for (std::size_t ri = 0; ri < m; ++ri) {
        if (ri == pr) continue;
        std::uint32_t a = A(ri, col);
        if (a != 0) axpy_sparse(A.row(ri), prow, support, a, p);
      }
    }
    res.pivot_cols.push_back(col);
    ++rank;
  }
  return res;
}

std::size_t rank(ZpMatrix A, const PrimeField& F) {
  return rref(A, F, Exec::kSerial).rank();
}

std::vector<FieldElem> IncrementalEchelon::reduce(std::vector<FieldElem> v) const {
  if (v.size() != dim_) {
    throw DimensionMismatchError("vector length does not match echelon");
  }
  for (const Row& r : rows_) {
    FieldElem a = v[r.pivot];
    if (F_.is_zero(a)) continue;
    for (std::size_t k = r.pivot; k < dim_; ++k) {
      if (!F_.is_zero(r.v[k])) v[k] = F_.sub(v[k], F_.mul(a, r.v[k]));
    }
  }
  return v;
}

bool IncrementalEchelon::in_span(const std::vector<FieldElem>& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [&](FieldElem e) { return F_.is_zero(e); });
}

bool IncrementalEchelon::insert(std::vector<FieldElem> v, std::size_t tag) {
  v = reduce(std::move(v));
  std::size_t piv = 0;
  while (piv < dim_ && F_.is_zero(v[piv])) ++piv;
  if (piv == dim_) return false;
  FieldElem inv = F_.inverse(v[piv]);
  for (std::size_t k = piv; k < dim_; ++k) v[k] = F_.mul(v[k], inv);
  auto pos = std::lower_bound(
      rows_.begin(), rows_.end(), piv,
      [](const Row& r, std::size_t c) { return r.pivot < c; });
  rows_.insert(pos, Row{piv, tag, std::move(v)});
  return true;
}

std::vector<std::vector<FieldElem>> solve_left(
    const std::vector<std::vector<FieldElem>>& A,
    const std::vector<std::vector<FieldElem>>& B, const PrimeField& F) {
  const std::size_t k = A.size();
  if (k == 0) return std::vector<std::vector<FieldElem>>(B.size());
  for (const auto& row : A) {
    if (row.size() != k) throw DimensionMismatchError("solve_left needs square A");
  }
  // X A = B  <=>  A^T X^T = B^T: row reduce [A^T | B^T].
  const std::size_t nb = B.size();
  ZpMatrix M(k, k + nb);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) M(j, i) = A[i][j].value;
  }
  for (std::size_t b = 0; b < nb; ++b) {
    if (B[b].size() != k) throw DimensionMismatchError("solve_left: B width");
    for (std::size_t j = 0; j < k; ++j) M(j, k + b) = B[b][j].value;
  }
  RrefResult r = rref(M, F, Exec::kSerial);
  if (r.rank() < k || r.pivot_cols[k - 1] != k - 1) {
    throw RankDeficiencyError("singular system in solve_left");
  }
  std::vector<std::vector<FieldElem>> X(nb, std::vector<FieldElem>(k));
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t i = 0; i < k; ++i) X[b][i] = FieldElem{M(i, k + b)};
  }
  return X;
}

}  // namespace amsolve
