#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "amsolve/field.hpp"

namespace amsolve {

/// Dense row-major matrix of canonical Z_p residues.
class ZpMatrix {
 public:
  ZpMatrix() = default;
  ZpMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint32_t& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  std::uint32_t operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::uint32_t* row(std::size_t r) { return data_.data() + r * cols_; }
  const std::uint32_t* row(std::size_t r) const {
    return data_.data() + r * cols_;
  }

  friend bool operator==(const ZpMatrix&, const ZpMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

enum class Exec { kSerial, kParallel };

struct RrefResult {
  /// pivot_cols[i] is the pivot column of row i, for i < rank; increasing.
  std::vector<std::size_t> pivot_cols;
  /// row_origin[i] is the input row that ended up at row i.
  std::vector<std::size_t> row_origin;
  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

/// Reduced row echelon form in place: pivots are chosen left to right, pivot
/// entries are 1, pivot columns are zero elsewhere, and zero rows sink to the
/// bottom. kSerial and kParallel produce identical output.
RrefResult rref(ZpMatrix& A, const PrimeField& F, Exec exec = Exec::kParallel);

std::size_t rank(ZpMatrix A, const PrimeField& F);

/// Row echelon basis grown one vector at a time. Stored rows are kept in
/// increasing pivot order and are reduced against earlier pivots only.
class IncrementalEchelon {
 public:
  IncrementalEchelon(const PrimeField& F, std::size_t dim) : F_(F), dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Reduces v against the stored rows; the result is zero iff v lies in the
  /// span.
  std::vector<FieldElem> reduce(std::vector<FieldElem> v) const;
  bool in_span(const std::vector<FieldElem>& v) const;

  /// Inserts v when independent; returns whether it was. `tag` is stored
  /// with the new row.
  bool insert(std::vector<FieldElem> v, std::size_t tag = 0);

  std::size_t pivot(std::size_t i) const { return rows_[i].pivot; }
  std::size_t tag(std::size_t i) const { return rows_[i].tag; }
  const std::vector<FieldElem>& row(std::size_t i) const { return rows_[i].v; }

 private:
  struct Row {
    std::size_t pivot;
    std::size_t tag;
    std::vector<FieldElem> v;  // v[pivot] == 1
  };
  PrimeField F_;
  std::size_t dim_;
  std::vector<Row> rows_;
};

/// Solves X A = B for X where A is square and invertible (rows of B are
/// expressed in the row basis of A). Throws RankDeficiencyError when A is
/// singular.
std::vector<std::vector<FieldElem>> solve_left(
    const std::vector<std::vector<FieldElem>>& A,
    const std::vector<std::vector<FieldElem>>& B, const PrimeField& F);

}  // namespace amsolve
