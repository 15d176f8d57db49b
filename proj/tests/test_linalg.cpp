#include "doctest.h"

#include "amsolve/linalg_zp.hpp"
#include "amsolve/rng.hpp"

using namespace amsolve;

namespace {

ZpMatrix random_matrix(std::size_t rows, std::size_t cols, const PrimeField& F, Rng& rng,
                       double density) {
  ZpMatrix A(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng.uniform() < density) {
        A(r, c) = static_cast<std::uint32_t>(rng.uniform_int(0, F.modulus() - 1));
      }
    }
  }
  return A;
}

}  // namespace

TEST_CASE("serial and parallel rref agree") {
  PrimeField F;
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 5 + rng.uniform_int(0, 120);
    const std::size_t cols = 5 + rng.uniform_int(0, 120);
    ZpMatrix A = random_matrix(rows, cols, F, rng, trial % 2 ? 0.1 : 0.8);
    // Duplicate a row so some inputs are rank deficient.
    for (std::size_t c = 0; c < cols; ++c) A(rows - 1, c) = A(0, c);
    ZpMatrix S = A;
    ZpMatrix P = A;
    RrefResult rs = rref(S, F, Exec::kSerial);
    RrefResult rp = rref(P, F, Exec::kParallel);
    CHECK(S == P);
    CHECK(rs.pivot_cols == rp.pivot_cols);
    CHECK(rs.row_origin == rp.row_origin);
    CHECK(rs.rank() < rows);
  }
}

TEST_CASE("rref shape") {
  PrimeField F(7);
  ZpMatrix A(3, 3);
  const std::uint32_t v[3][3] = {{2, 4, 1}, {1, 2, 3}, {0, 0, 5}};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) A(r, c) = v[r][c];
  }
  RrefResult res = rref(A, F);
  CHECK(res.pivot_cols == std::vector<std::size_t>{0, 2});
  CHECK(A(0, 0) == 1);
  CHECK(A(0, 1) == 2);
  CHECK(A(0, 2) == 0);
  CHECK(A(1, 2) == 1);
  CHECK(A(2, 0) == 0);
  CHECK(A(2, 2) == 0);
  CHECK(rank(ZpMatrix(4, 4), F) == 0);
}

TEST_CASE("incremental echelon") {
  PrimeField F(7);
  IncrementalEchelon E(F, 3);
  CHECK(E.insert({FieldElem{1}, FieldElem{2}, FieldElem{3}}, 10));
  CHECK(E.insert({FieldElem{0}, FieldElem{1}, FieldElem{1}}, 11));
  CHECK_FALSE(E.insert({FieldElem{1}, FieldElem{3}, FieldElem{4}}));
  CHECK(E.in_span({FieldElem{2}, FieldElem{5}, FieldElem{0}}));
  CHECK(E.rank() == 2);
  CHECK(E.tag(1) == 11);
}

TEST_CASE("solve_left") {
  PrimeField F;
  Rng rng(2);
  const std::size_t n = 6;
  std::vector<std::vector<FieldElem>> A(n, std::vector<FieldElem>(n));
  std::vector<std::vector<FieldElem>> X(3, std::vector<FieldElem>(n));
  for (auto& row : A) {
    for (auto& e : row) e = FieldElem{static_cast<std::uint32_t>(rng.uniform_int(0, 30010))};
  }
  for (auto& row : X) {
    for (auto& e : row) e = FieldElem{static_cast<std::uint32_t>(rng.uniform_int(0, 30010))};
  }
  std::vector<std::vector<FieldElem>> B(3, std::vector<FieldElem>(n));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) B[i][j] = F.add(B[i][j], F.mul(X[i][k], A[k][j]));
    }
  }
  CHECK(solve_left(A, B, F) == X);
  A[5] = A[4];
  CHECK_THROWS_AS(solve_left(A, B, F), RankDeficiencyError);
}
