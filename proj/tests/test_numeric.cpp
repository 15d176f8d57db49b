#include "doctest.h"
#include "helpers.hpp"

#include <algorithm>

using namespace amsolve;
using namespace amsolve::test;

namespace {

std::vector<CPoly> toy_float_eqs() {
  std::vector<CPoly> out;
  for (const auto& f : toy_system()) out.push_back(lift_to_complex(f));
  return out;
}

EliminationTemplate toy_template() {
  return build_template(toy_system(), monos({"1", "x", "y"}), 1);
}

std::vector<CPoly> scaled(const std::vector<CPoly>& eqs, std::complex<double> s) {
  std::vector<CPoly> out;
  for (const auto& f : eqs) out.push_back(f.scaled(s));
  return out;
}

bool close_to_any(std::complex<double> z, const std::vector<std::complex<double>>& ref,
                  double tol) {
  return std::any_of(ref.begin(), ref.end(), [&](auto r) { return std::abs(z - r) < tol; });
}

}  // namespace

TEST_CASE("instantiate transcribes coefficients") {
  EliminationTemplate t = toy_template();
  CMatrix A = instantiate(t, toy_float_eqs());
  CHECK(A.rows() == 2);
  CHECK(A.cols() == 4);
  // Columns: xy, y^2 | x, 1. Rows: f0 = y^2 + x - 1, f1 = xy - 1.
  CMatrix expect(2, 4);
  expect << 0, 1, 1, -1, 1, 0, 0, -1;
  CHECK((A - expect).norm() == 0.0);
  CHECK((instantiate(t, scaled(toy_float_eqs(), 2.0)) - 2.0 * A).norm() == 0.0);

  // A vanishing coefficient keeps its column.
  auto eqs = toy_float_eqs();
  eqs[0] = CPoly::from_terms(ComplexField{}, 2, {{Monomial{0, 2}, 1.0}, {Monomial{0, 0}, -1.0}});
  CMatrix Z = instantiate(t, eqs);
  CHECK(Z.cols() == 4);
  CHECK(Z(0, 2) == std::complex<double>(0.0));

  auto bad = toy_float_eqs();
  bad[1] = bad[1] + CPoly::from_terms(ComplexField{}, 2, {{Monomial{3, 0}, 1.0}});
  CHECK_THROWS_AS(instantiate(t, bad), SupportMismatchError);
}

TEST_CASE("float action matrix of the toy problem") {
  EliminationTemplate t = toy_template();
  CMatrix M = eliminate_extract(instantiate(t, toy_float_eqs()), t);
  CMatrix expect(3, 3);
  expect << 0, 0, 1, 1, 0, 0, 1, -1, 0;
  CHECK((M - expect).cwiseAbs().maxCoeff() < 1e-12);
  CMatrix M10 = eliminate_extract(instantiate(t, scaled(toy_float_eqs(), 10.0)), t);
  CHECK((M10 - M).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("scale invariance on stitching") {
  ProblemInstance zp = instantiate_zp(ProblemKind::kStitch2, 1);
  const auto& eqs = zp.system.zp();
  auto gb = reduced_groebner_basis(eqs, MonomialOrder::grevlex(2));
  EliminationTemplate t = build_template(eqs, *gb.standard, 0);
  auto fl = instantiate_float(ProblemKind::kStitch2, 4).system.complex();
  CMatrix M = eliminate_extract(instantiate(t, fl), t);
  std::vector<CPoly> mixed{fl[0].scaled(10.0), fl[1].scaled({0.0, -3.0})};
  CMatrix Ms = eliminate_extract(instantiate(t, mixed), t);
  CHECK((Ms - M).cwiseAbs().maxCoeff() < 1e-10 * (1.0 + M.cwiseAbs().maxCoeff()));
}

TEST_CASE("degenerate stitching instance loses rank") {
  ProblemInstance zp = instantiate_zp(ProblemKind::kStitch2, 1);
  const auto& eqs = zp.system.zp();
  auto gb = reduced_groebner_basis(eqs, MonomialOrder::grevlex(2));
  EliminationTemplate t = build_template(eqs, *gb.standard, 0);
  auto fl = instantiate_float(ProblemKind::kStitch2, 4).system.complex();
  // Both equations from the same data collapse the system to one curve.
  std::vector<CPoly> degenerate{fl[0], fl[0].scaled(2.0)};
  CHECK_THROWS_AS(eliminate_extract(instantiate(t, degenerate), t), RankDeficiencyError);
}

TEST_CASE("eigenvalues") {
  CMatrix toy(3, 3);
  toy << 0, 0, 1, 1, 0, 0, 1, -1, 0;
  auto roots = cubic_roots(0.0, -1.0, 1.0);
  auto pairs = eigen_solve(toy);
  REQUIRE(pairs.size() == 3);
  for (const auto& p : pairs) {
    CHECK(close_to_any(p.value, roots, 1e-10));
    CHECK((toy * p.vector - p.value * p.vector).norm() < 1e-10);
    CHECK(p.vector.norm() == doctest::Approx(1.0));
  }
  CHECK(close_to_any({-1.324718, 0.0}, roots, 1e-6));
  CHECK(close_to_any({0.662359, 0.562280}, roots, 1e-6));

  for (const auto& p : eigen_solve(CMatrix::Identity(4, 4))) {
    CHECK(std::abs(p.value - 1.0) < 1e-14);
  }
  CMatrix D = CMatrix::Zero(3, 3);
  D.diagonal() << 1.0, 2.0, 3.0;
  std::vector<double> vals;
  for (const auto& p : eigen_solve(D)) vals.push_back(p.value.real());
  std::sort(vals.begin(), vals.end());
  CHECK(vals == std::vector<double>{1.0, 2.0, 3.0});

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eigen_solve(bad), ConvergenceError);
}

TEST_CASE("toy solutions") {
  SolutionSet s = solve(toy_template(), toy_float_eqs());
  REQUIRE(s.points.size() == 3);
  auto roots = cubic_roots(0.0, -1.0, 1.0);
  bool found_real = false;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& p = s.points[i];
    CHECK(s.residuals[i] < 1e-9);
    CHECK(close_to_any(p[1], roots, 1e-10));
    CHECK(std::abs(p[0] - (1.0 - p[1] * p[1])) < 1e-9);
    if (std::abs(p[1].imag()) < 1e-9) {
      found_real = true;
      CHECK(p[0].real() == doctest::Approx(-0.754878).epsilon(1e-6));
      CHECK(p[1].real() == doctest::Approx(-1.324718).epsilon(1e-6));
    }
  }
  CHECK(found_real);
}

TEST_CASE("readout through an edge from 1") {
  // B = (1, x, y) with alpha = y: x is v(x) / v(1).
  CMatrix toy(3, 3);
  toy << 0, 0, 1, 1, 0, 0, 1, -1, 0;
  auto pairs = eigen_solve(toy);
  auto s = extract_solutions(pairs, monos({"1", "x", "y"}), 1, toy_float_eqs());
  REQUIRE(s.points.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(s.points[i][0] - pairs[i].vector(1) / pairs[i].vector(0)) < 1e-12);
  }
  CHECK_THROWS_AS(extract_solutions(pairs, monos({"1", "y", "y^2"}), 1, toy_float_eqs()),
                  ExtractionError);
}

TEST_CASE("residuals") {
  auto eqs = toy_float_eqs();
  auto r = residuals({{1.0, 0.0}, {5.0, 7.0}}, eqs);
  // (1, 0) solves the first equation only.
  CHECK(r[0] == doctest::Approx(0.5));
  CHECK(r[1] > 10.0);
  CHECK(residuals({{1.0, 1.0}}, {eqs[1]})[0] == 0.0);
}

TEST_CASE("planted stitching solution is recovered") {
  ProblemInstance zp = instantiate_zp(ProblemKind::kStitch2, 1);
  const auto& eqs = zp.system.zp();
  Solver s = build_solver(eqs, choose_basis(eqs, zp.system.ring.var_names, BasisSource::kGrevlex, 0));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    ProblemInstance fl = instantiate_float(ProblemKind::kStitch2, seed);
    SolutionSet sol = solve(s.closure, fl.system.complex());
    CHECK(sol.points.size() <= 18);
    double best = 1.0;
    for (const auto& p : sol.points) {
      if (auto f = focal_from_solution(ProblemKind::kStitch2, p)) {
        best = std::min(best, std::abs(*f - fl.f_gt) / fl.f_gt);
      }
    }
    CHECK(best < 1e-6);
  }
}
