#include "doctest.h"
#include "helpers.hpp"

using namespace amsolve;
using namespace amsolve::test;

namespace {

QuotientCoordinates coords_of(const std::vector<ZpPoly>& eqs) {
  return QuotientCoordinates(
      reduced_groebner_basis(eqs, MonomialOrder::grevlex(eqs.front().nvars())));
}

}  // namespace

TEST_CASE("reducible sets") {
  CHECK(reducible_set(monos({"1", "x", "y"}), 1) == monos({"x*y", "y^2"}));
  CHECK(reducible_set(monos({"1", "y", "y^2"}), 1) == monos({"y^3"}));
  CHECK(reducible_set(monos({"1"}), 0) == monos({"x"}));
}

TEST_CASE("row expansion") {
  auto eqs = toy_system();
  CHECK(expand_rows(eqs, 2).size() == 2);
  auto r3 = expand_rows(eqs, 3);
  CHECK(r3.size() == 6);
  CHECK(r3[0] == TemplateRow{0, mono("1")});
  std::size_t prev = 0;
  for (int d = 2; d <= 6; ++d) {
    std::size_t n = expand_rows(eqs, d).size();
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("toy template for the standard basis") {
  auto eqs = toy_system();
  auto B = monos({"1", "x", "y"});
  CHECK(feasible(expand_rows(eqs, 2), B, 1, eqs));
  CHECK_FALSE(feasible({}, B, 1, eqs));

  EliminationTemplate t = build_template(eqs, B, 1);
  CHECK(t.n_rows() == 2);
  // Untouched monomials of degree <= 2 (x^2 and y) are not columns.
  CHECK(t.n_cols() == 4);
  CHECK(t.excess.empty());
  CHECK(t.reducible == monos({"x*y", "y^2"}));
  CHECK(t.basis_columns == monos({"x", "1"}));
  CHECK(prune(t, eqs) == t);

  PrimeField F;
  ZpSquare expect = zp_matrix(F, {{0, 0, 1}, {1, 0, 0}, {1, -1, 0}});
  CHECK(action_matrix_from_template(t, eqs) == expect);
  auto qc = coords_of(eqs);
  CHECK(action_matrix_oracle(B, 1, qc) == expect);

  // Characteristic polynomial t^3 - t + 1 up to sign.
  auto cp = charpoly3(expect, F);
  CHECK(cp[0].value == 0);
  CHECK(cp[1] == F.normalize(-1));
  CHECK(cp[2] == F.normalize(1));
}

TEST_CASE("higher-degree toy template") {
  auto eqs = toy_system();
  auto B = monos({"1", "y", "y^2"});
  EliminationTemplate t = build_template(eqs, B, 1);
  CHECK(t.reducible == monos({"y^3"}));
  int deg = 0;
  for (const auto& r : t.rows) deg = std::max(deg, r.mul.degree() + eqs[r.eq].total_degree());
  CHECK(deg == 3);
  auto qc = coords_of(eqs);
  CHECK(action_matrix_from_template(t, eqs) == action_matrix_oracle(B, 1, qc));

  TemplateOptions tiny;
  tiny.max_degree_cap = 2;
  CHECK_THROWS_AS(build_template(eqs, B, 1, tiny), TemplateCapError);
}

TEST_CASE("oracle charpoly for x on {1, x, x^2}") {
  auto eqs = toy_system();
  auto B = monos({"1", "x", "x^2"});
  auto qc = coords_of(eqs);
  PrimeField F;
  ZpSquare M = action_matrix_oracle(B, 0, qc);
  auto cp = charpoly3(M, F);
  CHECK(cp[0] == F.normalize(-1));
  CHECK(cp[1].value == 0);
  CHECK(cp[2] == F.normalize(1));
  CHECK(action_matrix_from_template(build_template(eqs, B, 0), eqs) == M);
}

TEST_CASE("pruning removes duplicated rows") {
  auto eqs = toy_system();
  auto B = monos({"1", "x", "y"});
  EliminationTemplate t = build_template(eqs, B, 1);
  std::vector<TemplateRow> rows = t.rows;
  rows.insert(rows.end(), t.rows.begin(), t.rows.end());
  EliminationTemplate doubled = make_template(rows, eqs, B, 1);
  CHECK(doubled.n_rows() == 4);
  EliminationTemplate p = prune(doubled, eqs);
  CHECK(p.n_rows() == 2);
}

TEST_CASE("pruned templates keep the action matrix") {
  for (ProblemKind kind : {ProblemKind::kStitch2, ProblemKind::kEfl}) {
    ProblemInstance inst = instantiate_zp(kind, 3);
    const auto& eqs = inst.system.zp();
    auto qc = coords_of(eqs);
    const auto& B = qc.reference();
    EliminationTemplate full = build_template(eqs, B, 1);
    EliminationTemplate small = prune(full, eqs);
    CHECK(small.n_rows() <= full.n_rows());
    CHECK(small.n_cols() <= full.n_cols());
    ZpSquare oracle = action_matrix_oracle(B, 1, qc);
    CHECK(action_matrix_from_template(full, eqs) == oracle);
    CHECK(action_matrix_from_template(small, eqs) == oracle);
    CHECK(action_matrix_from_template(small, eqs, Exec::kSerial) == oracle);
    // Stitching has 18 solutions and the gap between columns and rows is K.
    if (kind == ProblemKind::kStitch2) CHECK(small.n_cols() - small.n_rows() == 18);
  }
}

TEST_CASE("best template is deterministic and smallest") {
  auto eqs = toy_system();
  auto B = monos({"1", "x", "y"});
  EliminationTemplate a = best_template(eqs, B);
  EliminationTemplate b = best_template(eqs, B);
  CHECK(a == b);
  for (std::size_t alpha = 0; alpha < 2; ++alpha) {
    EliminationTemplate t = prune(build_template(eqs, B, alpha), eqs);
    CHECK(std::pair(a.n_rows(), a.n_cols()) <= std::pair(t.n_rows(), t.n_cols()));
  }
  CHECK(a.action_var == 1);

  auto one = zp("ring x, y over zp(30011)\nx - 1\ny - 2");
  EliminationTemplate t1 = best_template(one, monos({"1"}));
  CHECK(t1.reducible.size() <= 1);
}

TEST_CASE("template text round trip") {
  ProblemInstance inst = instantiate_zp(ProblemKind::kStitch2, 1);
  const auto& eqs = inst.system.zp();
  auto qc = coords_of(eqs);
  EliminationTemplate t = best_template(eqs, qc.reference());
  std::vector<std::string> names;
  EliminationTemplate back = read_template(write_template(t, inst.system.ring.var_names), &names);
  CHECK(back == t);
  CHECK(names == inst.system.ring.var_names);
  CHECK_THROWS_AS(read_template("rows 1 cols 2 basis 1 action x\nvars x\n"), ParseError);
  CHECK_THROWS_AS(read_template("garbage"), ParseError);
}

TEST_CASE("monomial parsing") {
  CHECK(parse_monomial("1", kXY) == Monomial{0, 0});
  CHECK(parse_monomial("x^2*y", kXY) == Monomial{2, 1});
  CHECK(parse_monomial("y*x", kXY) == Monomial{1, 1});
  CHECK_THROWS_AS(parse_monomial("z", kXY), ParseError);
  CHECK_THROWS_AS(parse_monomial("x^", kXY), ParseError);
}
