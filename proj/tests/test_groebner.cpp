#include "doctest.h"
#include "helpers.hpp"

#include "amsolve/rng.hpp"

using namespace amsolve;
using namespace amsolve::test;

namespace {

const std::string kRing = "ring x, y over zp(30011)";

ZpPoly P(const std::string& expr) { return poly(kRing, expr); }

/// Reduced-basis property: monic generators, and no non-leading monomial of
/// any generator is divisible by any leading monomial.
bool is_reduced(const ReducedGroebnerBasis& gb) {
  for (std::size_t i = 0; i < gb.generators.size(); ++i) {
    const auto& g = gb.generators[i];
    auto lt = g.leading_term(gb.order);
    if (lt.coeff.value != 1 || lt.monomial != gb.leading_monomials[i]) return false;
    for (const auto& t : g.terms()) {
      for (std::size_t j = 0; j < gb.leading_monomials.size(); ++j) {
        if (t.monomial == lt.monomial && j == i) continue;
        if (gb.leading_monomials[j].divides(t.monomial)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("normal form") {
  std::vector<ZpPoly> G{P("x^2 - x + y"), P("x*y - 1"), P("y^2 + x - 1")};
  auto grevlex = MonomialOrder::grevlex(2);
  CHECK(normal_form(P("x^2"), G, grevlex) == P("x - y"));
  for (const auto& g : G) CHECK(normal_form(g, G, grevlex).is_zero());

  Rng rng(3);
  PrimeField F;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ZpPoly::Term> terms;
    for (int k = 0; k < 4; ++k) {
      terms.push_back({Monomial{static_cast<int>(rng.uniform_int(0, 3)),
                                static_cast<int>(rng.uniform_int(0, 3))},
                       FieldElem{static_cast<std::uint32_t>(rng.uniform_int(0, 30010))}});
    }
    ZpPoly f = ZpPoly::from_terms(F, 2, terms);
    ZpPoly h = ZpPoly::from_terms(F, 2, {terms[0], terms[1]});
    const ZpPoly& g = G[trial % 3];
    CHECK(normal_form(f + h * g, G, grevlex) == normal_form(f, G, grevlex));
  }
}

TEST_CASE("s-polynomial") {
  auto grevlex = MonomialOrder::grevlex(2);
  CHECK(s_polynomial(P("y^2 + x - 1"), P("x*y - 1"), grevlex) == P("x^2 - x + y"));
  CHECK(s_polynomial(P("x*y - 1"), P("x*y - 1"), grevlex).is_zero());
  std::vector<ZpPoly> fs{P("x^2*y + 3*y - 2"), P("x*y^2 - x + 5"), P("x^3 + y^3 + x*y"),
                         P("y^2 - 7*x")};
  for (const auto& f : fs) {
    for (const auto& g : fs) {
      ZpPoly s = s_polynomial(f, g, grevlex);
      if (s.is_zero()) continue;
      Monomial l = lcm(f.leading_term(grevlex).monomial, g.leading_term(grevlex).monomial);
      CHECK(grevlex.less(s.leading_term(grevlex).monomial, l));
    }
  }
}

TEST_CASE("toy reduced bases for the three orders") {
  auto eqs = toy_system();
  auto gr = reduced_groebner_basis(eqs, MonomialOrder::grevlex(2));
  CHECK(gr.generators.size() == 3);
  CHECK(gr.generators[0] == P("y^2 + x - 1"));
  CHECK(gr.generators[1] == P("x*y - 1"));
  CHECK(gr.generators[2] == P("x^2 - x + y"));
  CHECK(is_reduced(gr));
  CHECK(*gr.standard == monos({"1", "x", "y"}));

  auto lx = reduced_groebner_basis(eqs, MonomialOrder::lex(2));
  REQUIRE(lx.generators.size() == 2);
  CHECK(lx.generators[0] == P("y^3 - y + 1"));
  CHECK(lx.generators[1] == P("x + y^2 - 1"));
  CHECK(*lx.standard == monos({"1", "y", "y^2"}));

  auto ly = reduced_groebner_basis(eqs, MonomialOrder::lex(std::vector<std::size_t>{1, 0}));
  REQUIRE(ly.generators.size() == 2);
  CHECK(ly.generators[0] == P("x^3 - x^2 + 1"));
  CHECK(ly.generators[1] == P("y + x^2 - x"));

  for (const auto* gb : {&gr, &lx, &ly}) CHECK(quotient_dimension(*gb) == 3);
}

TEST_CASE("trivial ideals") {
  auto one = reduced_groebner_basis(zp(kRing + "\nx - 1\ny - 2"), MonomialOrder::grevlex(2));
  CHECK(quotient_dimension(one) == 1);
  CHECK(*one.standard == monos({"1"}));
  auto xy = reduced_groebner_basis(zp(kRing + "\nx\ny"), MonomialOrder::lex(2));
  CHECK(*xy.standard == monos({"1"}));
  auto x = reduced_groebner_basis(zp("ring x over zp(7)\nx"), MonomialOrder::lex(1));
  CHECK(x.generators.size() == 1);
  auto unit = reduced_groebner_basis(zp(kRing + "\nx*y - 1\nx*y - 2"), MonomialOrder::grevlex(2));
  CHECK(unit.generators.size() == 1);
  CHECK(unit.standard->empty());
}

TEST_CASE("positive-dimensional ideals have no standard set") {
  auto gb = reduced_groebner_basis(zp(kRing + "\nx*y"), MonomialOrder::grevlex(2));
  CHECK_FALSE(gb.standard.has_value());
  CHECK_THROWS_AS(standard_monomials(gb), PositiveDimensionalError);
}

TEST_CASE("a basis is a fixed point") {
  auto eqs = toy_system();
  auto order = MonomialOrder::grevlex(2);
  auto gb = reduced_groebner_basis(eqs, order);
  auto again = reduced_groebner_basis(gb.generators, order);
  CHECK(again.generators == gb.generators);
  CHECK(again.leading_monomials == gb.leading_monomials);
}

TEST_CASE("pair budget aborts") {
  ProblemInstance inst = instantiate_zp(ProblemKind::kEfl, 1);
  BuchbergerOptions tight;
  tight.max_pair_reductions = 3;
  CHECK_THROWS_AS(reduced_groebner_basis(inst.system.zp(), MonomialOrder::grevlex(4), tight),
                  BudgetExceededError);
}

TEST_CASE("generators lie in the ideal of the built-in problems") {
  for (ProblemKind k : {ProblemKind::kStitch2, ProblemKind::kEfl}) {
    ProblemInstance inst = instantiate_zp(k, 2);
    const auto& eqs = inst.system.zp();
    auto gb = reduced_groebner_basis(eqs, MonomialOrder::grevlex(eqs.front().nvars()));
    CHECK(is_reduced(gb));
    for (const auto& f : eqs) CHECK(normal_form(f, gb).is_zero());
  }
}
