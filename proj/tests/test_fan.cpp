#include "doctest.h"
#include "helpers.hpp"

using namespace amsolve;
using namespace amsolve::test;

TEST_CASE("toy fan has exactly three reduced bases") {
  FanEnumeration fan = enumerate_reduced_gbs(toy_system(), kXY, 200, 1);
  REQUIRE(fan.bases.size() == 3);
  std::vector<std::string> sigs;
  for (const auto& e : fan.bases) sigs.push_back(e.signature);
  CHECK(sigs == std::vector<std::string>{"x, y^3", "x^2, x*y, y^2", "x^3, y"});
  for (const auto& e : fan.bases) CHECK(e.gb.standard->size() == 3);

  auto eqs = toy_system();
  auto gr = reduced_groebner_basis(eqs, MonomialOrder::grevlex(2));
  auto lx = reduced_groebner_basis(eqs, MonomialOrder::lex(2));
  auto ly = reduced_groebner_basis(eqs, MonomialOrder::lex(std::vector<std::size_t>{1, 0}));
  CHECK(fan.bases[0].gb.generators == lx.generators);
  CHECK(fan.bases[1].gb.generators == gr.generators);
  CHECK(fan.bases[2].gb.generators == ly.generators);
}

TEST_CASE("signatures") {
  auto eqs = toy_system();
  CHECK(basis_signature(reduced_groebner_basis(eqs, MonomialOrder::grevlex(2)), kXY) ==
        "x^2, x*y, y^2");
  CHECK(basis_signature(reduced_groebner_basis(eqs, MonomialOrder::lex(2)), kXY) == "x, y^3");
}

TEST_CASE("single-solution ideal has one basis") {
  auto eqs = zp("ring x, y over zp(30011)\nx - 1\ny - 2");
  CHECK(enumerate_reduced_gbs(eqs, kXY, 50, 4).bases.size() == 1);
}

TEST_CASE("enumeration is deterministic") {
  auto a = enumerate_reduced_gbs(toy_system(), kXY, 100, 9);
  auto b = enumerate_reduced_gbs(toy_system(), kXY, 100, 9);
  REQUIRE(a.bases.size() == b.bases.size());
  for (std::size_t i = 0; i < a.bases.size(); ++i) {
    CHECK(a.bases[i].signature == b.bases[i].signature);
    CHECK(a.bases[i].witness == b.bases[i].witness);
  }
}

TEST_CASE("order list") {
  auto orders = fan_orders(2, 10, 1);
  // grevlex and lex for both permutations, then the weights.
  CHECK(orders.size() == 14);
  for (std::size_t i = 4; i < orders.size(); ++i) {
    CHECK(orders[i].kind() == MonomialOrder::Kind::kWeighted);
    for (auto w : orders[i].weights()) {
      CHECK(w >= 0);
      CHECK(w <= 4096);
    }
  }
  FanOptions no_perm;
  no_perm.max_permutation_vars = 1;
  // grevlex and lex once, then the weights.
  CHECK(fan_orders(2, 10, 1, no_perm).size() == 12);
}

TEST_CASE("positive-dimensional input is rejected") {
  CHECK_THROWS_AS(enumerate_reduced_gbs(zp("ring x, y over zp(30011)\nx*y"), kXY, 10, 1),
                  PositiveDimensionalError);
}
