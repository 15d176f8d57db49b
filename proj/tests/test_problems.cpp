#include "doctest.h"
#include "helpers.hpp"

using namespace amsolve;
using namespace amsolve::test;

namespace {

std::size_t K_of(const std::vector<ZpPoly>& eqs) {
  return quotient_dimension(
      reduced_groebner_basis(eqs, MonomialOrder::grevlex(eqs.front().nvars())));
}

}  // namespace

TEST_CASE("problem names") {
  for (ProblemKind k :
       {ProblemKind::kToy, ProblemKind::kStitch2, ProblemKind::kStitch3, ProblemKind::kEfl}) {
    CHECK(parse_problem_kind(problem_name(k)) == k);
  }
  CHECK_FALSE(parse_problem_kind("p4pfr").has_value());
  CHECK(problem_variables(ProblemKind::kEfl) ==
        std::vector<std::string>{"w", "lam", "f13", "f23"});
}

TEST_CASE("toy instance") {
  ProblemInstance t = toy();
  CHECK(t.system.zp() == toy_system());
  CHECK(t.system.ring.modulus == 30011);
  CHECK(K_of(t.system.zp()) == 3);
}

TEST_CASE("planted Z_p solutions are exact roots") {
  PrimeField F;
  for (ProblemKind k : {ProblemKind::kStitch2, ProblemKind::kStitch3, ProblemKind::kEfl}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      ProblemInstance inst = instantiate_zp(k, seed, F);
      REQUIRE(inst.zp_solution.has_value());
      for (const auto& f : inst.system.zp()) CHECK(f.evaluate(*inst.zp_solution).value == 0);
    }
  }
}

TEST_CASE("quotient dimensions") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    CHECK(K_of(instantiate_zp(ProblemKind::kStitch2, seed).system.zp()) == 18);
    CHECK(K_of(instantiate_zp(ProblemKind::kStitch3, seed).system.zp()) == 18);
    CHECK(K_of(instantiate_zp(ProblemKind::kEfl, seed).system.zp()) == 19);
  }
}

TEST_CASE("instances share a leading-term ideal") {
  for (ProblemKind k : {ProblemKind::kStitch2, ProblemKind::kEfl}) {
    auto ref = reduced_groebner_basis(instantiate_zp(k, 0).system.zp(),
                                      MonomialOrder::grevlex(problem_variables(k).size()));
    int same = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto gb = reduced_groebner_basis(instantiate_zp(k, seed).system.zp(), ref.order);
      same += gb.leading_monomials == ref.leading_monomials;
    }
    CHECK(same >= 9);
  }
}

TEST_CASE("float instances satisfy their planted solution") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (ProblemKind k : {ProblemKind::kStitch2, ProblemKind::kStitch3}) {
      ProblemInstance inst = instantiate_float(k, seed);
      REQUIRE(inst.ground_truth.has_value());
      CHECK(normalized_residual(inst.system.complex(), *inst.ground_truth) < 1e-10);
      CHECK(inst.f_gt >= 0.5);
      CHECK(inst.f_gt <= 5.0);
      CHECK(inst.lambda_gt <= 0.0);
      CHECK(inst.lambda_gt >= -0.5);
      auto f = focal_from_solution(k, *inst.ground_truth);
      REQUIRE(f.has_value());
      CHECK(*f == doctest::Approx(inst.f_gt));
    }
    ProblemInstance e = instantiate_float(ProblemKind::kEfl, seed);
    CHECK(e.system.num_equations() == 11);
    CHECK(normalized_residual(e.system.complex(), *e.ground_truth) < 1e-8);
    CHECK(*focal_from_solution(ProblemKind::kEfl, *e.ground_truth) == doctest::Approx(10.0));
  }
}

TEST_CASE("explicit parameters") {
  ProblemInstance s = stitching_2view(3, 2.5, 0.0);
  CHECK(s.f_gt == 2.5);
  CHECK(s.lambda_gt == 0.0);
  CHECK((*s.ground_truth)[0] == std::complex<double>(0.0));
  CHECK(normalized_residual(s.system.complex(), *s.ground_truth) < 1e-10);
  ProblemInstance e = relpose_efl(3, 4.0, -0.2);
  CHECK(normalized_residual(e.system.complex(), *e.ground_truth) < 1e-8);
}

TEST_CASE("float support is contained in the Z_p support") {
  for (ProblemKind k : {ProblemKind::kStitch2, ProblemKind::kStitch3, ProblemKind::kEfl}) {
    auto zp_eqs = instantiate_zp(k, 1).system.zp();
    auto fl = instantiate_float(k, 1).system.complex();
    REQUIRE(fl.size() == zp_eqs.size());
    for (std::size_t i = 0; i < fl.size(); ++i) {
      auto zm = zp_eqs[i].monomials();
      for (const auto& m : fl[i].monomials()) {
        CHECK(std::find(zm.begin(), zm.end(), m) != zm.end());
      }
    }
  }
}

TEST_CASE("generation is deterministic") {
  CHECK(instantiate_zp(ProblemKind::kEfl, 7).system == instantiate_zp(ProblemKind::kEfl, 7).system);
  CHECK(instantiate_float(ProblemKind::kStitch3, 7).system ==
        instantiate_float(ProblemKind::kStitch3, 7).system);
  CHECK_FALSE(instantiate_zp(ProblemKind::kStitch2, 1).system ==
              instantiate_zp(ProblemKind::kStitch2, 2).system);
}
