#include "doctest.h"
#include "helpers.hpp"

using namespace amsolve;
using namespace amsolve::test;

TEST_CASE("toy heuristic bench") {
  RunReport r = run_bench(toy_system(), kXY, "toy", BenchMode::kHeuristic, 100, 1);
  CHECK(r.records.size() == 100);
  CHECK(r.feasible_count() == 100);
  CHECK(r.infeasible_rate() == 0.0);
  for (std::size_t i = 1; i < r.records.size(); ++i) {
    const auto& a = r.records[i - 1];
    const auto& b = r.records[i];
    CHECK(std::tie(a.rows, a.cols) <= std::tie(b.rows, b.cols));
  }
  CHECK(r.min_rows() == std::optional<std::size_t>(2));
}

TEST_CASE("grevlex bench has one row") {
  RunReport r = run_bench(toy_system(), kXY, "toy", BenchMode::kGrevlex, 100, 1);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].provenance == "grevlex(x>y)");
  CHECK(r.records[0].action == "y");
  CHECK(r.records[0].rows == 2);
}

TEST_CASE("fan bench covers every reduced basis") {
  RunReport r = run_bench(toy_system(), kXY, "toy", BenchMode::kFan, 50, 1);
  CHECK(r.records.size() == 3);
  CHECK(r.feasible_count() == 3);
}

TEST_CASE("bench output is independent of scheduling") {
  ProblemInstance inst = instantiate_zp(ProblemKind::kStitch2, 1);
  auto a = run_bench(inst.system.zp(), inst.system.ring.var_names, "stitch2",
                     BenchMode::kUniform, 30, 5);
  auto b = run_bench(inst.system.zp(), inst.system.ring.var_names, "stitch2",
                     BenchMode::kUniform, 30, 5);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].seed_index == b.records[i].seed_index);
    CHECK(a.records[i].basis == b.records[i].basis);
    CHECK(a.records[i].rows == b.records[i].rows);
  }
}

TEST_CASE("infeasible bases are recorded, not fatal") {
  ProblemInstance inst = instantiate_zp(ProblemKind::kStitch2, 1);
  BenchOptions tight;
  tight.templates.max_degree_cap = 3;
  auto r = run_bench(inst.system.zp(), inst.system.ring.var_names, "stitch2",
                     BenchMode::kHeuristic, 10, 1, tight);
  CHECK(r.records.size() == 10);
  CHECK(r.feasible_count() == 0);
  CHECK(r.infeasible_rate() == 1.0);
  CHECK_FALSE(r.median_rows().has_value());
  CHECK(r.records[0].action == "-");
  CHECK(format_bench_summary(r).find("min=- median_rows=-") != std::string::npos);
}

TEST_CASE("median") {
  RunReport r;
  for (std::size_t rows : {5, 1, 3, 8}) {
    BenchRecord rec;
    rec.feasible = true;
    rec.rows = rows;
    r.records.push_back(rec);
  }
  r.records.push_back(BenchRecord{});
  CHECK(r.median_rows() == std::optional<double>(4.0));
  CHECK(r.infeasible_rate() == doctest::Approx(0.2));
}

TEST_CASE("csv layout") {
  RunReport r = run_bench(toy_system(), kXY, "toy", BenchMode::kGrevlex, 1, 0);
  std::string csv = format_bench_csv(r);
  CHECK(csv.rfind("mode,seed_index,rows,cols,action,feasible,time_ms\ngrevlex,0,2,4,y,1,", 0) == 0);
  CHECK(format_bench_summary(r).find("# summary problem=toy mode=grevlex bases=1 feasible=1 min=2x4") == 0);
  CHECK(reference_sizes("stitch2").has_value());
  CHECK_FALSE(reference_sizes("toy").has_value());
}

TEST_CASE("basis sources") {
  auto eqs = toy_system();
  CHECK(choose_basis(eqs, kXY, BasisSource::kGrevlex, 0).monomials == monos({"1", "x", "y"}));
  CHECK(choose_basis(eqs, kXY, BasisSource::kLex, 0).monomials == monos({"1", "y", "y^2"}));
  for (BasisSource s : {BasisSource::kHeuristic, BasisSource::kUniform, BasisSource::kUniformDegree}) {
    auto a = choose_basis(eqs, kXY, s, 3);
    CHECK(a.monomials.size() == 3);
    CHECK(a.monomials == choose_basis(eqs, kXY, s, 3).monomials);
    CHECK(parse_basis_source(basis_source_name(s)) == s);
  }
  CHECK_FALSE(parse_bench_mode("random").has_value());
}

TEST_CASE("solver pairs a pruned and a closure template") {
  auto eqs = toy_system();
  Solver s = build_solver(eqs, choose_basis(eqs, kXY, BasisSource::kLex, 0));
  CHECK(s.pruned.action_var == s.closure.action_var);
  CHECK(s.pruned.n_rows() <= s.closure.n_rows());
  CHECK(action_matrix_from_template(s.pruned, eqs) == action_matrix_from_template(s.closure, eqs));
}
