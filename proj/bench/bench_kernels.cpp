// Serial versus OpenMP-parallel kernels on matrices of template size.

#include <benchmark/benchmark.h>

#include "amsolve/pipeline.hpp"
#include "amsolve/rng.hpp"

namespace {

using namespace amsolve;

ZpMatrix random_matrix(std::size_t rows, std::size_t cols, const PrimeField& F) {
  Rng rng(7);
  ZpMatrix A(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      A(r, c) = static_cast<std::uint32_t>(rng.uniform_int(0, F.modulus() - 1));
    }
  }
  return A;
}

void BM_RrefRandom(benchmark::State& state, Exec exec) {
  const PrimeField F;
  const auto n = static_cast<std::size_t>(state.range(0));
  const ZpMatrix A0 = random_matrix(n, n + n / 4, F);
  for (auto _ : state) {
    ZpMatrix A = A0;
    benchmark::DoNotOptimize(rref(A, F, exec));
  }
}
BENCHMARK_CAPTURE(BM_RrefRandom, serial, Exec::kSerial)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK_CAPTURE(BM_RrefRandom, parallel, Exec::kParallel)->Arg(128)->Arg(256)->Arg(512);

/// The E+f-lambda degree-closure template, the largest matrix the solver
/// pipeline eliminates.
void BM_RrefEflTemplate(benchmark::State& state, Exec exec) {
  const PrimeField F;
  ProblemInstance inst = instantiate_zp(ProblemKind::kEfl, 1, F);
  const auto& eqs = inst.system.zp();
  ReducedGroebnerBasis gb = reduced_groebner_basis(eqs, MonomialOrder::grevlex(4));
  EliminationTemplate t = build_template(eqs, *gb.standard, 1);
  const ZpMatrix A0 = template_matrix(t, eqs);
  state.counters["rows"] = static_cast<double>(A0.rows());
  state.counters["cols"] = static_cast<double>(A0.cols());
  for (auto _ : state) {
    ZpMatrix A = A0;
    benchmark::DoNotOptimize(rref(A, F, exec));
  }
}
BENCHMARK_CAPTURE(BM_RrefEflTemplate, serial, Exec::kSerial);
BENCHMARK_CAPTURE(BM_RrefEflTemplate, parallel, Exec::kParallel);

/// Template search for one basis: every feasibility test runs an rref.
void BM_BestTemplateStitch(benchmark::State& state, Exec exec) {
  const PrimeField F;
  ProblemInstance inst = instantiate_zp(ProblemKind::kStitch2, 1, F);
  const auto& eqs = inst.system.zp();
  ReducedGroebnerBasis gb = reduced_groebner_basis(eqs, MonomialOrder::grevlex(2));
  TemplateOptions opts;
  opts.exec = exec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_template(eqs, *gb.standard, opts));
  }
}
BENCHMARK_CAPTURE(BM_BestTemplateStitch, serial, Exec::kSerial);
BENCHMARK_CAPTURE(BM_BestTemplateStitch, parallel, Exec::kParallel);

}  // namespace

BENCHMARK_MAIN();
