#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amsolve/fan.hpp"
#include "amsolve/numeric.hpp"
#include "amsolve/problems.hpp"

namespace amsolve {

enum class BasisSource { kGrevlex, kLex, kHeuristic, kUniform, kUniformDegree };

/// "grevlex", "lex", "heuristic", "uniform", "uniform-degree".
std::string_view basis_source_name(BasisSource s);
std::optional<BasisSource> parse_basis_source(std::string_view name);

/// Quotient basis of the ideal of `equations` drawn from `source`; the seed
/// only matters for the sampled sources.
QuotientBasis choose_basis(const std::vector<ZpPoly>& equations,
                           std::span<const std::string> var_names,
                           BasisSource source, std::uint64_t seed);

/// A basis with its smallest pruned template and the unpruned degree closure
/// for the same action variable. Numeric solving uses `closure`: the extra
/// rows give partial pivoting room to choose well-conditioned pivots.
struct Solver {
  QuotientBasis basis;
  EliminationTemplate pruned;
  EliminationTemplate closure;
};

/// Throws TemplateCapError when no action variable admits a template.
Solver build_solver(const std::vector<ZpPoly>& equations, QuotientBasis basis,
                    const TemplateOptions& options = {});

enum class BenchMode { kFan, kHeuristic, kUniform, kUniformDegree, kGrevlex };

/// "fan", "heuristic", "uniform", "uniform-degree", "grevlex".
std::string_view bench_mode_name(BenchMode m);
std::optional<BenchMode> parse_bench_mode(std::string_view name);

struct BenchRecord {
  std::size_t seed_index = 0;
  std::string provenance;
  std::string basis;
  bool feasible = false;
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Variable name, or "-" when infeasible.
  std::string action = "-";
  double time_ms = 0.0;
};

struct RunReport {
  std::string problem;
  BenchMode mode = BenchMode::kHeuristic;
  /// Sorted by (feasible first, rows, cols, provenance, seed_index).
  std::vector<BenchRecord> records;

  std::size_t feasible_count() const;
  /// Median template rows over feasible records; nullopt when none.
  std::optional<double> median_rows() const;
  std::optional<std::size_t> min_rows() const;
  double infeasible_rate() const;
};

struct BenchOptions {
  TemplateOptions templates;
  FanOptions fan;
};

/// One best_template per basis. Failures of a single basis are recorded as
/// infeasible; failures shared by every basis (no candidate set, Buchberger
/// budget) propagate.
RunReport run_bench(const std::vector<ZpPoly>& equations,
                    std::span<const std::string> var_names,
                    std::string problem, BenchMode mode, std::size_t samples,
                    std::uint64_t seed, const BenchOptions& options = {});

/// Header "mode,seed_index,rows,cols,action,feasible,time_ms" and one line
/// per record.
std::string format_bench_csv(const RunReport& report);

/// "# summary ..." line with min and median rows, plus the reference sizes
/// of the built-in problem for side-by-side reading.
std::string format_bench_summary(const RunReport& report);

/// Known template sizes (original, GRevLex, Groebner fan, sampled) for the
/// built-in problems that have them, as "rows x cols" text.
std::optional<std::string> reference_sizes(std::string_view problem);

}  // namespace amsolve
