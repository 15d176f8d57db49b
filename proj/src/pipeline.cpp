#include "amsolve/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <sstream>

#include "amsolve/rng.hpp"

namespace amsolve {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

QuotientCoordinates grevlex_coordinates(const std::vector<ZpPoly>& equations) {
  if (equations.empty()) throw Error("empty system");
  ReducedGroebnerBasis gb =
      reduced_groebner_basis(equations, MonomialOrder::grevlex(equations.front().nvars()));
  if (!gb.standard) throw PositiveDimensionalError("ideal is not zero-dimensional");
  return QuotientCoordinates(std::move(gb));
}

BenchRecord evaluate(const std::vector<ZpPoly>& equations,
                     std::span<const std::string> var_names,
                     const QuotientBasis& basis, std::size_t index,
                     const TemplateOptions& options) {
  auto start = Clock::now();
  BenchRecord rec;
  rec.seed_index = index;
  rec.provenance = basis.provenance;
  rec.basis = format_exponents(basis.monomials);
  try {
    EliminationTemplate t = best_template(equations, basis.monomials, options);
    rec.feasible = true;
    rec.rows = t.n_rows();
    rec.cols = t.n_cols();
    rec.action = var_names[t.action_var];
  } catch (const TemplateCapError&) {
    rec.feasible = false;
  }
  rec.time_ms = elapsed_ms(start);
  return rec;
}

}  // namespace

std::string_view basis_source_name(BasisSource s) {
  switch (s) {
    case BasisSource::kGrevlex:
      return "grevlex";
    case BasisSource::kLex:
      return "lex";
    case BasisSource::kHeuristic:
      return "heuristic";
    case BasisSource::kUniform:
      return "uniform";
    case BasisSource::kUniformDegree:
      return "uniform-degree";
  }
  return "unknown";
}

std::optional<BasisSource> parse_basis_source(std::string_view name) {
  for (BasisSource s : {BasisSource::kGrevlex, BasisSource::kLex, BasisSource::kHeuristic,
                        BasisSource::kUniform, BasisSource::kUniformDegree}) {
    if (basis_source_name(s) == name) return s;
  }
  return std::nullopt;
}

QuotientBasis choose_basis(const std::vector<ZpPoly>& equations,
                           std::span<const std::string> var_names,
                           BasisSource source, std::uint64_t seed) {
  if (equations.empty()) throw Error("empty system");
  const std::size_t n = equations.front().nvars();
  if (source == BasisSource::kLex) {
    ReducedGroebnerBasis gb = reduced_groebner_basis(equations, MonomialOrder::lex(n));
    if (!gb.standard) throw PositiveDimensionalError("ideal is not zero-dimensional");
    return standard_basis(gb, var_names);
  }
  QuotientCoordinates qc = grevlex_coordinates(equations);
  switch (source) {
    case BasisSource::kGrevlex:
      return standard_basis(qc.gb(), var_names);
    case BasisSource::kHeuristic: {
      SamplerConfig cfg;
      cfg.seed = seed;
      return sample_basis(build_candidate_set(equations, qc), qc, cfg);
    }
    case BasisSource::kUniform:
      return sample_basis_uniform(build_candidate_set(equations, qc), qc, seed,
                                  UniformMode::kFromM);
    case BasisSource::kUniformDegree:
      return sample_basis_uniform(build_candidate_set(equations, qc), qc, seed,
                                  UniformMode::kDegreeClosure);
    case BasisSource::kLex:
      break;
  }
  throw Error("unknown basis source");
}

Solver build_solver(const std::vector<ZpPoly>& equations, QuotientBasis basis,
                    const TemplateOptions& options) {
  Solver s;
  s.pruned = best_template(equations, basis.monomials, options);
  s.closure = build_template(equations, basis.monomials, s.pruned.action_var, options);
  s.basis = std::move(basis);
  return s;
}

std::string_view bench_mode_name(BenchMode m) {
  switch (m) {
    case BenchMode::kFan:
      return "fan";
    case BenchMode::kHeuristic:
      return "heuristic";
    case BenchMode::kUniform:
      return "uniform";
    case BenchMode::kUniformDegree:
      return "uniform-degree";
    case BenchMode::kGrevlex:
      return "grevlex";
  }
  return "unknown";
}

std::optional<BenchMode> parse_bench_mode(std::string_view name) {
  for (BenchMode m : {BenchMode::kFan, BenchMode::kHeuristic, BenchMode::kUniform,
                      BenchMode::kUniformDegree, BenchMode::kGrevlex}) {
    if (bench_mode_name(m) == name) return m;
  }
  return std::nullopt;
}

std::size_t RunReport::feasible_count() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const BenchRecord& r) { return r.feasible; }));
}

std::optional<double> RunReport::median_rows() const {
  std::vector<std::size_t> rows;
  for (const auto& r : records) {
    if (r.feasible) rows.push_back(r.rows);
  }
  if (rows.empty()) return std::nullopt;
  std::sort(rows.begin(), rows.end());
  const std::size_t m = rows.size() / 2;
  if (rows.size() % 2) return static_cast<double>(rows[m]);
  return 0.5 * static_cast<double>(rows[m - 1] + rows[m]);
}

std::optional<std::size_t> RunReport::min_rows() const {
  std::optional<std::size_t> out;
  for (const auto& r : records) {
    if (r.feasible && (!out || r.rows < *out)) out = r.rows;
  }
  return out;
}

double RunReport::infeasible_rate() const {
  if (records.empty()) return 0.0;
  return static_cast<double>(records.size() - feasible_count()) /
         static_cast<double>(records.size());
}

RunReport run_bench(const std::vector<ZpPoly>& equations,
                    std::span<const std::string> var_names, std::string problem,
                    BenchMode mode, std::size_t samples, std::uint64_t seed,
                    const BenchOptions& options) {
  RunReport report;
  report.problem = std::move(problem);
  report.mode = mode;

  std::vector<QuotientBasis> bases;
  QuotientCoordinates qc = grevlex_coordinates(equations);
  std::optional<CandidateSet> M;
  switch (mode) {
    case BenchMode::kGrevlex:
      bases.push_back(standard_basis(qc.gb(), var_names));
      break;
    case BenchMode::kFan: {
      FanEnumeration fan = enumerate_reduced_gbs(equations, var_names, samples, seed, options.fan);
      for (const FanEntry& e : fan.bases) bases.push_back(standard_basis(e.gb, var_names));
      break;
    }
    default:
      M = build_candidate_set(equations, qc);
      bases.resize(samples);
      break;
  }

  report.records.resize(bases.size());
  std::vector<std::exception_ptr> errors(bases.size());
  const auto n = static_cast<std::ptrdiff_t>(bases.size());
#pragma omp parallel
  {
    // Coordinates memoize internally; every thread gets its own copy.
    QuotientCoordinates local = qc;
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      try {
        if (M) {
          const std::uint64_t s = Rng::substream(seed, idx);
          if (mode == BenchMode::kHeuristic) {
            SamplerConfig cfg;
            cfg.seed = s;
            bases[idx] = sample_basis(*M, local, cfg);
          } else {
            bases[idx] = sample_basis_uniform(*M, local, s,
                                              mode == BenchMode::kUniform
                                                  ? UniformMode::kFromM
                                                  : UniformMode::kDegreeClosure);
          }
        }
        report.records[idx] = evaluate(equations, var_names, bases[idx], idx, options.templates);
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::sort(report.records.begin(), report.records.end(),
            [](const BenchRecord& a, const BenchRecord& b) {
              return std::tie(b.feasible, a.rows, a.cols, a.provenance, a.seed_index) <
                     std::tie(a.feasible, b.rows, b.cols, b.provenance, b.seed_index);
            });
  return report;
}

std::string format_bench_csv(const RunReport& report) {
  std::ostringstream os;
  os << "mode,seed_index,rows,cols,action,feasible,time_ms\n";
  char ms[32];
  for (const auto& r : report.records) {
    std::snprintf(ms, sizeof ms, "%.3f", r.time_ms);
    os << bench_mode_name(report.mode) << ',' << r.seed_index << ',' << r.rows << ','
       << r.cols << ',' << r.action << ',' << (r.feasible ? 1 : 0) << ',' << ms << '\n';
  }
  return os.str();
}

std::string format_bench_summary(const RunReport& report) {
  std::ostringstream os;
  os << "# summary problem=" << report.problem << " mode=" << bench_mode_name(report.mode)
     << " bases=" << report.records.size() << " feasible=" << report.feasible_count();
  if (auto m = report.min_rows()) {
    const auto best = std::find_if(report.records.begin(), report.records.end(),
                                   [](const BenchRecord& r) { return r.feasible; });
    os << " min=" << *m << 'x' << best->cols;
    char med[32];
    std::snprintf(med, sizeof med, "%.1f", *report.median_rows());
    os << " median_rows=" << med;
  } else {
    os << " min=- median_rows=-";
  }
  os << '\n';
  if (auto ref = reference_sizes(report.problem)) os << "# reference " << *ref << '\n';
  return os.str();
}

std::optional<std::string> reference_sizes(std::string_view problem) {
  if (problem == "stitch2" || problem == "stitch3") {
    return std::string("original=54x77 grevlex=48x66 fan=48x66 sampled=18x36");
  }
  if (problem == "efl") {
    return std::string("original=200x231 grevlex=181x200 fan=69x90 sampled=69x90");
  }
  return std::nullopt;
}

}  // namespace amsolve
