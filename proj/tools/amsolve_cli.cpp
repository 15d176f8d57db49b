// amsolve command-line front end. Every command writes deterministic text to
// stdout; wall time appears only in a trailing "time_ms" line or in the last
// CSV column.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "amsolve/pipeline.hpp"
#include "amsolve/rng.hpp"

namespace {

using namespace amsolve;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;

/// Bad file, unknown problem, wrong coefficient domain.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  std::uint32_t prime = PrimeField::kDefaultModulus;
  std::uint64_t seed = 0;
  std::size_t budget = 200;
  int max_degree = 12;
  double timeout_seconds = 0.0;
};

/// A system loaded from a built-in problem name or a `.sys` path.
struct Input {
  std::optional<ProblemKind> kind;
  SystemFile system;
};

Input load_input(const std::string& arg, const Globals& g) {
  if (auto kind = parse_problem_kind(arg)) {
    return {kind, instantiate_zp(*kind, g.seed, PrimeField(g.prime)).system};
  }
  if (!std::filesystem::exists(arg)) {
    throw InputError("'" + arg + "' is neither a problem name nor a readable file");
  }
  return {std::nullopt, read_system_file(arg)};
}

const std::vector<ZpPoly>& prime_equations(const Input& in) {
  if (!in.system.is_prime_field()) {
    throw InputError("this command needs a system over zp(p)");
  }
  return in.system.zp();
}

std::string format_time(Clock::time_point start) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f",
                std::chrono::duration<double, std::milli>(Clock::now() - start).count());
  return buf;
}

std::string format_complex(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string format_double(double v, const char* fmt = "%.3e") {
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string monomial_list(const std::vector<Monomial>& ms,
                          std::span<const std::string> names) {
  std::string out;
  for (const auto& m : ms) {
    if (!out.empty()) out += ' ';
    out += format_monomial(m, names);
  }
  return out;
}

MonomialOrder parse_order(const std::string& text, std::size_t nvars) {
  if (text == "grevlex") return MonomialOrder::grevlex(nvars);
  if (text == "lex") return MonomialOrder::lex(nvars);
  if (text.rfind("weights:", 0) == 0) {
    std::vector<std::int64_t> w;
    std::stringstream ss(text.substr(8));
    for (std::string item; std::getline(ss, item, ',');) {
      try {
        w.push_back(std::stoll(item));
      } catch (const std::exception&) {
        throw InputError("bad weight '" + item + "'");
      }
    }
    if (w.size() != nvars) throw InputError("weight vector length must equal the variable count");
    return MonomialOrder::weighted(std::move(w));
  }
  throw InputError("unknown order '" + text + "' (grevlex, lex or weights:w1,w2,...)");
}

BasisSource basis_source(const std::string& name) {
  auto s = parse_basis_source(name);
  if (!s) throw InputError("unknown basis source '" + name + "'");
  return *s;
}

TemplateOptions template_options(const Globals& g) {
  TemplateOptions o;
  o.max_degree_cap = g.max_degree;
  return o;
}

// ---------------------------------------------------------------- commands

int cmd_gb(const Globals& g, const std::string& input, const std::string& order_text) {
  const auto start = Clock::now();
  Input in = load_input(input, g);
  const auto& eqs = prime_equations(in);
  const auto& names = in.system.ring.var_names;
  MonomialOrder order = parse_order(order_text, names.size());
  ReducedGroebnerBasis gb = reduced_groebner_basis(eqs, order);
  if (!gb.standard) {
    throw PositiveDimensionalError("the ideal is not zero-dimensional; no finite quotient basis");
  }
  std::cout << "order " << order.describe(names) << '\n';
  std::cout << "generators " << gb.generators.size() << '\n';
  for (const auto& p : gb.generators) std::cout << "  " << format_polynomial(p, names) << '\n';
  std::cout << "standard " << gb.standard->size() << ' ' << monomial_list(*gb.standard, names)
            << '\n';
  std::cout << "time_ms " << format_time(start) << '\n';
  return kExitOk;
}

int cmd_fan(const Globals& g, const std::string& input) {
  const auto start = Clock::now();
  Input in = load_input(input, g);
  const auto& names = in.system.ring.var_names;
  FanEnumeration fan = enumerate_reduced_gbs(prime_equations(in), names, g.budget, g.seed);
  std::cout << "signature,K,witness\n";
  for (const auto& e : fan.bases) {
    std::cout << '"' << e.signature << "\"," << e.gb.standard->size() << ','
              << e.witness.describe(names) << '\n';
  }
  std::cout << "# bases=" << fan.bases.size() << " budget=" << fan.sample_budget
            << " named_orders=" << fan.named_orders << " aborted=" << fan.aborted_orders
            << " exhausted=" << (fan.exhausted ? "yes" : "no") << '\n';
  std::cout << "time_ms " << format_time(start) << '\n';
  return kExitOk;
}

int cmd_sample(const Globals& g, const std::string& input, const std::string& mode,
               std::size_t samples) {
  const auto start = Clock::now();
  BasisSource source = basis_source(mode);
  Input in = load_input(input, g);
  const auto& eqs = prime_equations(in);
  const auto& names = in.system.ring.var_names;
  ReducedGroebnerBasis gb = reduced_groebner_basis(eqs, MonomialOrder::grevlex(names.size()));
  if (!gb.standard) throw PositiveDimensionalError("the ideal is not zero-dimensional");
  QuotientCoordinates qc(std::move(gb));
  const bool sampled = source != BasisSource::kGrevlex && source != BasisSource::kLex;
  std::optional<CandidateSet> M;
  if (sampled) M = build_candidate_set(eqs, qc);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t seed = Rng::substream(g.seed, i);
    QuotientBasis b;
    if (source == BasisSource::kHeuristic) {
      SamplerConfig cfg;
      cfg.seed = seed;
      b = sample_basis(*M, qc, cfg);
    } else if (sampled) {
      b = sample_basis_uniform(*M, qc, seed,
                               source == BasisSource::kUniform ? UniformMode::kFromM
                                                               : UniformMode::kDegreeClosure);
    } else {
      b = choose_basis(eqs, names, source, seed);
    }
    std::vector<Monomial> sorted = b.monomials;
    sort_for_listing(sorted);
    const auto alpha = extraction_variable(sorted);
    std::cout << i << ' ' << b.provenance << " independent=" << is_independent(sorted, qc)
              << " extraction=" << (alpha ? names[*alpha] : std::string("-")) << " : "
              << monomial_list(sorted, names) << '\n';
  }
  std::cout << "time_ms " << format_time(start) << '\n';
  return kExitOk;
}

int cmd_template(const Globals& g, const std::string& input, const std::string& basis_name,
                 const std::string& out_path, bool unpruned) {
  const auto start = Clock::now();
  Input in = load_input(input, g);
  const auto& eqs = prime_equations(in);
  const auto& names = in.system.ring.var_names;
  QuotientBasis basis = choose_basis(eqs, names, basis_source(basis_name), g.seed);
  Solver s = build_solver(eqs, basis, template_options(g));
  const EliminationTemplate& t = unpruned ? s.closure : s.pruned;
  const std::string text = write_template(t, names);
  if (read_template(text) != t) throw Error("template did not survive a write/read round trip");
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out || !(out << text)) throw InputError("cannot write " + out_path);
  }
  std::cout << "basis " << basis.provenance << ' ' << format_exponents(basis.monomials) << '\n';
  std::cout << "size " << t.n_rows() << ' ' << t.n_cols() << " action " << names[t.action_var]
            << '\n';
  std::cout << "closure " << s.closure.n_rows() << ' ' << s.closure.n_cols() << '\n';
  if (out_path.empty()) std::cout << text;
  std::cout << "time_ms " << format_time(start) << '\n';
  return kExitOk;
}

struct SolveFlags {
  std::string basis = "grevlex";
  std::string reference;
  bool hist = false;
  bool pruned = false;
  std::size_t instances = 1;
  std::optional<double> f;
  std::optional<double> lambda;
};

/// log10 residual histogram, one bin per decade.
void print_histogram(const std::vector<double>& residuals) {
  std::map<int, std::size_t> bins;
  for (double r : residuals) {
    const int b = r > 0.0 ? static_cast<int>(std::floor(std::log10(r))) : -20;
    ++bins[std::max(b, -20)];
  }
  std::cout << "log10_residual,count\n";
  for (const auto& [b, n] : bins) std::cout << b << ',' << n << '\n';
}

int cmd_solve(const Globals& g, const std::string& input, const SolveFlags& flags) {
  const auto start = Clock::now();
  const PrimeField F(g.prime);
  std::vector<ZpPoly> zp_eqs;
  std::vector<std::string> names;
  std::optional<ProblemKind> kind = parse_problem_kind(input);
  std::vector<CPoly> file_eqs;
  if (kind) {
    ProblemInstance zp = instantiate_zp(*kind, g.seed, F);
    zp_eqs = zp.system.zp();
    names = zp.system.ring.var_names;
  } else {
    Input in = load_input(input, g);
    names = in.system.ring.var_names;
    if (in.system.is_prime_field()) {
      zp_eqs = in.system.zp();
      for (const auto& p : zp_eqs) file_eqs.push_back(lift_to_complex(p));
    } else {
      if (flags.reference.empty()) {
        throw InputError("a complex system needs --reference <zp .sys> with the same support");
      }
      Input ref = load_input(flags.reference, g);
      zp_eqs = prime_equations(ref);
      if (ref.system.ring.var_names != names) {
        throw InputError("reference system has different variables");
      }
      file_eqs = in.system.complex();
    }
  }

  QuotientBasis basis = choose_basis(zp_eqs, names, basis_source(flags.basis), g.seed);
  Solver s = build_solver(zp_eqs, basis, template_options(g));
  const EliminationTemplate& t = flags.pruned ? s.pruned : s.closure;
  std::cout << "template " << t.n_rows() << ' ' << t.n_cols() << " action "
            << names[t.action_var] << " basis " << basis.provenance << '\n';

  const std::size_t n_inst = kind ? std::max<std::size_t>(flags.instances, 1) : 1;
  std::vector<double> all_residuals;
  std::size_t recovered = 0;
  std::size_t failures = 0;
  for (std::size_t k = 0; k < n_inst; ++k) {
    const std::uint64_t seed = g.seed + k;
    std::vector<CPoly> eqs = file_eqs;
    std::optional<ProblemInstance> inst;
    if (kind) {
      if ((flags.f || flags.lambda) && *kind != ProblemKind::kToy) {
        const double f = flags.f.value_or(*kind == ProblemKind::kEfl ? 10.0 : 2.0);
        const double lam = flags.lambda.value_or(-0.1);
        inst = *kind == ProblemKind::kEfl     ? relpose_efl(seed, f, lam)
               : *kind == ProblemKind::kStitch2 ? stitching_2view(seed, f, lam)
                                                : stitching_3view(seed, f, lam);
      } else {
        inst = instantiate_float(*kind, seed);
      }
      eqs = inst->system.complex();
    }
    SolutionSet sol;
    try {
      sol = solve(t, eqs);
    } catch (const Error& e) {
      if (n_inst == 1) throw;
      ++failures;
      std::cout << "instance " << k << " failed: " << e.what() << '\n';
      continue;
    }
    all_residuals.insert(all_residuals.end(), sol.residuals.begin(), sol.residuals.end());
    std::optional<double> f_err;
    if (inst && inst->f_gt > 0.0) {
      for (const auto& p : sol.points) {
        if (auto f = focal_from_solution(*kind, p)) {
          const double e = std::abs(*f - inst->f_gt) / inst->f_gt;
          if (!f_err || e < *f_err) f_err = e;
        }
      }
      if (f_err && *f_err < 1e-6) ++recovered;
    }
    if (n_inst == 1) {
      std::cout << "solutions " << sol.points.size() << '\n';
      std::cout << "#";
      for (const auto& v : names) std::cout << ' ' << v;
      std::cout << " residual\n";
      for (std::size_t i = 0; i < sol.points.size(); ++i) {
        for (std::size_t v = 0; v < names.size(); ++v) {
          std::cout << (v ? " " : "") << format_complex(sol.points[i][v]);
        }
        std::cout << ' ' << format_double(sol.residuals[i]) << '\n';
      }
      if (inst && inst->ground_truth) {
        std::cout << "truth";
        for (const auto& z : *inst->ground_truth) std::cout << ' ' << format_complex(z);
        std::cout << '\n';
      }
      if (f_err) std::cout << "f_rel_error " << format_double(*f_err) << '\n';
    } else {
      std::cout << "instance " << k << " solutions " << sol.points.size() << " f_rel_error "
                << (f_err ? format_double(*f_err) : std::string("-")) << '\n';
    }
  }
  if (n_inst > 1) {
    std::cout << "# recovered=" << recovered << " failed=" << failures << " of " << n_inst
              << '\n';
  }
  if (flags.hist) print_histogram(all_residuals);
  std::cout << "time_ms " << format_time(start) << '\n';
  return kExitOk;
}

int cmd_bench(const Globals& g, const std::string& problem, const std::string& mode_name,
              std::size_t samples) {
  auto kind = parse_problem_kind(problem);
  if (!kind) throw InputError("bench needs a built-in problem: toy, stitch2, stitch3, efl");
  auto mode = parse_bench_mode(mode_name);
  if (!mode) throw InputError("unknown bench mode '" + mode_name + "'");
  ProblemInstance inst = instantiate_zp(*kind, g.seed, PrimeField(g.prime));
  BenchOptions opts;
  opts.templates = template_options(g);
  const std::size_t n = *mode == BenchMode::kFan ? g.budget : samples;
  RunReport report = run_bench(inst.system.zp(), inst.system.ring.var_names, problem, *mode, n,
                               g.seed, opts);
  std::cout << format_bench_csv(report) << format_bench_summary(report);
  return kExitOk;
}

int cmd_gen(const Globals& g, const std::string& problem, bool as_float,
            std::optional<double> f, std::optional<double> lambda, const std::string& out_path) {
  auto kind = parse_problem_kind(problem);
  if (!kind) throw InputError("unknown problem '" + problem + "'");
  ProblemInstance inst;
  if (!as_float) {
    inst = instantiate_zp(*kind, g.seed, PrimeField(g.prime));
  } else if ((f || lambda) && *kind != ProblemKind::kToy) {
    const double fv = f.value_or(*kind == ProblemKind::kEfl ? 10.0 : 2.0);
    const double lv = lambda.value_or(-0.1);
    inst = *kind == ProblemKind::kEfl       ? relpose_efl(g.seed, fv, lv)
           : *kind == ProblemKind::kStitch2 ? stitching_2view(g.seed, fv, lv)
                                            : stitching_3view(g.seed, fv, lv);
  } else {
    inst = instantiate_float(*kind, g.seed);
  }
  std::string truth;
  if (inst.ground_truth) {
    std::ostringstream os;
    os << "truth";
    for (std::size_t v = 0; v < inst.ground_truth->size(); ++v) {
      os << ' ' << inst.system.ring.var_names[v] << '=' << format_complex((*inst.ground_truth)[v]);
    }
    if (inst.f_gt > 0.0) os << " f=" << format_double(inst.f_gt, "%.12g");
    truth = os.str();
  }
  if (out_path.empty()) {
    std::cout << format_system(inst.system);
    if (!truth.empty()) std::cout << "# " << truth << '\n';
  } else {
    write_system_file(out_path, inst.system);
    if (!truth.empty()) {
      std::ofstream side(out_path + ".truth");
      if (!side || !(side << truth << '\n')) throw InputError("cannot write " + out_path + ".truth");
    }
    std::cout << "wrote " << out_path << (truth.empty() ? "" : " and " + out_path + ".truth")
              << '\n';
  }
  return kExitOk;
}

void start_watchdog(double seconds) {
  if (seconds <= 0.0) return;
  std::thread([seconds] {
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    std::fputs("error: timeout exceeded\n", stderr);
    std::fflush(stdout);
    std::_Exit(kExitCompute);
  }).detach();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Action-matrix polynomial solver toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--prime", g.prime, "prime modulus for Z_p instances")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--budget", g.budget, "random weight vectors tried by fan")
      ->capture_default_str();
  app.add_option("--max-degree", g.max_degree, "template degree cap")->capture_default_str();
  app.add_option("--timeout-seconds", g.timeout_seconds, "abort with exit 3 after this long");

  std::string input;
  std::string order = "grevlex";
  auto* gb = app.add_subcommand("gb", "reduced Groebner basis and standard monomials");
  gb->add_option("input", input, "problem name or .sys file")->required();
  gb->add_option("--order", order, "grevlex, lex or weights:w1,w2,...");

  auto* fan = app.add_subcommand("fan", "distinct reduced Groebner bases over sampled orders");
  fan->add_option("input", input, "problem name or .sys file")->required();

  std::string mode = "heuristic";
  std::size_t samples = 10;
  auto* sample = app.add_subcommand("sample", "draw quotient bases");
  sample->add_option("input", input, "problem name or .sys file")->required();
  sample->add_option("--mode", mode, "heuristic, uniform, uniform-degree, grevlex, lex");
  sample->add_option("--samples", samples, "number of bases");

  std::string basis = "grevlex";
  std::string out_path;
  bool unpruned = false;
  auto* tmpl = app.add_subcommand("template", "build an elimination template");
  tmpl->add_option("input", input, "problem name or .sys file")->required();
  tmpl->add_option("--basis", basis, "grevlex, lex, heuristic, uniform, uniform-degree");
  tmpl->add_option("--out", out_path, "template file to write");
  tmpl->add_flag("--unpruned", unpruned, "emit the degree-closure template");

  SolveFlags sf;
  auto* solve_cmd = app.add_subcommand("solve", "solve float instances with an action matrix");
  solve_cmd->add_option("input", input, "problem name or .sys file")->required();
  solve_cmd->add_option("--basis", sf.basis, "quotient basis source");
  solve_cmd->add_option("--reference", sf.reference, "zp system with the support of the input");
  solve_cmd->add_flag("--hist", sf.hist, "append a log10 residual histogram");
  solve_cmd->add_flag("--pruned", sf.pruned, "eliminate with the pruned template");
  solve_cmd->add_option("--instances", sf.instances, "consecutive seeds to solve");
  solve_cmd->add_option("--f", sf.f, "planted focal length");
  solve_cmd->add_option("--lambda", sf.lambda, "planted distortion");

  auto* bench = app.add_subcommand("bench", "template sizes over many bases (CSV)");
  bench->add_option("problem", input, "toy, stitch2, stitch3, efl")->required();
  bench->add_option("--mode", mode, "fan, heuristic, uniform, uniform-degree, grevlex");
  bench->add_option("--samples", samples, "bases per run");

  bool as_float = false;
  std::optional<double> gen_f;
  std::optional<double> gen_lambda;
  auto* gen = app.add_subcommand("gen", "write a problem instance as a .sys file");
  gen->add_option("problem", input, "toy, stitch2, stitch3, efl")->required();
  gen->add_flag("--float", as_float, "complex instance with a planted solution");
  gen->add_option("--f", gen_f, "planted focal length");
  gen->add_option("--lambda", gen_lambda, "planted distortion");
  gen->add_option("--out", out_path, "output path; stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    PrimeField check(g.prime);
  } catch (const Error& e) {
    std::cerr << "error: --prime: " << e.what() << '\n';
    return kExitUsage;
  }
  start_watchdog(g.timeout_seconds);

  try {
    if (gb->parsed()) return cmd_gb(g, input, order);
    if (fan->parsed()) return cmd_fan(g, input);
    if (sample->parsed()) return cmd_sample(g, input, mode, samples);
    if (tmpl->parsed()) return cmd_template(g, input, basis, out_path, unpruned);
    if (solve_cmd->parsed()) return cmd_solve(g, input, sf);
    if (bench->parsed()) return cmd_bench(g, input, mode, samples);
    if (gen->parsed()) return cmd_gen(g, input, as_float, gen_f, gen_lambda, out_path);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PositiveDimensionalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitUsage;
}
