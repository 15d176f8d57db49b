#include "amsolve/template.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace amsolve {

namespace {

bool grevlex_greater(const Monomial& a, const Monomial& b) {
  return grevlex_compare(a, b) > 0;
}

using MonoSet = std::unordered_set<Monomial, MonomialHash>;

MonoSet touched_monomials(const std::vector<TemplateRow>& rows,
                          const std::vector<ZpPoly>& equations) {
  MonoSet out;
  for (const auto& r : rows) {
    if (r.eq >= equations.size()) throw Error("template row references a missing equation");
    for (const auto& t : equations[r.eq].terms()) out.insert(t.monomial * r.mul);
  }
  return out;
}

/// Dense rows of the template restricted to `cols`.
ZpMatrix fill_matrix(const std::vector<TemplateRow>& rows,
                     const std::vector<ZpPoly>& equations,
                     const std::vector<Monomial>& cols) {
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t c = 0; c < cols.size(); ++c) index.emplace(cols[c], c);
  ZpMatrix A(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& t : equations[rows[r].eq].terms()) {
      auto it = index.find(t.monomial * rows[r].mul);
      if (it != index.end()) A(r, it->second) = t.coeff.value;
    }
  }
  return A;
}

const PrimeField& field_of(const std::vector<ZpPoly>& equations) {
  if (equations.empty()) throw Error("empty system");
  return equations.front().field();
}

/// Excess then reducible columns: the part of the template that decides
/// feasibility.
std::vector<Monomial> feasibility_columns(const EliminationTemplate& t) {
  std::vector<Monomial> cols = t.excess;
  cols.insert(cols.end(), t.reducible.begin(), t.reducible.end());
  return cols;
}

bool reducible_touched(const EliminationTemplate& t, const MonoSet& touched) {
  return std::all_of(t.reducible.begin(), t.reducible.end(),
                     [&](const Monomial& m) { return touched.count(m) > 0; });
}

/// Echelon over Z_p whose rows remember which input rows produced them.
class TrackedEchelon {
 public:
  TrackedEchelon(const PrimeField& F, std::size_t dim, std::size_t words)
      : F_(F), dim_(dim), words_(words) {}

  struct Row {
    std::size_t pivot;
    std::size_t creator;
    std::vector<std::uint32_t> v;
    std::vector<std::uint64_t> prov;
  };

  /// Reduces v and inserts it when nonzero. With track set, provenance
  /// bitsets are OR-ed along.
  bool insert(std::vector<std::uint32_t> v, std::size_t creator, bool track) {
    std::vector<std::uint64_t> prov;
    if (track) {
      prov.assign(words_, 0);
      prov[creator / 64] |= std::uint64_t{1} << (creator % 64);
    }
    const std::uint64_t p = F_.modulus();
    for (const Row& r : rows_) {
      std::uint32_t a = v[r.pivot];
      if (a == 0) continue;
      const std::uint64_t neg = p - a;
      for (std::size_t k = r.pivot; k < dim_; ++k) {
        if (r.v[k]) v[k] = static_cast<std::uint32_t>((v[k] + neg * r.v[k]) % p);
      }
      if (track) {
        for (std::size_t w = 0; w < words_; ++w) prov[w] |= r.prov[w];
      }
    }
    std::size_t piv = 0;
    while (piv < dim_ && v[piv] == 0) ++piv;
    if (piv == dim_) return false;
    const FieldElem inv = F_.inverse(FieldElem{v[piv]});
    for (std::size_t k = piv; k < dim_; ++k) {
      if (v[k]) v[k] = F_.mul(FieldElem{v[k]}, inv).value;
    }
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), piv,
                                [](const Row& r, std::size_t c) { return r.pivot < c; });
    rows_.insert(pos, Row{piv, creator, std::move(v), std::move(prov)});
    return true;
  }

  void push_sorted(const Row& r) { rows_.push_back(r); }
  const std::vector<Row>& rows() const noexcept { return rows_; }

  std::size_t pivots_from(std::size_t first_col) const {
    std::size_t c = 0;
    for (const Row& r : rows_) c += r.pivot >= first_col;
    return c;
  }

 private:
  PrimeField F_;
  std::size_t dim_;
  std::size_t words_;
  std::vector<Row> rows_;
};

std::vector<std::uint32_t> matrix_row(const ZpMatrix& A, std::size_t r) {
  return std::vector<std::uint32_t>(A.row(r), A.row(r) + A.cols());
}

}  // namespace

std::vector<Monomial> EliminationTemplate::columns() const {
  std::vector<Monomial> out = excess;
  out.insert(out.end(), reducible.begin(), reducible.end());
  out.insert(out.end(), basis_columns.begin(), basis_columns.end());
  return out;
}

std::vector<Monomial> reducible_set(const std::vector<Monomial>& B,
                                    std::size_t alpha) {
  MonoSet inB(B.begin(), B.end());
  MonoSet seen;
  std::vector<Monomial> out;
  for (const Monomial& b : B) {
    Monomial m = b * Monomial::variable(b.nvars(), alpha);
    if (inB.count(m) || !seen.insert(m).second) continue;
    out.push_back(m);
  }
  std::sort(out.begin(), out.end(), grevlex_greater);
  return out;
}

std::vector<TemplateRow> expand_rows(const std::vector<ZpPoly>& equations,
                                     int max_deg) {
  std::vector<TemplateRow> rows;
  for (std::size_t i = 0; i < equations.size(); ++i) {
    if (equations[i].is_zero()) continue;
    int room = max_deg - equations[i].total_degree();
    if (room < 0) continue;
    for (const Monomial& m : monomials_up_to_degree(equations[i].nvars(), room)) {
      rows.push_back({i, m});
    }
  }
  return rows;
}

EliminationTemplate make_template(std::vector<TemplateRow> rows,
                                  const std::vector<ZpPoly>& equations,
                                  const std::vector<Monomial>& B,
                                  std::size_t alpha) {
  EliminationTemplate t;
  t.rows = std::move(rows);
  t.basis = B;
  t.action_var = alpha;
  t.reducible = reducible_set(B, alpha);
  MonoSet touched = touched_monomials(t.rows, equations);
  MonoSet special(t.reducible.begin(), t.reducible.end());
  special.insert(B.begin(), B.end());
  for (const Monomial& m : touched) {
    if (!special.count(m)) t.excess.push_back(m);
  }
  for (const Monomial& b : B) {
    if (touched.count(b)) t.basis_columns.push_back(b);
  }
  std::sort(t.excess.begin(), t.excess.end(), grevlex_greater);
  std::sort(t.basis_columns.begin(), t.basis_columns.end(), grevlex_greater);
  return t;
}

ZpMatrix template_matrix(const EliminationTemplate& t,
                         const std::vector<ZpPoly>& equations) {
  return fill_matrix(t.rows, equations, t.columns());
}

bool feasible(const std::vector<TemplateRow>& rows,
              const std::vector<Monomial>& B, std::size_t alpha,
              const std::vector<ZpPoly>& equations, Exec exec) {
  EliminationTemplate t = make_template(rows, equations, B, alpha);
  if (t.reducible.empty()) return true;
  if (!reducible_touched(t, touched_monomials(t.rows, equations))) return false;
  ZpMatrix A = fill_matrix(t.rows, equations, feasibility_columns(t));
  RrefResult r = rref(A, field_of(equations), exec);
  std::size_t in_r = 0;
  for (std::size_t c : r.pivot_cols) in_r += c >= t.excess.size();
  return in_r == t.reducible.size();
}

EliminationTemplate build_template(const std::vector<ZpPoly>& equations,
                                   const std::vector<Monomial>& B,
                                   std::size_t alpha,
                                   const TemplateOptions& options) {
  int start = 0;
  for (const auto& f : equations) start = std::max(start, f.total_degree());
  for (int d = start; d <= options.max_degree_cap; ++d) {
    auto rows = expand_rows(equations, d);
    if (feasible(rows, B, alpha, equations, options.exec)) {
      return make_template(std::move(rows), equations, B, alpha);
    }
  }
  throw TemplateCapError("no feasible template up to degree " +
                         std::to_string(options.max_degree_cap));
}

EliminationTemplate prune(const EliminationTemplate& t,
                          const std::vector<ZpPoly>& equations) {
  const PrimeField& F = field_of(equations);
  const std::size_t nr = t.reducible.size();
  if (nr == 0) return make_template({}, equations, t.basis, t.action_var);
  const std::vector<Monomial> cols = feasibility_columns(t);
  const std::size_t r_start = t.excess.size();
  const std::size_t dim = cols.size();

  // Cut: keep the rows that reducible pivot rows were built from.
  std::vector<TemplateRow> cut_rows;
  {
    ZpMatrix A = fill_matrix(t.rows, equations, cols);
    TrackedEchelon ech(F, dim, (t.rows.size() + 63) / 64);
    for (std::size_t i = 0; i < t.rows.size(); ++i) ech.insert(matrix_row(A, i), i, true);
    if (ech.pivots_from(r_start) != nr) {
      throw Error("prune requires a feasible template");
    }
    std::vector<std::uint64_t> keep((t.rows.size() + 63) / 64, 0);
    for (const auto& r : ech.rows()) {
      if (r.pivot < r_start) continue;
      for (std::size_t w = 0; w < keep.size(); ++w) keep[w] |= r.prov[w];
    }
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (keep[i / 64] >> (i % 64) & 1) cut_rows.push_back(t.rows[i]);
    }
  }

  // Reverse greedy. Row i is dropped iff rows[0..i) together with the rows
  // already kept above i stay feasible. The forward echelon rows created by
  // rows < i span exactly rows[0..i).
  ZpMatrix A = fill_matrix(cut_rows, equations, cols);
  const std::size_t n = cut_rows.size();
  TrackedEchelon forward(F, dim, 0);
  for (std::size_t i = 0; i < n; ++i) forward.insert(matrix_row(A, i), i, false);

  std::vector<std::size_t> kept;
  for (std::size_t i = n; i-- > 0;) {
    TrackedEchelon work(F, dim, 0);
    std::size_t r_pivots = 0;
    for (const auto& r : forward.rows()) {
      if (r.creator >= i) continue;
      work.push_sorted(r);
      r_pivots += r.pivot >= r_start;
    }
    bool ok = r_pivots == nr;
    if (!ok && r_pivots + kept.size() >= nr) {
      for (std::size_t k : kept) {
        work.insert(matrix_row(A, k), k, false);
        if (work.pivots_from(r_start) == nr) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<TemplateRow> rows;
  for (std::size_t k : kept) rows.push_back(cut_rows[k]);
  return make_template(std::move(rows), equations, t.basis, t.action_var);
}

ZpSquare action_matrix_from_template(const EliminationTemplate& t,
                                     const std::vector<ZpPoly>& equations,
                                     Exec exec) {
  const PrimeField& F = field_of(equations);
  const std::size_t K = t.basis.size();
  ZpMatrix A = template_matrix(t, equations);
  RrefResult r = rref(A, F, exec);
  std::unordered_map<std::size_t, std::size_t> pivot_row;
  for (std::size_t i = 0; i < r.rank(); ++i) pivot_row.emplace(r.pivot_cols[i], i);

  std::unordered_map<Monomial, std::size_t, MonomialHash> basis_index;
  for (std::size_t j = 0; j < K; ++j) basis_index.emplace(t.basis[j], j);
  const std::size_t r_start = t.excess.size();
  const std::size_t b_start = r_start + t.reducible.size();

  ZpSquare M(K, std::vector<FieldElem>(K, F.zero()));
  for (std::size_t i = 0; i < K; ++i) {
    Monomial am = t.basis[i] * Monomial::variable(t.basis[i].nvars(), t.action_var);
    auto in_b = basis_index.find(am);
    if (in_b != basis_index.end()) {
      M[i][in_b->second] = F.one();
      continue;
    }
    auto rit = std::find(t.reducible.begin(), t.reducible.end(), am);
    std::size_t col = r_start + static_cast<std::size_t>(rit - t.reducible.begin());
    auto pr = pivot_row.find(col);
    if (rit == t.reducible.end() || pr == pivot_row.end()) {
      throw RankDeficiencyError("reducible monomial has no pivot; degenerate instance");
    }
    for (std::size_t c = 0; c < t.basis_columns.size(); ++c) {
      FieldElem v{A(pr->second, b_start + c)};
      M[i][basis_index.at(t.basis_columns[c])] = F.neg(v);
    }
  }
  return M;
}

ZpSquare action_matrix_oracle(const std::vector<Monomial>& B, std::size_t alpha,
                              QuotientCoordinates& qc) {
  std::vector<CoordinateVector> base;
  std::vector<CoordinateVector> shifted;
  for (const Monomial& b : B) {
    base.push_back(qc.coords(b));
    shifted.push_back(qc.coords(b * Monomial::variable(b.nvars(), alpha)));
  }
  return solve_left(base, shifted, qc.field());
}

EliminationTemplate best_template(const std::vector<ZpPoly>& equations,
                                  const std::vector<Monomial>& B,
                                  const TemplateOptions& options) {
  if (B.empty()) throw Error("empty basis");
  std::optional<EliminationTemplate> best;
  for (std::size_t a = 0; a < B.front().nvars(); ++a) {
    try {
      EliminationTemplate t = prune(build_template(equations, B, a, options), equations);
      if (!best || std::pair(t.n_rows(), t.n_cols()) <
                       std::pair(best->n_rows(), best->n_cols())) {
        best = std::move(t);
      }
    } catch (const TemplateCapError&) {
    }
  }
  if (!best) throw TemplateCapError("every action variable hit the degree cap");
  return *best;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

Monomial parse_monomial(std::string_view text,
                        std::span<const std::string> var_names) {
  Monomial m(var_names.size());
  if (text == "1") return m;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('*', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view factor = text.substr(pos, end - pos);
    std::size_t caret = factor.find('^');
    std::string_view name = factor.substr(0, caret);
    int exp = 1;
    if (caret != std::string_view::npos) {
      std::string_view e = factor.substr(caret + 1);
      auto [p, ec] = std::from_chars(e.data(), e.data() + e.size(), exp);
      if (ec != std::errc() || p != e.data() + e.size() || exp <= 0) {
        throw ParseError(0, 0, "bad exponent in monomial '" + std::string(text) + "'");
      }
    }
    auto it = std::find(var_names.begin(), var_names.end(), name);
    if (it == var_names.end()) {
      throw ParseError(0, 0, "unknown variable '" + std::string(name) + "'");
    }
    std::size_t v = static_cast<std::size_t>(it - var_names.begin());
    m.set(v, m[v] + exp);
    pos = end + 1;
  }
  return m;
}

std::string write_template(const EliminationTemplate& t,
                           std::span<const std::string> var_names) {
  std::ostringstream os;
  os << "rows " << t.n_rows() << " cols " << t.n_cols() << " basis "
     << t.basis.size() << " action " << var_names[t.action_var] << "\n";
  os << "vars";
  for (const auto& v : var_names) os << ' ' << v;
  os << "\n";
  for (const auto& r : t.rows) {
    os << "eq=" << r.eq << " mul=" << format_monomial(r.mul, var_names) << "\n";
  }
  auto block = [&](const std::vector<Monomial>& ms) {
    for (const auto& m : ms) os << ' ' << format_monomial(m, var_names);
  };
  os << "columns";
  block(t.excess);
  os << " |";
  block(t.reducible);
  os << " |";
  block(t.basis_columns);
  os << "\nbasis";
  block(t.basis);
  os << "\n";
  return os.str();
}

EliminationTemplate read_template(std::string_view text,
                                  std::vector<std::string>* var_names_out) {
  std::vector<std::string> lines;
  {
    std::string s(text);
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      lines.push_back(line);
    }
  }
  auto tokens = [](const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
  };
  auto to_size = [](const std::string& s, std::size_t line) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw ParseError(line, 0, "expected a nonnegative integer, got '" + s + "'");
    }
    return v;
  };
  if (lines.size() < 4) throw ParseError(1, 0, "truncated template file");
  auto head = tokens(lines[0]);
  if (head.size() != 8 || head[0] != "rows" || head[2] != "cols" ||
      head[4] != "basis" || head[6] != "action") {
    throw ParseError(1, 0, "expected 'rows R cols C basis K action <var>'");
  }
  const std::size_t nrows = to_size(head[1], 1);
  const std::size_t ncols = to_size(head[3], 1);
  const std::size_t nbasis = to_size(head[5], 1);
  auto vars = tokens(lines[1]);
  if (vars.empty() || vars[0] != "vars") throw ParseError(2, 0, "expected 'vars ...'");
  vars.erase(vars.begin());
  auto reparse = [&](std::string_view s, std::size_t line) {
    try {
      return parse_monomial(s, vars);
    } catch (const ParseError& e) {
      throw ParseError(line, 0, e.what());
    }
  };
  EliminationTemplate t;
  auto act = std::find(vars.begin(), vars.end(), head[7]);
  if (act == vars.end()) throw ParseError(1, 0, "unknown action variable");
  t.action_var = static_cast<std::size_t>(act - vars.begin());
  if (lines.size() != nrows + 4) throw ParseError(lines.size(), 0, "row count mismatch");
  for (std::size_t i = 0; i < nrows; ++i) {
    auto tok = tokens(lines[2 + i]);
    if (tok.size() != 2 || tok[0].rfind("eq=", 0) != 0 || tok[1].rfind("mul=", 0) != 0) {
      throw ParseError(3 + i, 0, "expected 'eq=<i> mul=<monomial>'");
    }
    t.rows.push_back({to_size(tok[0].substr(3), 3 + i), reparse(tok[1].substr(4), 3 + i)});
  }
  auto cols = tokens(lines[2 + nrows]);
  if (cols.empty() || cols[0] != "columns") {
    throw ParseError(3 + nrows, 0, "expected 'columns ...'");
  }
  int block = 0;
  for (std::size_t i = 1; i < cols.size(); ++i) {
    if (cols[i] == "|") {
      ++block;
      continue;
    }
    Monomial m = reparse(cols[i], 3 + nrows);
    (block == 0 ? t.excess : block == 1 ? t.reducible : t.basis_columns).push_back(m);
  }
  if (block != 2) throw ParseError(3 + nrows, 0, "columns need three blocks");
  if (t.n_cols() != ncols) throw ParseError(3 + nrows, 0, "column count mismatch");
  auto basis = tokens(lines[3 + nrows]);
  if (basis.empty() || basis[0] != "basis") throw ParseError(4 + nrows, 0, "expected 'basis ...'");
  for (std::size_t i = 1; i < basis.size(); ++i) t.basis.push_back(reparse(basis[i], 4 + nrows));
  if (t.basis.size() != nbasis) throw ParseError(4 + nrows, 0, "basis size mismatch");
  if (var_names_out) *var_names_out = vars;
  return t;
}

}  // namespace amsolve
