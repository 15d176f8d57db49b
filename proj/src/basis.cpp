#include "amsolve/basis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "amsolve/rng.hpp"

namespace amsolve {

QuotientCoordinates::QuotientCoordinates(ReducedGroebnerBasis gb)
    : gb_(std::move(gb)),
      field_(gb_.generators.empty() ? PrimeField() : gb_.generators.front().field()) {
  if (!gb_.standard) gb_.standard = standard_monomials(gb_);
  const auto& S = *gb_.standard;
  for (std::size_t k = 0; k < S.size(); ++k) index_.emplace(S[k], k);
  const std::size_t n = gb_.nvars();
  mult_.assign(n, {});
  for (std::size_t v = 0; v < n; ++v) {
    mult_[v].reserve(S.size());
    for (const Monomial& s : S) {
      Monomial m = s * Monomial::variable(n, v);
      CoordinateVector c(S.size(), field_.zero());
      auto it = index_.find(m);
      if (it != index_.end()) {
        c[it->second] = field_.one();
      } else {
        ZpPoly nf = normal_form(
            ZpPoly::from_terms(field_, n, {{m, field_.one()}}), gb_);
        for (const auto& t : nf.terms()) c[index_.at(t.monomial)] = t.coeff;
      }
      mult_[v].push_back(std::move(c));
    }
  }
}

const CoordinateVector& QuotientCoordinates::coords(const Monomial& m) {
  auto hit = cache_.find(m);
  if (hit != cache_.end()) return hit->second;
  const std::size_t K = dim();
  CoordinateVector c(K, field_.zero());
  auto it = index_.find(m);
  if (it != index_.end()) {
    c[it->second] = field_.one();
  } else {
    std::size_t v = 0;
    while (m[v] == 0) ++v;
    // x_v * m' with coords(m') known: combine the columns of x_v.
    const CoordinateVector& prev = coords(m / Monomial::variable(m.nvars(), v));
    for (std::size_t k = 0; k < K; ++k) {
      if (field_.is_zero(prev[k])) continue;
      const CoordinateVector& col = mult_[v][k];
      for (std::size_t j = 0; j < K; ++j) {
        c[j] = field_.add(c[j], field_.mul(prev[k], col[j]));
      }
    }
  }
  return cache_.emplace(m, std::move(c)).first->second;
}

CoordinateVector QuotientCoordinates::coords(const ZpPoly& f) {
  CoordinateVector out(dim(), field_.zero());
  for (const auto& t : f.terms()) {
    const CoordinateVector& c = coords(t.monomial);
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = field_.add(out[j], field_.mul(t.coeff, c[j]));
    }
  }
  return out;
}

bool CandidateSet::contains(const Monomial& m) const {
  return std::binary_search(monomials.begin(), monomials.end(), m, listing_less);
}

bool CandidateSet::in_equations(const Monomial& m) const {
  auto it = std::lower_bound(monomials.begin(), monomials.end(), m, listing_less);
  return it != monomials.end() && *it == m &&
         from_equations[static_cast<std::size_t>(it - monomials.begin())];
}

bool is_independent(const std::vector<Monomial>& mons, QuotientCoordinates& qc) {
  if (mons.size() > qc.dim()) return false;
  IncrementalEchelon ech(qc.field(), qc.dim());
  for (const Monomial& m : mons) {
    if (!ech.insert(qc.coords(m))) return false;
  }
  return true;
}

namespace {

std::size_t span_rank(const std::set<Monomial, decltype(&listing_less)>& pool,
                      QuotientCoordinates& qc) {
  IncrementalEchelon ech(qc.field(), qc.dim());
  for (const Monomial& m : pool) {
    ech.insert(qc.coords(m));
    if (ech.rank() == qc.dim()) break;
  }
  return ech.rank();
}

constexpr std::size_t kMaxPool = 50000;

}  // namespace

CandidateSet build_candidate_set(const std::vector<ZpPoly>& equations,
                                 QuotientCoordinates& qc) {
  if (equations.empty()) throw Error("empty system");
  const std::size_t n = equations.front().nvars();
  std::set<Monomial, decltype(&listing_less)> E(&listing_less);
  for (const auto& f : equations) {
    for (const auto& t : f.terms()) E.insert(t.monomial);
  }
  // Nonconstant equation monomials grouped by degree.
  std::vector<std::vector<Monomial>> by_degree;
  for (const Monomial& m : E) {
    int d = m.degree();
    if (d == 0) continue;
    if (static_cast<int>(by_degree.size()) <= d) by_degree.resize(d + 1);
    by_degree[d].push_back(m);
  }
  std::vector<std::size_t> degrees;
  for (std::size_t d = 1; d < by_degree.size(); ++d) {
    if (!by_degree[d].empty()) degrees.push_back(d);
  }

  auto M = E;
  std::size_t rank = span_rank(M, qc);
  int stalled = 0;
  std::size_t round = 0;
  while (rank < qc.dim()) {
    if (degrees.empty()) throw SpanFailureError("equations have no nonconstant monomials");
    const auto& mult = by_degree[degrees[round % degrees.size()]];
    ++round;
    std::vector<Monomial> added;
    for (const Monomial& m : M) {
      for (const Monomial& d : mult) added.push_back(m * d);
    }
    M.insert(added.begin(), added.end());
    std::size_t r = span_rank(M, qc);
    if (r == rank) {
      for (std::size_t v = 0; v < n; ++v) M.insert(Monomial::variable(n, v));
      r = span_rank(M, qc);
    }
    stalled = r == rank ? stalled + 1 : 0;
    rank = r;
    if (stalled >= 2 || M.size() > kMaxPool) {
      throw SpanFailureError("candidate monomials do not span the quotient ring");
    }
  }
  CandidateSet out;
  out.monomials.assign(M.begin(), M.end());
  for (const Monomial& m : out.monomials) out.from_equations.push_back(E.count(m) > 0);
  return out;
}

CandidateSet degree_closure(const CandidateSet& M, std::size_t nvars) {
  int top = 0;
  for (const Monomial& m : M.monomials) top = std::max(top, m.degree());
  CandidateSet out;
  out.monomials = monomials_up_to_degree(nvars, top);
  sort_for_listing(out.monomials);
  for (const Monomial& m : out.monomials) out.from_equations.push_back(M.in_equations(m));
  return out;
}

double weight_w(const Monomial& m, const CandidateSet& E,
                const std::vector<Monomial>& B, std::size_t alpha,
                const SamplerConfig& cfg) {
  double w = cfg.epsilon;
  if (E.in_equations(m)) w += 1.0;
  Monomial am = m * Monomial::variable(m.nvars(), alpha);
  if (E.in_equations(am) || std::find(B.begin(), B.end(), am) != B.end()) w += 1.0;
  int wdeg = 0;
  for (std::size_t i = 0; i < cfg.omega.size() && i < m.nvars(); ++i) {
    wdeg += cfg.omega[i] * m[i];
  }
  w += std::exp2(-static_cast<double>(wdeg));
  return w;
}

namespace {

bool adjacent(const Monomial& a, const Monomial& b) {
  int dist = 0;
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    dist += std::abs(a[i] - b[i]);
    if (dist > 1) return false;
  }
  return dist == 1;
}

}  // namespace

std::vector<Monomial> neighbors(const std::vector<Monomial>& B,
                                const std::vector<Monomial>& M) {
  std::vector<Monomial> out;
  for (const Monomial& m : M) {
    if (std::find(B.begin(), B.end(), m) != B.end()) continue;
    for (const Monomial& b : B) {
      if (adjacent(m, b)) {
        out.push_back(m);
        break;
      }
    }
  }
  return out;
}

bool extraction_complete(const std::vector<Monomial>& B, std::size_t alpha) {
  if (B.empty()) return false;
  const std::size_t n = B.front().nvars();
  std::unordered_set<Monomial, MonomialHash> members(B.begin(), B.end());
  for (std::size_t v = 0; v < n; ++v) {
    if (v == alpha) continue;
    Monomial xv = Monomial::variable(n, v);
    bool found = false;
    for (const Monomial& b : B) {
      if (members.count(b * xv)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::optional<std::size_t> extraction_variable(const std::vector<Monomial>& B) {
  if (B.empty()) return std::nullopt;
  for (std::size_t a = 0; a < B.front().nvars(); ++a) {
    if (extraction_complete(B, a)) return a;
  }
  return std::nullopt;
}

namespace {

/// One pass of the sampling loop. `weight` maps a candidate to its weight
/// given the partial basis.
template <class WeightFn>
std::vector<Monomial> sample_once(const std::vector<Monomial>& pool,
                                  QuotientCoordinates& qc, Rng& rng,
                                  WeightFn weight) {
  const PrimeField& F = qc.field();
  const std::size_t K = qc.dim();
  // Residuals of every pool vector modulo the span of the partial basis;
  // a zero residual means dependent.
  std::vector<CoordinateVector> res;
  res.reserve(pool.size());
  for (const Monomial& m : pool) res.push_back(qc.coords(m));
  auto is_zero = [&](const CoordinateVector& v) {
    return std::all_of(v.begin(), v.end(), [&](FieldElem e) { return F.is_zero(e); });
  };
  std::vector<bool> used(pool.size(), false);
  std::vector<Monomial> B;
  while (B.size() < K) {
    std::vector<Monomial> MB;
    std::vector<std::size_t> MB_index;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i] || is_zero(res[i])) continue;
      MB.push_back(pool[i]);
      MB_index.push_back(i);
    }
    if (MB.empty()) throw SpanFailureError("sampling pool does not span the quotient");
    std::vector<Monomial> cand = neighbors(B, MB);
    if (cand.empty()) cand = MB;
    std::vector<double> w;
    w.reserve(cand.size());
    for (const Monomial& m : cand) w.push_back(weight(m, B));
    const Monomial pick = cand[rng.weighted_index(w)];
    std::size_t pi = MB_index[static_cast<std::size_t>(
        std::find(MB.begin(), MB.end(), pick) - MB.begin())];
    used[pi] = true;
    B.push_back(pick);
    // Normalize the chosen residual and eliminate its pivot everywhere.
    CoordinateVector row = res[pi];
    std::size_t piv = 0;
    while (F.is_zero(row[piv])) ++piv;
    FieldElem inv = F.inverse(row[piv]);
    for (auto& e : row) e = F.mul(e, inv);
    for (auto& r : res) {
      FieldElem a = r[piv];
      if (F.is_zero(a)) continue;
      for (std::size_t k = 0; k < K; ++k) {
        if (!F.is_zero(row[k])) r[k] = F.sub(r[k], F.mul(a, row[k]));
      }
    }
  }
  return B;
}

std::string mask_string(const std::vector<int>& omega) {
  std::string s;
  for (int b : omega) s += b ? '1' : '0';
  return s;
}

}  // namespace

QuotientBasis sample_basis(const CandidateSet& M, QuotientCoordinates& qc,
                           const SamplerConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw Error("epsilon must be positive");
  const std::size_t n = qc.gb().nvars();
  Rng rng(cfg.seed);
  QuotientBasis out;
  for (int attempt = 0; attempt < std::max(1, cfg.max_attempts); ++attempt) {
    SamplerConfig c = cfg;
    if (c.omega.empty()) {
      c.omega.resize(n);
      for (auto& b : c.omega) b = static_cast<int>(rng.uniform_int(0, 1));
    }
    std::vector<std::size_t> choices;
    for (std::size_t v = 0; v < n; ++v) {
      if (c.omega[v]) choices.push_back(v);
    }
    if (choices.empty()) {
      for (std::size_t v = 0; v < n; ++v) choices.push_back(v);
    }
    const std::size_t alpha = choices[rng.uniform_int(0, choices.size() - 1)];
    out.monomials = sample_once(M.monomials, qc, rng,
                                [&](const Monomial& m, const std::vector<Monomial>& B) {
                                  return weight_w(m, M, B, alpha, c);
                                });
    out.action_var = static_cast<int>(alpha);
    out.provenance = "heuristic(seed=" + std::to_string(cfg.seed) +
                     ",omega=" + mask_string(c.omega) + ")";
    out.extractable = extraction_variable(out.monomials).has_value();
    if (out.extractable) break;
  }
  return out;
}

QuotientBasis sample_basis_uniform(const CandidateSet& M, QuotientCoordinates& qc,
                                   std::uint64_t seed, UniformMode mode,
                                   int max_attempts) {
  const std::size_t n = qc.gb().nvars();
  CandidateSet pool = mode == UniformMode::kFromM ? M : degree_closure(M, n);
  Rng rng(seed);
  QuotientBasis out;
  for (int attempt = 0; attempt < std::max(1, max_attempts); ++attempt) {
    out.monomials = sample_once(pool.monomials, qc, rng,
                                [](const Monomial&, const std::vector<Monomial>&) {
                                  return 1.0;
                                });
    out.action_var = -1;
    out.provenance = std::string(mode == UniformMode::kFromM ? "uniform" : "uniform-degree") +
                     "(seed=" + std::to_string(seed) + ")";
    out.extractable = extraction_variable(out.monomials).has_value();
    if (out.extractable) break;
  }
  return out;
}

QuotientBasis standard_basis(const ReducedGroebnerBasis& gb,
                             std::span<const std::string> var_names) {
  QuotientBasis out;
  out.monomials = gb.standard ? *gb.standard : standard_monomials(gb);
  out.provenance = gb.order.describe(var_names);
  out.extractable = extraction_variable(out.monomials).has_value();
  return out;
}

std::string format_exponents(const std::vector<Monomial>& B) {
  std::vector<Monomial> sorted = B;
  sort_for_listing(sorted);
  std::string out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) out += ' ';
    out += '[';
    for (std::size_t v = 0; v < sorted[i].nvars(); ++v) {
      if (v) out += ',';
      out += std::to_string(sorted[i][v]);
    }
    out += ']';
  }
  return out;
}

}  // namespace amsolve
