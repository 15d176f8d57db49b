#include "amsolve/groebner.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace amsolve {

namespace {

struct OTerm {
  Monomial m;
  FieldElem c;
};

/// Term list sorted descending by a working order.
using OPoly = std::vector<OTerm>;

OPoly to_ordered(const ZpPoly& f, const MonomialOrder& order) {
  OPoly out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({t.monomial, t.coeff});
  std::sort(out.begin(), out.end(), [&](const OTerm& a, const OTerm& b) {
    return order.compare(a.m, b.m) > 0;
  });
  return out;
}

ZpPoly from_ordered(const OPoly& f, const PrimeField& F, std::size_t nvars) {
  std::vector<ZpPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f) terms.push_back({t.m, t.c});
  return ZpPoly::from_terms(F, nvars, std::move(terms));
}

/// h - c * mono * g, all lists sorted descending by `order`.
OPoly sub_scaled(const OPoly& h, FieldElem c, const Monomial& mono,
                 const OPoly& g, const MonomialOrder& order,
                 const PrimeField& F) {
  OPoly out;
  out.reserve(h.size() + g.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < h.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(h[i++]);
      continue;
    }
    Monomial gm = g[j].m * mono;
    std::strong_ordering cmp = i == h.size() ? std::strong_ordering::less
                                             : order.compare(h[i].m, gm);
    if (cmp > 0) {
      out.push_back(h[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, F.neg(F.mul(c, g[j].c))});
      ++j;
    } else {
      FieldElem v = F.sub(h[i].c, F.mul(c, g[j].c));
      if (!F.is_zero(v)) out.push_back({gm, v});
      ++i;
      ++j;
    }
  }
  return out;
}

void make_monic(OPoly& f, const PrimeField& F) {
  if (f.empty()) return;
  FieldElem inv = F.inverse(f.front().c);
  for (auto& t : f) t.c = F.mul(t.c, inv);
}

struct Reducer {
  const MonomialOrder& order;
  const PrimeField& F;
  std::vector<const OPoly*> gens;

  const OPoly* find_divisor(const Monomial& m) const {
    for (const OPoly* g : gens) {
      if (!g->empty() && g->front().m.divides(m)) return g;
    }
    return nullptr;
  }

  /// Full reduction: every remaining term is irreducible.
  OPoly reduce(OPoly h) const {
    OPoly rem;
    while (!h.empty()) {
      const OPoly* g = find_divisor(h.front().m);
      if (g) {
        FieldElem c = F.div(h.front().c, g->front().c);
        Monomial q = h.front().m / g->front().m;
        h = sub_scaled(h, c, q, *g, order, F);
      } else {
        rem.push_back(h.front());
        h.erase(h.begin());
      }
    }
    return rem;
  }
};

OPoly spoly(const OPoly& f, const OPoly& g, const MonomialOrder& order,
            const PrimeField& F) {
  Monomial l = lcm(f.front().m, g.front().m);
  // (l/lm f) * f / lc f  -  (l/lm g) * g / lc g
  OPoly a;
  a.reserve(f.size());
  Monomial qf = l / f.front().m;
  FieldElem inv_f = F.inverse(f.front().c);
  for (const auto& t : f) a.push_back({t.m * qf, F.mul(t.c, inv_f)});
  FieldElem inv_g = F.inverse(g.front().c);
  return sub_scaled(a, inv_g, l / g.front().m, g, order, F);
}

void check_inputs(const std::vector<ZpPoly>& gens, const MonomialOrder& order) {
  if (gens.empty()) throw Error("empty generator list");
  for (const auto& g : gens) {
    if (g.nvars() != order.nvars()) {
      throw DimensionMismatchError("generator and order dimensions differ");
    }
    if (!(g.field() == gens.front().field())) {
      throw DimensionMismatchError("generators from different fields");
    }
  }
}

}  // namespace

ZpPoly normal_form(const ZpPoly& f, const std::vector<ZpPoly>& gens,
                   const MonomialOrder& order) {
  std::vector<OPoly> og;
  og.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    og.push_back(to_ordered(g, order));
  }
  Reducer r{order, f.field(), {}};
  for (const auto& g : og) r.gens.push_back(&g);
  return from_ordered(r.reduce(to_ordered(f, order)), f.field(), f.nvars());
}

ZpPoly s_polynomial(const ZpPoly& f, const ZpPoly& g,
                    const MonomialOrder& order) {
  if (f.is_zero() || g.is_zero()) {
    throw ZeroPolynomialError("S-polynomial of a zero polynomial");
  }
  return from_ordered(
      spoly(to_ordered(f, order), to_ordered(g, order), order, f.field()),
      f.field(), f.nvars());
}

std::vector<ZpPoly> buchberger(const std::vector<ZpPoly>& gens,
                               const MonomialOrder& order,
                               const BuchbergerOptions& options) {
  check_inputs(gens, order);
  const PrimeField F = gens.front().field();
  const std::size_t nvars = order.nvars();

  // Stable storage: deque keeps pointers valid while the basis grows.
  std::deque<OPoly> basis;
  std::vector<bool> active;
  Reducer red{order, F, {}};
  struct Pair {
    std::size_t i;
    std::size_t j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  std::size_t basis_terms = 0;

  // Gebauer-Moeller update.
  auto add = [&](OPoly p) {
    make_monic(p, F);
    basis_terms += p.size();
    if (options.max_basis_terms && basis_terms > options.max_basis_terms) {
      throw BudgetExceededError("Buchberger basis exceeded " +
                                std::to_string(options.max_basis_terms) + " terms");
    }
    const std::size_t h = basis.size();
    basis.push_back(std::move(p));
    active.push_back(true);
    const Monomial lh = basis.back().front().m;

    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> cands;
    for (std::size_t g = 0; g < h; ++g) {
      if (!active[g]) continue;
      const Monomial& lg = basis[g].front().m;
      cands.push_back({g, lcm(lg, lh), coprime(lg, lh)});
    }
    // Chain criterion on new pairs: keep (g,h) unless another new pair's lcm
    // divides it (equal lcms keep the first coprime-or-earliest witness).
    std::vector<Cand> kept;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      bool drop = false;
      if (!cands[a].coprime) {
        for (std::size_t b = 0; b < cands.size() && !drop; ++b) {
          if (b == a || !cands[b].lcm.divides(cands[a].lcm)) continue;
          if (cands[b].lcm == cands[a].lcm) {
            // Among equal lcms keep one representative, preferring a
            // coprime one (whose pair is dropped below).
            if (cands[b].coprime || b < a) drop = true;
          } else {
            drop = true;
          }
        }
      }
      if (!drop) kept.push_back(cands[a]);
    }
    // Old pairs made redundant by the new element.
    std::erase_if(pairs, [&](const Pair& q) {
      if (!lh.divides(q.lcm)) return false;
      Monomial li = lcm(basis[q.i].front().m, lh);
      Monomial lj = lcm(basis[q.j].front().m, lh);
      return li != q.lcm && lj != q.lcm;
    });
    for (const auto& c : kept) {
      // Product criterion: coprime leading monomials reduce to zero.
      if (c.coprime) continue;
      pairs.push_back({c.g, h, c.lcm});
    }
    for (std::size_t g = 0; g < h; ++g) {
      if (active[g] && lh.divides(basis[g].front().m)) active[g] = false;
    }
    red.gens.push_back(&basis.back());
  };

  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    OPoly o = red.reduce(to_ordered(g, order));
    if (!o.empty()) add(std::move(o));
  }

  std::size_t reductions = 0;
  while (!pairs.empty()) {
    auto best = std::min_element(
        pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
          auto c = order.compare(a.lcm, b.lcm);
          if (c != 0) return c < 0;
          return std::tie(a.j, a.i) < std::tie(b.j, b.i);
        });
    Pair p = *best;
    pairs.erase(best);

    if (++reductions > options.max_pair_reductions) {
      throw BudgetExceededError("Buchberger exceeded " +
                                std::to_string(options.max_pair_reductions) +
                                " pair reductions");
    }
    OPoly s = spoly(basis[p.i], basis[p.j], order, F);
    OPoly r = red.reduce(std::move(s));
    if (!r.empty()) add(std::move(r));
  }

  std::vector<ZpPoly> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(from_ordered(b, F, nvars));
  return out;
}

ReducedGroebnerBasis reduce_basis(const std::vector<ZpPoly>& G,
                                  const MonomialOrder& order) {
  check_inputs(G, order);
  const PrimeField F = G.front().field();
  const std::size_t nvars = order.nvars();

  std::vector<OPoly> polys;
  for (const auto& g : G) {
    if (g.is_zero()) continue;
    OPoly o = to_ordered(g, order);
    make_monic(o, F);
    polys.push_back(std::move(o));
  }
  std::sort(polys.begin(), polys.end(), [&](const OPoly& a, const OPoly& b) {
    return order.compare(a.front().m, b.front().m) < 0;
  });
  // Minimalize: drop any element whose leading monomial is a multiple of an
  // earlier (smaller or equal) one.
  std::vector<OPoly> minimal;
  for (auto& p : polys) {
    bool redundant = false;
    for (const auto& q : minimal) {
      if (q.front().m.divides(p.front().m)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(std::move(p));
  }
  // Interreduce tails.
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    Reducer red{order, F, {}};
    for (std::size_t l = 0; l < minimal.size(); ++l) {
      if (l != k) red.gens.push_back(&minimal[l]);
    }
    OPoly tail(minimal[k].begin() + 1, minimal[k].end());
    OPoly reduced = red.reduce(std::move(tail));
    reduced.insert(reduced.begin(), minimal[k].front());
    minimal[k] = std::move(reduced);
  }

  ReducedGroebnerBasis gb;
  gb.order = order;
  for (const auto& p : minimal) {
    gb.generators.push_back(from_ordered(p, F, nvars));
    gb.leading_monomials.push_back(p.front().m);
  }
  try {
    gb.standard = standard_monomials(gb);
  } catch (const PositiveDimensionalError&) {
    gb.standard.reset();
  }
  return gb;
}

ReducedGroebnerBasis reduced_groebner_basis(const std::vector<ZpPoly>& gens,
                                            const MonomialOrder& order,
                                            const BuchbergerOptions& options) {
  return reduce_basis(buchberger(gens, order, options), order);
}

std::vector<Monomial> standard_monomials(const ReducedGroebnerBasis& gb) {
  const std::size_t n = gb.nvars();
  for (const auto& lm : gb.leading_monomials) {
    if (lm.is_one()) return {};
  }
  // Zero-dimensional iff every variable has a pure power among the leading
  // monomials.
  for (std::size_t v = 0; v < n; ++v) {
    bool found = false;
    for (const auto& lm : gb.leading_monomials) {
      if (lm[v] == 0) continue;
      bool pure = true;
      for (std::size_t u = 0; u < n; ++u) {
        if (u != v && lm[u] != 0) pure = false;
      }
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw PositiveDimensionalError(
          "ideal is not zero-dimensional: staircase unbounded in variable " +
          std::to_string(v));
    }
  }
  auto standard = [&](const Monomial& m) {
    for (const auto& lm : gb.leading_monomials) {
      if (lm.divides(m)) return false;
    }
    return true;
  };
  std::vector<Monomial> out;
  std::unordered_set<Monomial, MonomialHash> seen;
  std::deque<Monomial> queue;
  Monomial one(n);
  if (standard(one)) {
    queue.push_back(one);
    seen.insert(one);
  }
  // Standard monomials form an order ideal, so a walk up from 1 finds all.
  while (!queue.empty()) {
    Monomial m = queue.front();
    queue.pop_front();
    out.push_back(m);
    for (std::size_t v = 0; v < n; ++v) {
      Monomial next = m * Monomial::variable(n, v);
      if (seen.insert(next).second && standard(next)) queue.push_back(next);
    }
  }
  sort_for_listing(out);
  return out;
}

std::size_t quotient_dimension(const ReducedGroebnerBasis& gb) {
  if (gb.standard) return gb.standard->size();
  return standard_monomials(gb).size();
}

}  // namespace amsolve
