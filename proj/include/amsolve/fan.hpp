#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amsolve/groebner.hpp"

namespace amsolve {

struct FanEntry {
  ReducedGroebnerBasis gb;
  std::string signature;
  /// First order (in trial order) that produced this basis.
  MonomialOrder witness = MonomialOrder::grevlex(0);
};

/// Distinct reduced Groebner bases found by sampling monomial orders.
struct FanEnumeration {
  /// Sorted by signature; no two entries share a leading-monomial set.
  std::vector<FanEntry> bases;
  std::size_t sample_budget = 0;
  std::size_t named_orders = 0;
  /// Orders whose Buchberger run hit the budget and were skipped.
  std::size_t aborted_orders = 0;
  /// True iff the random phase found nothing new in its final quarter.
  bool exhausted = false;
};

struct FanOptions {
  /// Named grevlex/lex orders for every variable permutation up to this many
  /// variables.
  std::size_t max_permutation_vars = 6;
  /// Applied to every order. The E+f-lambda ideal swells past the term cap
  /// under most lex orders.
  BuchbergerOptions buchberger{.max_pair_reductions = 100000, .max_basis_terms = 100000};
};

/// Leading monomials sorted descending in lex and joined by ", ", for
/// example "x^2, x*y, y^2".
std::string basis_signature(const ReducedGroebnerBasis& gb,
                            std::span<const std::string> var_names);

/// The orders tried, in trial order: grevlex then lex for every variable
/// permutation (when nvars <= max_permutation_vars), then `budget` weight
/// vectors with entries round(2^u) - 1, u uniform in [0, log2(4097)].
std::vector<MonomialOrder> fan_orders(std::size_t nvars, std::size_t budget,
                                      std::uint64_t seed,
                                      const FanOptions& options = {});

/// Throws PositiveDimensionalError when the grevlex basis has an infinite
/// staircase. Orders after the first that exceed the Buchberger budget are
/// skipped and counted; the first (grevlex) order must succeed.
/// Deterministic in (gens, budget, seed) regardless of threading.
FanEnumeration enumerate_reduced_gbs(const std::vector<ZpPoly>& gens,
                                     std::span<const std::string> var_names,
                                     std::size_t budget, std::uint64_t seed,
                                     const FanOptions& options = {});

}  // namespace amsolve
