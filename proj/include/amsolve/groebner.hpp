#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "amsolve/poly.hpp"

namespace amsolve {

/// Reduced Groebner basis of an ideal of Z_p[X] for one monomial order.
struct ReducedGroebnerBasis {
  MonomialOrder order = MonomialOrder::grevlex(0);
  /// Monic, fully interreduced, sorted ascending by leading monomial.
  std::vector<ZpPoly> generators;
  /// leading_monomials[i] is the leading monomial of generators[i].
  std::vector<Monomial> leading_monomials;
  /// Present iff the ideal is zero-dimensional; in listing order.
  std::optional<std::vector<Monomial>> standard;

  std::size_t nvars() const noexcept { return order.nvars(); }
};

struct BuchbergerOptions {
  /// Upper bound on S-pair reductions before BudgetExceededError.
  std::size_t max_pair_reductions = 100000;
  /// Upper bound on the summed term count of the unreduced basis; 0 means
  /// unbounded. Catches orders whose intermediate polynomials swell.
  std::size_t max_basis_terms = 0;
};

/// Multivariate division remainder of f by gens under `order`: no monomial of
/// the result is divisible by a leading monomial of gens.
ZpPoly normal_form(const ZpPoly& f, const std::vector<ZpPoly>& gens,
                   const MonomialOrder& order);

ZpPoly s_polynomial(const ZpPoly& f, const ZpPoly& g,
                    const MonomialOrder& order);

/// Buchberger's algorithm with normal pair selection (smallest lcm first) and
/// the coprime-leading-monomial criterion.
std::vector<ZpPoly> buchberger(const std::vector<ZpPoly>& gens,
                               const MonomialOrder& order,
                               const BuchbergerOptions& options = {});

/// Minimal, monic, interreduced basis from any Groebner basis G. Standard
/// monomials are filled in when the ideal is zero-dimensional.
ReducedGroebnerBasis reduce_basis(const std::vector<ZpPoly>& G,
                                  const MonomialOrder& order);

/// buchberger followed by reduce_basis.
ReducedGroebnerBasis reduced_groebner_basis(
    const std::vector<ZpPoly>& gens, const MonomialOrder& order,
    const BuchbergerOptions& options = {});

/// Staircase complement of the leading monomials. Throws
/// PositiveDimensionalError when it is infinite.
std::vector<Monomial> standard_monomials(const ReducedGroebnerBasis& gb);

/// Number of standard monomials (solutions counted with multiplicity).
std::size_t quotient_dimension(const ReducedGroebnerBasis& gb);

/// Normal form with respect to a reduced basis.
inline ZpPoly normal_form(const ZpPoly& f, const ReducedGroebnerBasis& gb) {
  return normal_form(f, gb.generators, gb.order);
}

}  // namespace amsolve
