#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "amsolve/groebner.hpp"
#include "amsolve/linalg_zp.hpp"

namespace amsolve {

using CoordinateVector = std::vector<FieldElem>;

/// Coordinates of monomials in C[X]/I with respect to the standard monomials
/// of a zero-dimensional reduced Groebner basis. Results are memoized, so an
/// instance must not be shared between threads.
class QuotientCoordinates {
 public:
  /// Throws PositiveDimensionalError when gb has no finite staircase.
  explicit QuotientCoordinates(ReducedGroebnerBasis gb);

  const ReducedGroebnerBasis& gb() const noexcept { return gb_; }
  const std::vector<Monomial>& reference() const noexcept { return *gb_.standard; }
  std::size_t dim() const noexcept { return gb_.standard->size(); }
  const PrimeField& field() const noexcept { return field_; }

  /// c with m = sum_k c_k s_k mod I, s the reference standard monomials.
  const CoordinateVector& coords(const Monomial& m);

  /// Coordinates of an arbitrary polynomial (linear in the terms).
  CoordinateVector coords(const ZpPoly& f);

 private:
  ReducedGroebnerBasis gb_;
  PrimeField field_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
  /// mult_[v][k]: coordinates of x_v * s_k.
  std::vector<std::vector<CoordinateVector>> mult_;
  std::unordered_map<Monomial, CoordinateVector, MonomialHash> cache_;
};

/// The sampling pool M and the equation monomials E.
struct CandidateSet {
  /// Sorted in listing order.
  std::vector<Monomial> monomials;
  /// from_equations[i] iff monomials[i] occurs in some equation.
  std::vector<bool> from_equations;

  bool contains(const Monomial& m) const;
  bool in_equations(const Monomial& m) const;
};

struct SamplerConfig {
  /// Direction-minimization mask; empty means "draw uniformly".
  std::vector<int> omega;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  /// Resampling attempts for bases that are not extraction-complete.
  int max_attempts = 20;
};

/// K monomials independent in the quotient ring.
struct QuotientBasis {
  std::vector<Monomial> monomials;
  /// Variable that guided sampling (or -1 for a standard-monomial basis).
  int action_var = -1;
  /// e.g. "grevlex(x>y)" or "sampled(seed=3,omega=01)".
  std::string provenance;
  /// Some variable admits full solution readout (see extraction_complete).
  bool extractable = true;
};

/// Full rank of the coordinate vectors, exact over Z_p.
bool is_independent(const std::vector<Monomial>& mons, QuotientCoordinates& qc);

/// Grows the equation monomials until their coordinates span the quotient:
/// round d multiplies the pool by the degree-d monomials occurring in the
/// equations (cycling through the degrees that occur); a round that adds no
/// rank also adds the bare variables; two stalled rounds in a row throw
/// SpanFailureError.
CandidateSet build_candidate_set(const std::vector<ZpPoly>& equations,
                                 QuotientCoordinates& qc);

/// All monomials of total degree <= the largest degree in M.
CandidateSet degree_closure(const CandidateSet& M, std::size_t nvars);

/// Sampling weight I(m in E) + I(alpha m in E or B) + 2^-<omega, m> + eps.
double weight_w(const Monomial& m, const CandidateSet& E,
                const std::vector<Monomial>& B, std::size_t alpha,
                const SamplerConfig& cfg);

/// Members of M not in B at exponent distance one (one coordinate off by
/// one) from some member of B.
std::vector<Monomial> neighbors(const std::vector<Monomial>& B,
                                const std::vector<Monomial>& M);

/// Every variable other than alpha has an edge b_j = x_i b_k inside B.
bool extraction_complete(const std::vector<Monomial>& B, std::size_t alpha);

/// The first variable for which B is extraction-complete.
std::optional<std::size_t> extraction_variable(const std::vector<Monomial>& B);

/// Heuristic sampler. omega and alpha are drawn from the seed unless
/// cfg.omega is set. Bases not extraction-complete for any variable are
/// redrawn up to cfg.max_attempts times; the last draw is then returned with
/// extractable = false.
QuotientBasis sample_basis(const CandidateSet& M, QuotientCoordinates& qc,
                           const SamplerConfig& cfg);

enum class UniformMode { kFromM, kDegreeClosure };

/// The same loop with equal weights; kDegreeClosure samples from
/// degree_closure(M).
QuotientBasis sample_basis_uniform(const CandidateSet& M, QuotientCoordinates& qc,
                                   std::uint64_t seed, UniformMode mode,
                                   int max_attempts = 20);

/// Standard monomials of gb as a basis, tagged with its order.
QuotientBasis standard_basis(const ReducedGroebnerBasis& gb,
                             std::span<const std::string> var_names);

/// Sorted exponent listing, e.g. "[0,0] [1,0] [0,1]".
std::string format_exponents(const std::vector<Monomial>& B);

}  // namespace amsolve
