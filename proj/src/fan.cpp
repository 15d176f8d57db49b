#include "amsolve/fan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <optional>

#include "amsolve/rng.hpp"

namespace amsolve {

std::string basis_signature(const ReducedGroebnerBasis& gb,
                            std::span<const std::string> var_names) {
  std::vector<Monomial> lms = gb.leading_monomials;
  std::sort(lms.begin(), lms.end(), [](const Monomial& a, const Monomial& b) {
    return lex_compare(a, b) > 0;
  });
  std::string out;
  for (std::size_t i = 0; i < lms.size(); ++i) {
    if (i) out += ", ";
    out += format_monomial(lms[i], var_names);
  }
  return out;
}

std::vector<MonomialOrder> fan_orders(std::size_t nvars, std::size_t budget,
                                      std::uint64_t seed,
                                      const FanOptions& options) {
  std::vector<MonomialOrder> orders;
  if (nvars <= options.max_permutation_vars) {
    std::vector<std::size_t> perm(nvars);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      orders.push_back(MonomialOrder::grevlex(perm));
      orders.push_back(MonomialOrder::lex(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    orders.push_back(MonomialOrder::grevlex(nvars));
    orders.push_back(MonomialOrder::lex(nvars));
  }
  const double top = std::log2(4097.0);
  for (std::size_t i = 0; i < budget; ++i) {
    // One substream per sample: a larger budget only appends samples.
    Rng rng(Rng::substream(seed, i));
    std::vector<std::int64_t> w(nvars);
    for (auto& v : w) {
      v = std::llround(std::exp2(rng.uniform(0.0, top))) - 1;
      v = std::clamp<std::int64_t>(v, 0, 4096);
    }
    orders.push_back(MonomialOrder::weighted(std::move(w)));
  }
  return orders;
}

FanEnumeration enumerate_reduced_gbs(const std::vector<ZpPoly>& gens,
                                     std::span<const std::string> var_names,
                                     std::size_t budget, std::uint64_t seed,
                                     const FanOptions& options) {
  if (gens.empty()) throw Error("empty generator list");
  const std::size_t nvars = gens.front().nvars();
  std::vector<MonomialOrder> orders = fan_orders(nvars, budget, seed, options);
  const std::size_t named = orders.size() - budget;

  ReducedGroebnerBasis first =
      reduced_groebner_basis(gens, orders.front(), options.buchberger);
  if (!first.standard) {
    throw PositiveDimensionalError("ideal is not zero-dimensional");
  }

  std::vector<std::optional<ReducedGroebnerBasis>> results(orders.size());
  std::vector<std::exception_ptr> errors(orders.size());
  results[0] = std::move(first);
  const auto n = static_cast<std::ptrdiff_t>(orders.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 1; i < n; ++i) {
    try {
      results[i] = reduced_groebner_basis(gens, orders[i], options.buchberger);
    } catch (const BudgetExceededError&) {
      // Skipped order; results[i] stays empty.
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Merge in trial order so the witness is the first order that hit a basis.
  FanEnumeration out;
  out.sample_budget = budget;
  out.named_orders = named;
  std::map<std::string, FanEntry> seen;
  std::size_t last_new = 0;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (!results[i]) {
      ++out.aborted_orders;
      continue;
    }
    std::string sig = basis_signature(*results[i], var_names);
    if (seen.count(sig)) continue;
    last_new = i;
    seen.emplace(sig, FanEntry{std::move(*results[i]), sig, orders[i]});
  }
  if (budget > 0) {
    std::size_t window = (budget + 3) / 4;
    out.exhausted = last_new < orders.size() - window;
  }
  for (auto& [sig, entry] : seen) out.bases.push_back(std::move(entry));
  return out;
}

}  // namespace amsolve
