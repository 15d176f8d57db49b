#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amsolve/basis.hpp"
#include "amsolve/linalg_zp.hpp"

namespace amsolve {

/// One template row: equations[eq] multiplied by `mul`.
struct TemplateRow {
  std::size_t eq = 0;
  Monomial mul;
  friend bool operator==(const TemplateRow&, const TemplateRow&) = default;
};

/// Rows plus the column partition excess | reducible | basis.
struct EliminationTemplate {
  std::vector<TemplateRow> rows;
  /// Each block sorted descending by canonical grevlex. Only monomials that
  /// occur in some row are listed.
  std::vector<Monomial> excess;
  std::vector<Monomial> reducible;
  std::vector<Monomial> basis_columns;
  /// The quotient basis in action-matrix row order.
  std::vector<Monomial> basis;
  std::size_t action_var = 0;

  std::size_t n_rows() const noexcept { return rows.size(); }
  std::size_t n_cols() const noexcept {
    return excess.size() + reducible.size() + basis_columns.size();
  }
  /// excess ++ reducible ++ basis_columns.
  std::vector<Monomial> columns() const;

  friend bool operator==(const EliminationTemplate&,
                         const EliminationTemplate&) = default;
};

/// K x K matrix with alpha b_i = sum_j M[i][j] b_j mod I.
using ZpSquare = std::vector<std::vector<FieldElem>>;

/// {alpha b : b in B} \ B, descending grevlex.
std::vector<Monomial> reducible_set(const std::vector<Monomial>& B,
                                    std::size_t alpha);

/// Every (i, m) with deg(m) + deg(f_i) <= max_deg, by equation index and then
/// ascending grevlex multiplier.
std::vector<TemplateRow> expand_rows(const std::vector<ZpPoly>& equations,
                                     int max_deg);

/// Template with the given rows; columns derived from the rows.
EliminationTemplate make_template(std::vector<TemplateRow> rows,
                                  const std::vector<ZpPoly>& equations,
                                  const std::vector<Monomial>& B,
                                  std::size_t alpha);

/// Coefficient matrix with columns in template order.
ZpMatrix template_matrix(const EliminationTemplate& t,
                         const std::vector<ZpPoly>& equations);

/// Every reducible column receives a pivot when the columns are eliminated
/// in the order excess | reducible | basis.
bool feasible(const std::vector<TemplateRow>& rows,
              const std::vector<Monomial>& B, std::size_t alpha,
              const std::vector<ZpPoly>& equations, Exec exec = Exec::kParallel);

struct TemplateOptions {
  int max_degree_cap = 12;
  Exec exec = Exec::kParallel;
};

/// Degree closure grown one degree at a time from the largest equation
/// degree until feasible. Throws TemplateCapError past the cap.
EliminationTemplate build_template(const std::vector<ZpPoly>& equations,
                                   const std::vector<Monomial>& B,
                                   std::size_t alpha,
                                   const TemplateOptions& options = {});

/// Drops rows outside the support of the reducible pivot rows, then removes
/// rows greedily in reverse order while feasibility holds, then drops
/// untouched columns.
EliminationTemplate prune(const EliminationTemplate& t,
                          const std::vector<ZpPoly>& equations);

/// Throws RankDeficiencyError when a reducible column has no pivot.
ZpSquare action_matrix_from_template(const EliminationTemplate& t,
                                     const std::vector<ZpPoly>& equations,
                                     Exec exec = Exec::kParallel);

/// Ground truth by normal forms: coordinates of alpha b_i solved in the
/// coordinates of B.
ZpSquare action_matrix_oracle(const std::vector<Monomial>& B, std::size_t alpha,
                              QuotientCoordinates& qc);

/// build + prune for every action variable; smallest (rows, cols), ties to
/// the lower variable index. Throws TemplateCapError when all fail.
EliminationTemplate best_template(const std::vector<ZpPoly>& equations,
                                  const std::vector<Monomial>& B,
                                  const TemplateOptions& options = {});

/// Text form:
///   rows R cols C basis K action <var>
///   vars <v1> <v2> ...
///   eq=<i> mul=<monomial>          (R lines)
///   columns <excess...> | <reducible...> | <basis columns...>
///   basis <b1> <b2> ...
std::string write_template(const EliminationTemplate& t,
                           std::span<const std::string> var_names);
/// Throws ParseError on malformed input; var_names receives the vars line.
EliminationTemplate read_template(std::string_view text,
                                  std::vector<std::string>* var_names = nullptr);

/// Parses "x^2*y" or "1" against the given variable names.
Monomial parse_monomial(std::string_view text,
                        std::span<const std::string> var_names);

}  // namespace amsolve
