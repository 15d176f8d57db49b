#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "amsolve/template.hpp"

namespace amsolve {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Template rows filled with the coefficients of a float instance; columns in
/// template order. Throws SupportMismatchError when a row monomial is not a
/// template column.
CMatrix instantiate(const EliminationTemplate& t,
                    const std::vector<CPoly>& equations);

/// Relative pivot threshold for float elimination.
inline constexpr double kPivotTolerance = 1e-12;

/// Partial-pivoting elimination over the excess and then the reducible
/// columns; each reducible monomial ends up expressed in the basis columns.
/// Excess columns without a usable pivot are skipped. Throws
/// RankDeficiencyError when a reducible column has none.
CMatrix eliminate_extract(CMatrix A, const EliminationTemplate& t);

struct EigenPair {
  Complex value;
  /// Values of the basis monomials up to scale; unit 2-norm.
  CVector vector;
  /// Per-component reliability: |component| of the unit eigenvector of the
  /// balanced matrix. Empty means use |vector|.
  Eigen::VectorXd weight;
};

/// Right eigenpairs M v = lambda v. Throws ConvergenceError.
std::vector<EigenPair> eigen_solve(const CMatrix& M);

struct SolutionSet {
  std::vector<std::vector<Complex>> points;
  /// residuals[i] belongs to points[i].
  std::vector<double> residuals;
  std::vector<Complex> eigenvalues;
};

/// The action variable takes the eigenvalue; every other x_i is read as
/// v_j / v_k along the edge b_j = x_i b_k with the largest weight_k. Throws
/// ExtractionError when some variable has no edge. Eigenvectors whose best
/// edge has |v_k| <= kPivotTolerance * |v| are not reported.
SolutionSet extract_solutions(const std::vector<EigenPair>& pairs,
                              const std::vector<Monomial>& B, std::size_t alpha,
                              const std::vector<CPoly>& equations);

/// Per-point max_i |f_i(x)| / (1 + max |coeff of f_i|).
std::vector<double> residuals(const std::vector<std::vector<Complex>>& points,
                              const std::vector<CPoly>& equations);

/// instantiate, eliminate_extract, eigen_solve, extract_solutions.
SolutionSet solve(const EliminationTemplate& t,
                  const std::vector<CPoly>& equations);

}  // namespace amsolve
