#include "amsolve/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace amsolve {

namespace {

using MonoIndex = std::unordered_map<Monomial, std::size_t, MonomialHash>;

MonoIndex index_of(const std::vector<Monomial>& ms) {
  MonoIndex out;
  for (std::size_t i = 0; i < ms.size(); ++i) out.emplace(ms[i], i);
  return out;
}

double row_norm(const CMatrix& A, Eigen::Index r) {
  return A.row(r).cwiseAbs().maxCoeff();
}

/// Diagonal similarity D^-1 M D with power-of-two entries that equalizes
/// row and column norms; returns D. Exact in floating point.
CVector balance(CMatrix& M) {
  const Eigen::Index n = M.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  for (bool done = false; !done;) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(M(j, i));
        r += std::abs(M(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double total = c + r;
      double f = 1.0;
      while (c < r / 2) {
        c *= 2;
        r /= 2;
        f *= 2;
      }
      while (c >= r * 2) {
        c /= 2;
        r *= 2;
        f /= 2;
      }
      if (c + r < 0.95 * total) {
        done = false;
        d(i) *= f;
        M.col(i) *= f;
        M.row(i) /= f;
      }
    }
  }
  return d.cast<Complex>();
}

}  // namespace

CMatrix instantiate(const EliminationTemplate& t,
                    const std::vector<CPoly>& equations) {
  const MonoIndex col = index_of(t.columns());
  CMatrix A = CMatrix::Zero(static_cast<Eigen::Index>(t.n_rows()),
                            static_cast<Eigen::Index>(t.n_cols()));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const TemplateRow& row = t.rows[r];
    if (row.eq >= equations.size()) {
      throw SupportMismatchError("template row references a missing equation");
    }
    for (const auto& term : equations[row.eq].terms()) {
      auto it = col.find(term.monomial * row.mul);
      if (it == col.end()) {
        throw SupportMismatchError("equation " + std::to_string(row.eq) +
                                   " has a monomial outside the template");
      }
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(it->second)) =
          term.coeff;
    }
  }
  return A;
}

CMatrix eliminate_extract(CMatrix A, const EliminationTemplate& t) {
  const auto n_rows = A.rows();
  const auto n_cols = A.cols();
  const auto n_e = static_cast<Eigen::Index>(t.excess.size());
  const auto n_r = static_cast<Eigen::Index>(t.reducible.size());
  const auto b_start = n_e + n_r;
  if (n_cols != static_cast<Eigen::Index>(t.n_cols()) ||
      n_rows != static_cast<Eigen::Index>(t.n_rows())) {
    throw DimensionMismatchError("matrix does not match the template size");
  }

  // Rows are multiples of single equations; equilibrating them makes the
  // pivot choice independent of how each equation happens to be scaled.
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const double n = row_norm(A, r);
    if (n > 0.0) A.row(r) /= n;
  }
  std::vector<Eigen::Index> r_pivot(static_cast<std::size_t>(n_r), -1);
  Eigen::Index top = 0;
  for (Eigen::Index c = 0; c < b_start; ++c) {
    const bool reducible = c >= n_e;
    Eigen::Index best = -1;
    double best_abs = 0.0;
    for (Eigen::Index r = top; r < n_rows; ++r) {
      double a = std::abs(A(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (best < 0 || best_abs <= kPivotTolerance * row_norm(A, best)) {
      if (reducible) {
        throw RankDeficiencyError("no pivot for reducible column " +
                                  std::to_string(c - n_e));
      }
      continue;
    }
    A.row(top).swap(A.row(best));
    const auto width = n_cols - c;
    for (Eigen::Index r = top + 1; r < n_rows; ++r) {
      const Complex f = A(r, c) / A(top, c);
      if (f == Complex{}) continue;
      A.row(r).tail(width) -= f * A.row(top).tail(width);
      A(r, c) = Complex{};
    }
    if (reducible) r_pivot[static_cast<std::size_t>(c - n_e)] = top;
    ++top;
  }

  // Back substitution inside the reducible block; pivot rows are zero on the
  // excess columns already.
  for (Eigen::Index k = n_r - 1; k >= 0; --k) {
    const Eigen::Index pk = r_pivot[static_cast<std::size_t>(k)];
    const Eigen::Index c = n_e + k;
    const auto width = n_cols - c;
    A.row(pk).tail(width) /= A(pk, c);
    for (Eigen::Index j = 0; j < k; ++j) {
      const Eigen::Index pj = r_pivot[static_cast<std::size_t>(j)];
      const Complex f = A(pj, c);
      if (f == Complex{}) continue;
      A.row(pj).tail(width) -= f * A.row(pk).tail(width);
    }
  }

  const std::size_t K = t.basis.size();
  const MonoIndex basis_index = index_of(t.basis);
  const MonoIndex r_index = index_of(t.reducible);
  CMatrix M = CMatrix::Zero(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
  for (std::size_t i = 0; i < K; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    Monomial am = t.basis[i] * Monomial::variable(t.basis[i].nvars(), t.action_var);
    if (auto b = basis_index.find(am); b != basis_index.end()) {
      M(ii, static_cast<Eigen::Index>(b->second)) = 1.0;
      continue;
    }
    auto r = r_index.find(am);
    if (r == r_index.end()) throw RankDeficiencyError("reducible monomial missing from template");
    const Eigen::Index row = r_pivot[r->second];
    for (std::size_t c = 0; c < t.basis_columns.size(); ++c) {
      M(ii, static_cast<Eigen::Index>(basis_index.at(t.basis_columns[c]))) =
          -A(row, b_start + static_cast<Eigen::Index>(c));
    }
  }
  return M;
}

std::vector<EigenPair> eigen_solve(const CMatrix& M) {
  if (!M.allFinite()) throw ConvergenceError("action matrix has non-finite entries");
  // Monomial bases make M strongly graded; balancing keeps the eigenvalue
  // error relative to the balanced norm.
  CMatrix Mb = M;
  const CVector d = balance(Mb);
  Eigen::ComplexEigenSolver<CMatrix> solver(Mb, true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigenvalue iteration did not converge");
  }
  std::vector<EigenPair> out;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    const CVector vb = solver.eigenvectors().col(i);
    CVector v = d.cwiseProduct(vb);
    const double n = v.norm();
    if (n > 0.0) v /= n;
    const double nb = vb.norm();
    Eigen::VectorXd w = vb.cwiseAbs();
    if (nb > 0.0) w /= nb;
    out.push_back({solver.eigenvalues()(i), std::move(v), std::move(w)});
  }
  return out;
}

SolutionSet extract_solutions(const std::vector<EigenPair>& pairs,
                              const std::vector<Monomial>& B, std::size_t alpha,
                              const std::vector<CPoly>& equations) {
  if (B.empty()) throw ExtractionError("empty basis");
  const std::size_t nvars = B.front().nvars();
  const MonoIndex index = index_of(B);
  // edges[i]: (j, k) with B[j] = x_i B[k].
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    if (i == alpha) continue;
    for (std::size_t k = 0; k < B.size(); ++k) {
      auto j = index.find(B[k] * Monomial::variable(nvars, i));
      if (j != index.end()) edges[i].emplace_back(j->second, k);
    }
    if (edges[i].empty()) {
      throw ExtractionError("variable " + std::to_string(i) +
                            " cannot be read from the basis");
    }
  }

  SolutionSet out;
  for (const EigenPair& p : pairs) {
    out.eigenvalues.push_back(p.value);
    std::vector<Complex> point(nvars);
    point[alpha] = p.value;
    const double vnorm = p.vector.norm();
    bool readable = true;
    for (std::size_t i = 0; i < nvars && readable; ++i) {
      if (i == alpha) continue;
      auto weight = [&](std::size_t k) {
        const auto kk = static_cast<Eigen::Index>(k);
        return p.weight.size() ? p.weight(kk) : std::abs(p.vector(kk));
      };
      auto best = std::max_element(
          edges[i].begin(), edges[i].end(),
          [&](const auto& a, const auto& b) { return weight(a.second) < weight(b.second); });
      const Complex vk = p.vector(static_cast<Eigen::Index>(best->second));
      if (!(std::abs(vk) > kPivotTolerance * vnorm) ||
          !(weight(best->second) > kPivotTolerance)) {
        readable = false;
        break;
      }
      point[i] = p.vector(static_cast<Eigen::Index>(best->first)) / vk;
    }
    if (readable) out.points.push_back(std::move(point));
  }
  out.residuals = residuals(out.points, equations);
  return out;
}

std::vector<double> residuals(const std::vector<std::vector<Complex>>& points,
                              const std::vector<CPoly>& equations) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(normalized_residual(equations, p));
  return out;
}

SolutionSet solve(const EliminationTemplate& t,
                  const std::vector<CPoly>& equations) {
  CMatrix M = eliminate_extract(instantiate(t, equations), t);
  return extract_solutions(eigen_solve(M), t.basis, t.action_var, equations);
}

}  // namespace amsolve
