#pragma once

#include <complex>
#include <string>
#include <vector>

#include "amsolve/pipeline.hpp"

namespace amsolve::test {

inline const std::vector<std::string> kXY{"x", "y"};

/// Equations of a `.sys` text over Z_p.
inline std::vector<ZpPoly> zp(const std::string& text) { return parse_system(text).zp(); }

inline ZpPoly poly(const std::string& ring, const std::string& expr) {
  return zp(ring + "\n" + expr).front();
}

inline std::vector<ZpPoly> toy_system() {
  return zp("ring x, y over zp(30011)\nx + y^2 - 1\nx*y - 1");
}

inline Monomial mono(const std::string& text,
                     const std::vector<std::string>& names = kXY) {
  return parse_monomial(text, names);
}

inline std::vector<Monomial> monos(std::initializer_list<const char*> texts,
                                   const std::vector<std::string>& names = kXY) {
  std::vector<Monomial> out;
  for (const char* t : texts) out.push_back(mono(t, names));
  return out;
}

inline ZpSquare zp_matrix(const PrimeField& F,
                          std::initializer_list<std::initializer_list<int>> rows) {
  ZpSquare M;
  for (const auto& r : rows) {
    std::vector<FieldElem> row;
    for (int v : r) row.push_back(F.normalize(v));
    M.push_back(std::move(row));
  }
  return M;
}

/// Roots of a monic cubic t^3 + a t^2 + b t + c by Durand-Kerner iteration.
inline std::vector<std::complex<double>> cubic_roots(double a, double b, double c) {
  using C = std::complex<double>;
  auto p = [&](C t) { return ((t + a) * t + b) * t + c; };
  std::vector<C> z{C(0.4, 0.9), C(0.4, 0.9) * C(0.4, 0.9),
                   C(0.4, 0.9) * C(0.4, 0.9) * C(0.4, 0.9)};
  for (int it = 0; it < 500; ++it) {
    for (std::size_t i = 0; i < 3; ++i) {
      C d = 1.0;
      for (std::size_t j = 0; j < 3; ++j) {
        if (j != i) d *= z[i] - z[j];
      }
      z[i] -= p(z[i]) / d;
    }
  }
  return z;
}

/// det(tI - M) coefficients (c2, c1, c0) of t^3 + c2 t^2 + c1 t + c0 over Z_p.
inline std::array<FieldElem, 3> charpoly3(const ZpSquare& M, const PrimeField& F) {
  auto m = [&](int i, int j) { return M[i][j]; };
  FieldElem tr = F.add(F.add(m(0, 0), m(1, 1)), m(2, 2));
  auto minor = [&](int i, int j) {
    return F.sub(F.mul(m(i, i), m(j, j)), F.mul(m(i, j), m(j, i)));
  };
  FieldElem s2 = F.add(F.add(minor(0, 1), minor(0, 2)), minor(1, 2));
  FieldElem det = F.add(
      F.sub(F.mul(m(0, 0), F.sub(F.mul(m(1, 1), m(2, 2)), F.mul(m(1, 2), m(2, 1)))),
            F.mul(m(0, 1), F.sub(F.mul(m(1, 0), m(2, 2)), F.mul(m(1, 2), m(2, 0))))),
      F.mul(m(0, 2), F.sub(F.mul(m(1, 0), m(2, 1)), F.mul(m(1, 1), m(2, 0)))));
  return {F.neg(tr), s2, F.neg(det)};
}

}  // namespace amsolve::test
