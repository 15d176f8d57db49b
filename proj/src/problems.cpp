#include "amsolve/problems.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <unordered_set>

#include "amsolve/rng.hpp"

namespace amsolve {

namespace {

using Cplx = std::complex<double>;

// Pivot preference: any nonzero in Z_p, largest magnitude over floats.
double pivot_score(const PrimeField&, FieldElem a) { return a.value ? 1.0 : 0.0; }
double pivot_score(const ComplexField&, const Cplx& a) { return std::abs(a); }

/// Solves A X = B in place (A n x n, B n x m); throws DegenerateSceneError on
/// a singular A.
template <class Field>
void solve_dense(const Field& F, std::vector<std::vector<typename Field::Elem>>& A,
                 std::vector<std::vector<typename Field::Elem>>& B) {
  const std::size_t n = A.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    double best_score = 0.0;
    for (std::size_t r = c; r < n; ++r) {
      double s = pivot_score(F, A[r][c]);
      if (s > best_score) {
        best_score = s;
        best = r;
      }
    }
    if (best_score == 0.0) throw DegenerateSceneError("singular linear system");
    std::swap(A[c], A[best]);
    std::swap(B[c], B[best]);
    auto inv = F.inverse(A[c][c]);
    for (auto& v : A[c]) v = F.mul(v, inv);
    for (auto& v : B[c]) v = F.mul(v, inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      auto m = A[r][c];
      if (F.is_zero(m)) continue;
      for (std::size_t k = 0; k < n; ++k) A[r][k] = F.sub(A[r][k], F.mul(m, A[c][k]));
      for (std::size_t k = 0; k < B[r].size(); ++k) {
        B[r][k] = F.sub(B[r][k], F.mul(m, B[c][k]));
      }
    }
  }
}

template <class Field>
using Mat3 = std::array<std::array<typename Field::Elem, 3>, 3>;
template <class Field>
using Vec3 = std::array<typename Field::Elem, 3>;

/// R = (I - S)(I + S)^-1 with S = skew(a).
template <class Field>
Mat3<Field> cayley(const Field& F, const Vec3<Field>& a) {
  using E = typename Field::Elem;
  const E z = F.zero();
  const E o = F.one();
  Mat3<Field> S = {{{z, F.neg(a[2]), a[1]}, {a[2], z, F.neg(a[0])},
                    {F.neg(a[1]), a[0], z}}};
  std::vector<std::vector<E>> P(3, std::vector<E>(3));
  std::vector<std::vector<E>> Q(3, std::vector<E>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      E id = i == j ? o : z;
      P[i][j] = F.add(id, S[i][j]);
      Q[i][j] = F.sub(id, S[i][j]);
    }
  }
  // R (I + S) = (I - S)  <=>  (I + S)^T R^T = (I - S)^T.
  std::vector<std::vector<E>> At(3, std::vector<E>(3));
  std::vector<std::vector<E>> Bt(3, std::vector<E>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      At[i][j] = P[j][i];
      Bt[i][j] = Q[j][i];
    }
  }
  solve_dense(F, At, Bt);
  Mat3<Field> R;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) R[i][j] = Bt[j][i];
  }
  return R;
}

template <class Field>
Vec3<Field> mat_vec(const Field& F, const Mat3<Field>& M, const Vec3<Field>& v) {
  Vec3<Field> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = F.add(F.add(F.mul(M[i][0], v[0]), F.mul(M[i][1], v[1])),
                   F.mul(M[i][2], v[2]));
  }
  return out;
}

template <class Field>
Vec3<Field> mat_t_vec(const Field& F, const Mat3<Field>& M, const Vec3<Field>& v) {
  Vec3<Field> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = F.add(F.add(F.mul(M[0][i], v[0]), F.mul(M[1][i], v[1])),
                   F.mul(M[2][i], v[2]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stitching
// ---------------------------------------------------------------------------

/// A distorted image point.
template <class Field>
struct ImagePoint {
  typename Field::Elem x;
  typename Field::Elem y;
};

template <class Field>
struct StitchEquationData {
  // Points j, k in view a and in view b.
  ImagePoint<Field> aj, ak, bj, bk;
};

/// A(p, q) = g (p.x q.x + p.y q.y) + w_p w_q with w = 1 + lam r^2, over the
/// ring (lam, g).
template <class Field>
Polynomial<Field> ray_product(const Field& F, const ImagePoint<Field>& p,
                              const ImagePoint<Field>& q) {
  using P = Polynomial<Field>;
  const auto one = F.one();
  auto r2 = [&](const ImagePoint<Field>& u) {
    return F.add(F.mul(u.x, u.x), F.mul(u.y, u.y));
  };
  auto w = [&](const ImagePoint<Field>& u) {
    return P::from_terms(F, 2, {{Monomial{0, 0}, one}, {Monomial{1, 0}, r2(u)}});
  };
  P g = P::from_terms(
      F, 2, {{Monomial{0, 1}, F.add(F.mul(p.x, q.x), F.mul(p.y, q.y))}});
  return g + w(p) * w(q);
}

template <class Field>
Polynomial<Field> stitch_equation(const Field& F,
                                  const StitchEquationData<Field>& d) {
  using P = Polynomial<Field>;
  P A = ray_product(F, d.aj, d.ak);
  P B = ray_product(F, d.bj, d.bk);
  P full = A * A * ray_product(F, d.bj, d.bj) * ray_product(F, d.bk, d.bk) -
           B * B * ray_product(F, d.aj, d.aj) * ray_product(F, d.ak, d.ak);
  // The g^0 part is w_aj^2 w_ak^2 w_bj^2 w_bk^2 on both sides; every other
  // term carries at least one factor g.
  std::vector<typename P::Term> terms;
  for (const auto& t : full.terms()) {
    if (t.monomial[1] == 0) continue;
    terms.push_back({Monomial{t.monomial[0], t.monomial[1] - 1}, t.coeff});
  }
  return P::from_terms(F, 2, std::move(terms));
}

/// Distorted point for an undistorted direction (p, q, 1): x = k (p, q)
/// with lam s k^2 - k + 1 = 0, s = p^2 + q^2, on the branch with k -> 1.
std::optional<ImagePoint<PrimeField>> distort_zp(const PrimeField& F,
                                                 FieldElem p, FieldElem q,
                                                 FieldElem lam) {
  FieldElem s = F.add(F.mul(p, p), F.mul(q, q));
  FieldElem a = F.mul(lam, s);
  if (F.is_zero(a)) return ImagePoint<PrimeField>{p, q};
  FieldElem disc = F.sub(F.one(), F.mul(F.normalize(4), a));
  auto root = F.sqrt(disc);
  if (!root) return std::nullopt;
  FieldElem k = F.div(F.sub(F.one(), *root), F.add(a, a));
  if (F.is_zero(k)) return std::nullopt;
  return ImagePoint<PrimeField>{F.mul(k, p), F.mul(k, q)};
}

ImagePoint<ComplexField> distort_float(double p, double q, double lam) {
  double s = p * p + q * q;
  double a = lam * s;
  if (a == 0.0) return {Cplx(p), Cplx(q)};
  double disc = 1.0 - 4.0 * a;
  if (disc <= 0.0) {
    throw DistortionInfeasibleError("division model has no real inverse");
  }
  // 2 / (1 + sqrt(disc)) equals (1 - sqrt(disc)) / (2a) without cancellation.
  double k = 2.0 / (1.0 + std::sqrt(disc));
  return {Cplx(k * p), Cplx(k * q)};
}

FieldElem random_nonzero(Rng& rng, const PrimeField& F) {
  return FieldElem{static_cast<std::uint32_t>(rng.uniform_int(1, F.modulus() - 1))};
}
FieldElem random_elem(Rng& rng, const PrimeField& F) {
  return FieldElem{static_cast<std::uint32_t>(rng.uniform_int(0, F.modulus() - 1))};
}

/// Views of `npoints` scene points under `nviews` rotations (the first is the
/// identity), over Z_p. Returns per view per point distorted coordinates.
std::vector<std::vector<ImagePoint<PrimeField>>> stitch_scene_zp(
    Rng& rng, const PrimeField& F, int nviews, int npoints, FieldElem f,
    FieldElem lam) {
  FieldElem finv = F.inverse(f);
  std::vector<Mat3<PrimeField>> rotations;
  while (static_cast<int>(rotations.size()) < nviews - 1) {
    try {
      rotations.push_back(cayley(F, Vec3<PrimeField>{random_elem(rng, F),
                                                     random_elem(rng, F),
                                                     random_elem(rng, F)}));
    } catch (const DegenerateSceneError&) {
    }
  }
  std::vector<std::vector<ImagePoint<PrimeField>>> views(nviews);
  int placed = 0;
  while (placed < npoints) {
    // Distorted point planted in view 1; its ray is (x/f, y/f, 1 + lam r^2).
    ImagePoint<PrimeField> pt{random_elem(rng, F), random_elem(rng, F)};
    FieldElem r2 = F.add(F.mul(pt.x, pt.x), F.mul(pt.y, pt.y));
    Vec3<PrimeField> ray{F.mul(pt.x, finv), F.mul(pt.y, finv),
                         F.add(F.one(), F.mul(lam, r2))};
    if (F.is_zero(ray[2])) continue;
    std::vector<ImagePoint<PrimeField>> seen{pt};
    bool ok = true;
    for (const auto& R : rotations) {
      Vec3<PrimeField> X = mat_vec(F, R, ray);
      if (F.is_zero(X[2])) {
        ok = false;
        break;
      }
      FieldElem zinv = F.inverse(X[2]);
      FieldElem p = F.mul(F.mul(f, X[0]), zinv);
      FieldElem q = F.mul(F.mul(f, X[1]), zinv);
      auto d = distort_zp(F, p, q, lam);
      if (!d) {
        ok = false;
        break;
      }
      seen.push_back(*d);
    }
    if (!ok) continue;
    for (int v = 0; v < nviews; ++v) views[v].push_back(seen[v]);
    ++placed;
  }
  return views;
}

Mat3<ComplexField> random_rotation(Rng& rng, double max_angle) {
  ComplexField C;
  // Cayley vector a = tan(theta/2) * axis.
  double ax = rng.uniform(-1, 1), ay = rng.uniform(-1, 1), az = rng.uniform(-1, 1);
  double n = std::sqrt(ax * ax + ay * ay + az * az);
  if (n < 1e-6) {
    ax = 1;
    n = 1;
  }
  double t = std::tan(rng.uniform(0.2, 1.0) * max_angle / 2.0) / n;
  return cayley(C, Vec3<ComplexField>{Cplx(ax * t), Cplx(ay * t), Cplx(az * t)});
}

std::vector<std::vector<ImagePoint<ComplexField>>> stitch_scene_float(
    Rng& rng, int nviews, int npoints, double f, double lam) {
  std::vector<Mat3<ComplexField>> rotations;
  for (int v = 1; v < nviews; ++v) rotations.push_back(random_rotation(rng, 0.5));
  ComplexField C;
  std::vector<std::vector<ImagePoint<ComplexField>>> views(nviews);
  int placed = 0;
  int attempts = 0;
  while (placed < npoints) {
    if (++attempts > 1000) throw DegenerateSceneError("cannot place scene points");
    Vec3<ComplexField> X{Cplx(rng.uniform(-0.5, 0.5)), Cplx(rng.uniform(-0.5, 0.5)),
                         Cplx(1.0)};
    std::vector<ImagePoint<ComplexField>> seen;
    seen.push_back(distort_float(f * X[0].real(), f * X[1].real(), lam));
    bool ok = true;
    for (const auto& R : rotations) {
      Vec3<ComplexField> Y = mat_vec(C, R, X);
      if (Y[2].real() < 0.3) {
        ok = false;
        break;
      }
      seen.push_back(distort_float(f * Y[0].real() / Y[2].real(),
                                   f * Y[1].real() / Y[2].real(), lam));
    }
    if (!ok) continue;
    for (int v = 0; v < nviews; ++v) views[v].push_back(seen[v]);
    ++placed;
  }
  return views;
}

template <class Field>
std::vector<Polynomial<Field>> stitch2_equations(
    const Field& F, const std::vector<std::vector<ImagePoint<Field>>>& views) {
  const auto& a = views[0];
  const auto& b = views[1];
  return {stitch_equation(F, StitchEquationData<Field>{a[0], a[1], b[0], b[1]}),
          stitch_equation(F, StitchEquationData<Field>{a[0], a[2], b[0], b[2]})};
}

template <class Field>
std::vector<Polynomial<Field>> stitch3_equations(
    const Field& F, const std::vector<std::vector<ImagePoint<Field>>>& views) {
  const auto& v1 = views[0];
  const auto& v2 = views[1];
  const auto& v3 = views[2];
  return {stitch_equation(F, StitchEquationData<Field>{v1[0], v1[1], v2[0], v2[1]}),
          stitch_equation(F, StitchEquationData<Field>{v3[0], v3[1], v2[0], v2[1]})};
}

// ---------------------------------------------------------------------------
// E + f lambda
// ---------------------------------------------------------------------------

template <class Field>
struct EflCorrespondence {
  Vec3<Field> xhat;           // calibrated view, homogeneous
  ImagePoint<Field> x;        // distorted view
};

/// Ring (w, lam, f13, f23).
template <class Field>
std::vector<Polynomial<Field>> efl_equations(
    const Field& F, const std::vector<EflCorrespondence<Field>>& pts) {
  using E = typename Field::Elem;
  using P = Polynomial<Field>;
  constexpr std::size_t n = 4;
  // Epipolar row over the monomials
  //   U = [f11, f12, f21, f22, f31, f32]
  //   V = [lam f13, lam f23, lam, f13, f23, 1]
  // from xhat^T F (x, y, 1 + lam r^2) = 0 with f33 = 1.
  std::vector<std::vector<E>> CU(7, std::vector<E>(6));
  std::vector<std::vector<E>> CV(7, std::vector<E>(6));
  for (int i = 0; i < 7; ++i) {
    const auto& h = pts[i].xhat;
    E x = pts[i].x.x;
    E y = pts[i].x.y;
    E r2 = F.add(F.mul(x, x), F.mul(y, y));
    CU[i] = {F.mul(h[0], x), F.mul(h[0], y), F.mul(h[1], x),
             F.mul(h[1], y), F.mul(h[2], x), F.mul(h[2], y)};
    CV[i] = {F.mul(h[0], r2), F.mul(h[1], r2), F.mul(h[2], r2),
             h[0], h[1], h[2]};
  }
  // U = G V with G = -CU[0:6]^-1 CV[0:6].
  std::vector<std::vector<E>> A(CU.begin(), CU.begin() + 6);
  std::vector<std::vector<E>> G(CV.begin(), CV.begin() + 6);
  solve_dense(F, A, G);
  for (auto& row : G) {
    for (auto& v : row) v = F.neg(v);
  }
  // Seventh equation: (CU[6] G + CV[6]) V = 0.
  std::vector<E> c(6);
  for (int j = 0; j < 6; ++j) {
    E s = CV[6][j];
    for (int k = 0; k < 6; ++k) s = F.add(s, F.mul(CU[6][k], G[k][j]));
    c[j] = s;
  }
  if (pivot_score(F, c[0]) == 0.0) {
    throw DegenerateSceneError("seventh epipolar constraint lost lam*f13");
  }
  const std::array<Monomial, 6> vmon = {Monomial{0, 1, 1, 0}, Monomial{0, 1, 0, 1},
                                        Monomial{0, 1, 0, 0}, Monomial{0, 0, 1, 0},
                                        Monomial{0, 0, 0, 1}, Monomial{0, 0, 0, 0}};
  auto linear_in_v = [&](const std::vector<E>& coeffs) {
    std::vector<typename P::Term> terms;
    for (int j = 0; j < 6; ++j) terms.push_back({vmon[j], coeffs[j]});
    return P::from_terms(F, n, std::move(terms));
  };
  E inv_c0 = F.inverse(c[0]);
  for (auto& v : c) v = F.mul(v, inv_c0);
  P eq14 = linear_in_v(c);

  P f13 = P::variable(F, n, 2);
  P f23 = P::variable(F, n, 3);
  P w = P::variable(F, n, 0);
  P one = P::constant(F, n, F.one());
  std::array<std::array<P, 3>, 3> Fm = {{{linear_in_v(G[0]), linear_in_v(G[1]), f13},
                                         {linear_in_v(G[2]), linear_in_v(G[3]), f23},
                                         {linear_in_v(G[4]), linear_in_v(G[5]), one}}};
  // Q = F diag(1, 1, w) F^T.
  std::array<std::array<P, 3>, 3> Q;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      Q[a][b] = Fm[a][0] * Fm[b][0] + Fm[a][1] * Fm[b][1] + w * Fm[a][2] * Fm[b][2];
      Q[b][a] = Q[a][b];
    }
  }
  P tr = Q[0][0] + Q[1][1] + Q[2][2];
  std::vector<P> eqs{eq14};
  P two = P::constant(F, n, F.add(F.one(), F.one()));
  for (int a = 0; a < 3; ++a) {
    for (int col = 0; col < 3; ++col) {
      P qf = Q[a][0] * Fm[0][col] + Q[a][1] * Fm[1][col] + Q[a][2] * Fm[2][col];
      eqs.push_back(two * qf - tr * Fm[a][col]);
    }
  }
  P det = Fm[0][0] * (Fm[1][1] * Fm[2][2] - Fm[1][2] * Fm[2][1]) -
          Fm[0][1] * (Fm[1][0] * Fm[2][2] - Fm[1][2] * Fm[2][0]) +
          Fm[0][2] * (Fm[1][0] * Fm[2][1] - Fm[1][1] * Fm[2][0]);
  eqs.push_back(det);
  return eqs;
}

/// F = ([t]x R)^T diag(1, 1, f), scaled so that F33 = 1.
template <class Field>
Mat3<Field> fundamental(const Field& F, const Mat3<Field>& R, const Vec3<Field>& t,
                        typename Field::Elem f) {
  using E = typename Field::Elem;
  Mat3<Field> tx = {{{F.zero(), F.neg(t[2]), t[1]},
                     {t[2], F.zero(), F.neg(t[0])},
                     {F.neg(t[1]), t[0], F.zero()}}};
  Mat3<Field> Em;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      E s = F.zero();
      for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(tx[i][k], R[k][j]));
      Em[i][j] = s;
    }
  }
  Mat3<Field> Fm;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Fm[i][j] = Em[j][i];
      if (j == 2) Fm[i][j] = F.mul(Fm[i][j], f);
    }
  }
  if (pivot_score(F, Fm[2][2]) == 0.0) throw DegenerateSceneError("F33 vanishes");
  E inv = F.inverse(Fm[2][2]);
  for (auto& row : Fm) {
    for (auto& v : row) v = F.mul(v, inv);
  }
  return Fm;
}

// ---------------------------------------------------------------------------
// Float support cleanup
// ---------------------------------------------------------------------------

using Support = std::vector<std::unordered_set<Monomial, MonomialHash>>;

/// Generic monomial support of each equation of a family, from a Z_p
/// instance.
const Support& reference_support(ProblemKind kind) {
  static std::mutex mu;
  static std::array<std::optional<Support>, 4> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[static_cast<int>(kind)];
  if (!slot) {
    ProblemInstance inst = instantiate_zp(kind, 0x5eed, PrimeField());
    Support s;
    for (const auto& f : inst.system.zp()) {
      auto ms = f.monomials();
      s.emplace_back(ms.begin(), ms.end());
    }
    slot = std::move(s);
  }
  return *slot;
}

/// Drops float terms outside the generic support; they are rounding residue
/// of coefficients that vanish identically.
std::vector<CPoly> project_to_support(ProblemKind kind, std::vector<CPoly> eqs) {
  const Support& s = reference_support(kind);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    std::vector<CPoly::Term> kept;
    for (const auto& t : eqs[i].terms()) {
      if (s[i].count(t.monomial)) kept.push_back(t);
    }
    eqs[i] = CPoly::from_terms(ComplexField{}, eqs[i].nvars(), std::move(kept));
  }
  return eqs;
}

std::string instance_name(ProblemKind kind, std::uint64_t seed, bool zp) {
  return std::string(problem_name(kind)) + (zp ? " zp" : " float") + " seed " +
         std::to_string(seed);
}

ProblemInstance stitching_zp(ProblemKind kind, std::uint64_t seed,
                             const PrimeField& F) {
  Rng rng(seed);
  for (int attempt = 0;; ++attempt) {
    FieldElem f = random_nonzero(rng, F);
    FieldElem lam = random_nonzero(rng, F);
    FieldElem g = F.inverse(F.mul(f, f));
    auto views = kind == ProblemKind::kStitch2
                     ? stitch_scene_zp(rng, F, 2, 3, f, lam)
                     : stitch_scene_zp(rng, F, 3, 2, f, lam);
    auto eqs = kind == ProblemKind::kStitch2 ? stitch2_equations(F, views)
                                             : stitch3_equations(F, views);
    bool nonzero = true;
    for (const auto& e : eqs) nonzero = nonzero && !e.is_zero();
    if (!nonzero && attempt < 10) continue;
    ProblemInstance inst;
    inst.kind = kind;
    inst.seed = seed;
    inst.system = make_system(problem_variables(kind), std::move(eqs),
                              instance_name(kind, seed, true));
    inst.zp_solution = std::vector<FieldElem>{lam, g};
    return inst;
  }
}

ProblemInstance efl_zp(std::uint64_t seed, const PrimeField& F) {
  Rng rng(seed);
  for (int attempt = 0;; ++attempt) {
    try {
      FieldElem f = random_nonzero(rng, F);
      FieldElem lam = random_nonzero(rng, F);
      Mat3<PrimeField> R = cayley(
          F, Vec3<PrimeField>{random_elem(rng, F), random_elem(rng, F),
                              random_elem(rng, F)});
      Vec3<PrimeField> t{random_elem(rng, F), random_elem(rng, F),
                         random_elem(rng, F)};
      FieldElem finv = F.inverse(f);
      std::vector<EflCorrespondence<PrimeField>> pts;
      while (pts.size() < 7) {
        ImagePoint<PrimeField> x{random_elem(rng, F), random_elem(rng, F)};
        FieldElem r2 = F.add(F.mul(x.x, x.x), F.mul(x.y, x.y));
        FieldElem depth = random_nonzero(rng, F);
        Vec3<PrimeField> Xc{F.mul(depth, F.mul(x.x, finv)),
                            F.mul(depth, F.mul(x.y, finv)),
                            F.mul(depth, F.add(F.one(), F.mul(lam, r2)))};
        Vec3<PrimeField> d{F.sub(Xc[0], t[0]), F.sub(Xc[1], t[1]),
                           F.sub(Xc[2], t[2])};
        Vec3<PrimeField> Xw = mat_t_vec(F, R, d);
        if (F.is_zero(Xw[2])) continue;
        FieldElem zi = F.inverse(Xw[2]);
        pts.push_back({{F.mul(Xw[0], zi), F.mul(Xw[1], zi), F.one()}, x});
      }
      Mat3<PrimeField> Fm = fundamental(F, R, t, f);
      auto eqs = efl_equations(F, pts);
      ProblemInstance inst;
      inst.kind = ProblemKind::kEfl;
      inst.seed = seed;
      inst.system = make_system(problem_variables(ProblemKind::kEfl),
                                std::move(eqs),
                                instance_name(ProblemKind::kEfl, seed, true));
      inst.zp_solution = std::vector<FieldElem>{F.inverse(F.mul(f, f)), lam,
                                                Fm[0][2], Fm[1][2]};
      return inst;
    } catch (const DegenerateSceneError&) {
      if (attempt >= 10) throw;
    }
  }
}

ProblemInstance stitching_float(ProblemKind kind, std::uint64_t seed, double f_gt,
                                double lambda_gt) {
  if (!(f_gt > 0.0)) throw Error("focal length must be positive");
  ComplexField C;
  Rng rng(seed);
  for (int attempt = 0;; ++attempt) {
    try {
      auto views = kind == ProblemKind::kStitch2
                       ? stitch_scene_float(rng, 2, 3, f_gt, lambda_gt)
                       : stitch_scene_float(rng, 3, 2, f_gt, lambda_gt);
      auto eqs = kind == ProblemKind::kStitch2 ? stitch2_equations(C, views)
                                               : stitch3_equations(C, views);
      ProblemInstance inst;
      inst.kind = kind;
      inst.seed = seed;
      inst.f_gt = f_gt;
      inst.lambda_gt = lambda_gt;
      inst.system = make_system(problem_variables(kind),
                                project_to_support(kind, std::move(eqs)),
                                instance_name(kind, seed, false));
      inst.ground_truth =
          std::vector<Cplx>{Cplx(lambda_gt), Cplx(1.0 / (f_gt * f_gt))};
      return inst;
    } catch (const DistortionInfeasibleError&) {
      if (attempt >= 9) throw;
    }
  }
}

ProblemInstance efl_float(std::uint64_t seed, double f_gt, double lambda_gt) {
  if (!(f_gt > 0.0)) throw Error("focal length must be positive");
  ComplexField C;
  Rng rng(seed);
  for (int attempt = 0;; ++attempt) {
    try {
      Mat3<ComplexField> R = random_rotation(rng, 0.5);
      Vec3<ComplexField> t{Cplx(rng.uniform(-1, 1)), Cplx(rng.uniform(-1, 1)),
                           Cplx(rng.uniform(-0.3, 0.3))};
      std::vector<EflCorrespondence<ComplexField>> pts;
      int tries = 0;
      while (pts.size() < 7) {
        if (++tries > 1000) throw DegenerateSceneError("cannot place points");
        // Distorted point in camera 2, back-projected to a random depth.
        double x = rng.uniform(-1.5, 1.5);
        double y = rng.uniform(-1.5, 1.5);
        double wz = 1.0 + lambda_gt * (x * x + y * y);
        if (wz < 0.2) continue;
        double depth = rng.uniform(3.0, 8.0) / wz;
        Vec3<ComplexField> Xc{Cplx(depth * x / f_gt), Cplx(depth * y / f_gt),
                              Cplx(depth * wz)};
        Vec3<ComplexField> d{Xc[0] - t[0], Xc[1] - t[1], Xc[2] - t[2]};
        Vec3<ComplexField> Xw = mat_t_vec(C, R, d);
        if (Xw[2].real() < 0.5) continue;
        pts.push_back({{Xw[0] / Xw[2], Xw[1] / Xw[2], Cplx(1.0)},
                       {Cplx(x), Cplx(y)}});
      }
      Mat3<ComplexField> Fm = fundamental(C, R, t, Cplx(f_gt));
      auto eqs = efl_equations(C, pts);
      ProblemInstance inst;
      inst.kind = ProblemKind::kEfl;
      inst.seed = seed;
      inst.f_gt = f_gt;
      inst.lambda_gt = lambda_gt;
      inst.system = make_system(problem_variables(ProblemKind::kEfl),
                                project_to_support(ProblemKind::kEfl, std::move(eqs)),
                                instance_name(ProblemKind::kEfl, seed, false));
      inst.ground_truth = std::vector<Cplx>{Cplx(1.0 / (f_gt * f_gt)),
                                            Cplx(lambda_gt), Fm[0][2], Fm[1][2]};
      return inst;
    } catch (const DegenerateSceneError&) {
      if (attempt >= 9) throw;
    }
  }
}

}  // namespace

std::string_view problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kToy:
      return "toy";
    case ProblemKind::kStitch2:
      return "stitch2";
    case ProblemKind::kStitch3:
      return "stitch3";
    case ProblemKind::kEfl:
      return "efl";
  }
  return "unknown";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view name) {
  for (ProblemKind k : {ProblemKind::kToy, ProblemKind::kStitch2,
                        ProblemKind::kStitch3, ProblemKind::kEfl}) {
    if (problem_name(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<std::string> problem_variables(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kToy:
      return {"x", "y"};
    case ProblemKind::kStitch2:
    case ProblemKind::kStitch3:
      return {"lam", "g"};
    case ProblemKind::kEfl:
      return {"w", "lam", "f13", "f23"};
  }
  return {};
}

ProblemInstance toy(const PrimeField& F) {
  std::vector<ZpPoly> eqs{
      ZpPoly::from_terms(F, 2, {{Monomial{1, 0}, F.one()},
                                {Monomial{0, 2}, F.one()},
                                {Monomial{0, 0}, F.normalize(-1)}}),
      ZpPoly::from_terms(F, 2, {{Monomial{1, 1}, F.one()},
                                {Monomial{0, 0}, F.normalize(-1)}})};
  ProblemInstance inst;
  inst.kind = ProblemKind::kToy;
  inst.system = make_system({"x", "y"}, std::move(eqs), "toy");
  return inst;
}

ProblemInstance toy_float() {
  ProblemInstance zp = toy();
  ProblemInstance inst;
  inst.kind = ProblemKind::kToy;
  std::vector<CPoly> eqs;
  for (const auto& f : zp.system.zp()) eqs.push_back(lift_to_complex(f));
  inst.system = make_system({"x", "y"}, std::move(eqs), "toy");
  return inst;
}

ProblemInstance stitching_2view(std::uint64_t seed, double f_gt,
                                double lambda_gt) {
  return stitching_float(ProblemKind::kStitch2, seed, f_gt, lambda_gt);
}

ProblemInstance stitching_3view(std::uint64_t seed, double f_gt,
                                double lambda_gt) {
  return stitching_float(ProblemKind::kStitch3, seed, f_gt, lambda_gt);
}

ProblemInstance relpose_efl(std::uint64_t seed, double f_gt, double lambda_gt) {
  return efl_float(seed, f_gt, lambda_gt);
}

ProblemInstance instantiate_zp(ProblemKind kind, std::uint64_t seed,
                               const PrimeField& F) {
  switch (kind) {
    case ProblemKind::kToy:
      return toy(F);
    case ProblemKind::kStitch2:
    case ProblemKind::kStitch3:
      return stitching_zp(kind, seed, F);
    case ProblemKind::kEfl:
      return efl_zp(seed, F);
  }
  throw Error("unknown problem kind");
}

ProblemInstance instantiate_float(ProblemKind kind, std::uint64_t seed) {
  switch (kind) {
    case ProblemKind::kToy:
      return toy_float();
    case ProblemKind::kStitch2:
    case ProblemKind::kStitch3: {
      Rng rng(Rng::substream(seed, 0));
      double f = rng.uniform(0.5, 5.0);
      double lam = rng.uniform(-0.5, 0.0);
      return stitching_float(kind, seed, f, lam);
    }
    case ProblemKind::kEfl:
      return efl_float(seed, 10.0, -0.1);
  }
  throw Error("unknown problem kind");
}

std::optional<double> focal_from_solution(ProblemKind kind,
                                          const std::vector<Cplx>& point) {
  std::size_t idx;
  switch (kind) {
    case ProblemKind::kStitch2:
    case ProblemKind::kStitch3:
      idx = 1;
      break;
    case ProblemKind::kEfl:
      idx = 0;
      break;
    default:
      return std::nullopt;
  }
  if (idx >= point.size()) return std::nullopt;
  Cplx v = point[idx];
  if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-8 * std::abs(v)) {
    return std::nullopt;
  }
  return 1.0 / std::sqrt(v.real());
}

}  // namespace amsolve
