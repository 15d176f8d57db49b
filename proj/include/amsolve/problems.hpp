#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amsolve/sysio.hpp"

namespace amsolve {

enum class ProblemKind { kToy, kStitch2, kStitch3, kEfl };

/// "toy", "stitch2", "stitch3", "efl".
std::string_view problem_name(ProblemKind kind);
std::optional<ProblemKind> parse_problem_kind(std::string_view name);

/// Variable names of the built-in family:
///   toy      x, y
///   stitch*  lam, g        with g = 1/f^2
///   efl      w, lam, f13, f23  with w = 1/f^2
std::vector<std::string> problem_variables(ProblemKind kind);

/// A generated system together with whatever was planted to create it.
struct ProblemInstance {
  ProblemKind kind = ProblemKind::kToy;
  SystemFile system;
  /// Float mode: the planted solution, in variable order.
  std::optional<std::vector<std::complex<double>>> ground_truth;
  /// Z_p mode: the planted solution, when the construction has one.
  std::optional<std::vector<FieldElem>> zp_solution;
  double f_gt = 0.0;
  double lambda_gt = 0.0;
  std::uint64_t seed = 0;
};

ProblemInstance toy(const PrimeField& F = PrimeField());
ProblemInstance toy_float();

/// Three points seen in two views related by a pure rotation. Points are
/// projected with K = diag(f, f, 1) and distorted with the division model.
/// Equations compare squared cosines of ray pairs (1,2) and (1,3) across the
/// views, cross-multiplied, with the identically vanishing g^0 part removed
/// and one factor g divided out.
ProblemInstance stitching_2view(std::uint64_t seed, double f_gt,
                                double lambda_gt);

/// Two points seen in three views; pairs (view1, view2) and (view3, view2).
ProblemInstance stitching_3view(std::uint64_t seed, double f_gt,
                                double lambda_gt);

/// Seven-point relative pose: camera 1 calibrated, camera 2 with unknown
/// focal length and division-model distortion. F has f33 = 1; the first six
/// epipolar equations give the first two columns of F linearly in
/// (lam*f13, lam*f23, lam, f13, f23, 1), the seventh gives a quadratic
/// constraint, and E = F diag(1, 1, s) with s^2 = w adds the nine trace
/// constraints (third column divided by s) and det(F) = 0.
ProblemInstance relpose_efl(std::uint64_t seed, double f_gt = 10.0,
                            double lambda_gt = -0.1);

/// Consistent Z_p instance with a planted solution (toy ignores the seed).
/// Rotations come from the Cayley transform. Retries internally on
/// degenerate draws.
ProblemInstance instantiate_zp(ProblemKind kind, std::uint64_t seed,
                               const PrimeField& F = PrimeField());

/// Float instance with default parameters for the family: stitching draws
/// f in [0.5, 5] and lambda in [-0.5, 0] from the seed; efl uses f = 10,
/// lambda = -0.1.
ProblemInstance instantiate_float(ProblemKind kind, std::uint64_t seed);

/// Focal length implied by a solution point, or nullopt when the point has
/// no positive real focal length (toy always returns nullopt).
std::optional<double> focal_from_solution(
    ProblemKind kind, const std::vector<std::complex<double>>& point);

}  // namespace amsolve
