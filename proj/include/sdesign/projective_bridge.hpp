#pragma once

#include <vector>

#include "point_matrix.hpp"
#include "recipe.hpp"
#include "report.hpp"
#include "simplex_designs.hpp"
#include "toric_designs.hpp"

namespace sdesign {

/// Unit vectors in C^d stored as 2d reals: real parts then imaginary parts.
/// Phase is canonical: the first coordinate of largest modulus is real and >= 0.
struct ComplexLineSet {
  int d = 0;
  PointMatrix vectors;  // N x 2d
  std::vector<double> weights;
  int strength = 0;
  Recipe recipe;

  [[nodiscard]] std::size_t size() const { return vectors.rows(); }
};

/// Rotates a complex vector (re..., im...) to canonical phase in place.
void canonicalize_phase(std::span<double> v);

/// Lines [sum_n sqrt(p_n) e^{i phi_n} |n>] for every (p, phi) in Y x X.
/// Coincident lines are detected exactly from the toric generators and merged
/// with their weights added. Throws InvalidArgument on a dimension mismatch.
[[nodiscard]] ComplexLineSet concatenate(const SimplexPointSet& y, const ToricDesign& x);

/// Number of distinct lines concatenate() would produce, without building them.
[[nodiscard]] std::uint64_t concatenated_line_count(const SimplexPointSet& y, const ToricDesign& x);

/// For each distinct line, in concatenate() order, how many pairs (p, phi) map to it.
[[nodiscard]] std::vector<std::uint64_t> line_multiplicities(const SimplexPointSet& y,
                                                             const ToricDesign& x);

inline constexpr double kProjectiveTolerance = 1e-10;

/// Frame-potential check: for k <= t compares
/// W^-2 sum w_x w_y |<x,y>|^{2k} with 1 / C(d+k-1, k). The excess is a sum
/// of squares of harmonic averages, so the residual reported is sqrt(|excess|).
[[nodiscard]] VerificationReport verify_cp(const ComplexLineSet& z, int t,
                                           double tol = kProjectiveTolerance);

/// Real 2-planes span{v, iv} in R^{2d}, each as an orthonormal pair (u, w).
struct FusionFrame {
  int ambient = 0;
  PointMatrix u;
  PointMatrix w;
  std::vector<double> weights;
  int strength = 0;
  Recipe recipe;

  [[nodiscard]] std::size_t size() const { return u.rows(); }
};

/// For v = x + iy: u = (x, y), w = (-y, x).
[[nodiscard]] FusionFrame cp_to_fusion_frame(const ComplexLineSet& z, int strength);

inline constexpr std::uint64_t kExpansionCap = 10'000'000;

/// Expands p(x) = sum_V w_V ((u.x)^2 + (w.x)^2)^k for k = 1..t, takes
/// A = coefficient of x_1^{2k}, and compares every coefficient of
/// p - A |x|^{2k} with tol * sum_V w_V. Throws ResourceCap when the number of
/// coefficients exceeds kExpansionCap.
[[nodiscard]] VerificationReport verify_tff(const FusionFrame& f, int t,
                                            double tol = kProjectiveTolerance);

}  // namespace sdesign
