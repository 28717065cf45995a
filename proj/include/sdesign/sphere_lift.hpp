#pragma once

#include <cstdint>
#include <vector>

#include "interval_designs.hpp"
#include "point_matrix.hpp"
#include "projective_bridge.hpp"
#include "recipe.hpp"
#include "report.hpp"

namespace sdesign {

struct SphericalPointSet {
  PointMatrix points;
  std::vector<double> weights;
  int strength = 0;
  bool weighted = false;
  Recipe recipe;

  [[nodiscard]] int dim() const { return static_cast<int>(points.cols()); }
  [[nodiscard]] std::size_t size() const { return points.rows(); }
};

/// Regular m-gon on S^1 starting at angle `phase`; a spherical (m-1)-design.
[[nodiscard]] SphericalPointSet polygon_design(int m, double phase = 0.0);

enum class LiftMode { equal, weighted };

/// Places an m-gon on the unit circle of every plane of the frame.
///
/// Equal mode expects weights that are integer multiples of the smallest one;
/// a plane of multiplicity r gets r copies of the polygon rotated by 2 pi/(r m)
/// apart. If two emitted points coincide, all planes are re-phased with a
/// seeded generator (at most 8 attempts). Weighted mode merges coincident
/// points and adds their weights.
[[nodiscard]] SphericalPointSet lift(const FusionFrame& frame, int m, LiftMode mode,
                                     std::uint64_t seed = 0, bool check_tight = true);

/// Points (u, sqrt(1-u^2) y) for u in U, y in Y. U must carry the weight
/// (1-u^2)^{d'-1} with 2d' = dim(Y).
[[nodiscard]] SphericalPointSet rabau_bajnok(const SphericalPointSet& y, const IntervalDesign& u);

enum class SphereMethod { automatic, monomial, pairsum, directional };
[[nodiscard]] std::string to_string(SphereMethod m);
[[nodiscard]] SphereMethod sphere_method_from_string(const std::string& s);

inline constexpr double kSphereTolerance = 1e-9;

struct SphereCheckOptions {
  SphereMethod method = SphereMethod::automatic;
  double tol = kSphereTolerance;
  int threads = 0;  // 0: keep the OpenMP default
  int directions = 16;
  std::uint64_t seed = 1;
  bool serial_reference = false;  // use the serial kernels
};

/// Checks that the weighted average of every polynomial of degree <= t
/// matches its integral over the sphere.
///
/// monomial: every x^alpha against the exact moment.
/// pairsum: sqrt(|W^-2 sum w_x w_y (x.y)^k - c_k|) for k <= t, over the
/// radially normalized points.
/// directional: random projections (v.x)^k; a necessary condition only, so
/// the report is marked inconclusive.
[[nodiscard]] VerificationReport verify_spherical(const SphericalPointSet& x, int t,
                                                  const SphereCheckOptions& opts = {});

/// Spherical 5-design on S^{n-1}, n >= 2.
[[nodiscard]] SphericalPointSet sphere5_design(int n, std::uint64_t seed = 0);

/// Spherical 7-design on S^{n-1}, n even and >= 6.
[[nodiscard]] SphericalPointSet sphere7_design(int n, std::uint64_t seed = 0,
                                               std::uint64_t orbit_cap = kDefaultOrbitCap);

/// Smallest pairwise distance that is below `threshold`, found by sorting
/// projections onto a fixed direction; +inf when no pair is that close.
[[nodiscard]] double min_pairwise_distance_below(const PointMatrix& pts, double threshold);

}  // namespace sdesign
