#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "point_matrix.hpp"
#include "recipe.hpp"
#include "report.hpp"
#include "root_isolation.hpp"

namespace sdesign {

enum class SeedCase { odd, even, d4, simplex2 };
[[nodiscard]] std::string to_string(SeedCase c);

/// One distinct coordinate value of a seed and how often it occurs.
struct PatternPart {
  WideFloat value;
  int multiplicity = 0;
};

/// Algebraic data of an orbit seed on the simplex.
///
/// For the degree-3 seeds, b and c are the roots of z^2 - s z + pair_product
/// and discriminant = s^2 - 4 pair_product.
struct SimplexSeed {
  int d = 0;
  SeedCase kind = SeedCase::odd;
  int q = 0;  // d = 2q+1 (odd) or d = 2q (even)
  WideFloat s, a, b, c, pair_product, discriminant;
  std::array<Rational, 4> cubic{};  // c_0..c_3 of the defining cubic
  WideFloat bracket_lo, bracket_hi;
  std::vector<PatternPart> pattern;

  /// Seed point with coordinates in pattern order, rounded to double.
  [[nodiscard]] std::vector<double> point() const;
  /// Pattern label of each coordinate of point().
  [[nodiscard]] std::vector<int> labels() const;
  [[nodiscard]] WideFloat power_sum(int k) const;
  [[nodiscard]] nlohmann::json to_json() const;
};

enum class Invariance { symmetric, pgl, cyclic, none };
[[nodiscard]] std::string to_string(Invariance inv);

struct SimplexPointSet {
  int d = 0;
  PointMatrix points;
  std::vector<double> weights;
  Invariance invariance = Invariance::none;
  int q = 0;
  int strength = 0;
  Recipe recipe;

  [[nodiscard]] std::size_t size() const { return points.rows(); }
};

/// The d cyclic shifts of (a, ..., a, 1-(d-1)a), a = 1/d - 1/(d sqrt(d+1)).
[[nodiscard]] SimplexPointSet simplex2_design(int d);

/// Seed point whose symmetric-group orbit is a simplex 3-design. Requires d >= 3.
[[nodiscard]] SimplexSeed simplex3_seed(int d);

inline constexpr std::uint64_t kDefaultOrbitCap = 10'000'000;

/// Multinomial d! / prod(multiplicity!) of the seed pattern.
[[nodiscard]] std::uint64_t symmetric_orbit_size(const SimplexSeed& seed);

/// All distinct coordinate permutations of the seed. Throws ResourceCap above `cap`.
[[nodiscard]] SimplexPointSet symmetric_orbit(const SimplexSeed& seed,
                                              std::uint64_t cap = kDefaultOrbitCap);

/// Orbit of the seed under PGL(2,q) acting on the d = q+1 coordinates
/// through P^1(F_q). Throws InvalidArgument unless d-1 = q is a prime power.
[[nodiscard]] SimplexPointSet pgl_orbit(const SimplexSeed& seed, std::uint64_t q);

enum class SimplexCheck { automatic, full, fast };

inline constexpr double kSimplexTolerance = 1e-11;

/// full: every monomial of degree <= t against the exact simplex moment.
/// fast: averages of p_2 and p_3 (t <= 3 only), valid for S_d-invariant sets.
/// automatic: fast when the set is tagged S_d-invariant and t <= 3, else full.
/// Throws InvalidArgument for points off the simplex.
[[nodiscard]] VerificationReport verify_simplex(const SimplexPointSet& x, int t,
                                                SimplexCheck mode = SimplexCheck::automatic,
                                                double tol = kSimplexTolerance);

}  // namespace sdesign
