#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "point_matrix.hpp"
#include "recipe.hpp"
#include "report.hpp"

namespace sdesign {

/// Residues mod n whose s-fold sums with repetition (s <= t) are pairwise
/// distinct for distinct multisets of summands.
struct BtSet {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> elements;
  int t = 0;
  std::uint64_t q = 0;
};

/// Two distinct multisets (indices into the element list) with equal sums.
struct SumCollision {
  std::vector<int> first;
  std::vector<int> second;
};

/// Exact search for a collision among s-fold sums, s <= t.
[[nodiscard]] std::optional<SumCollision> find_sum_collision(std::span<const std::uint64_t> elements,
                                                            std::uint64_t n, int t);
[[nodiscard]] inline bool is_bt_set(const BtSet& b) {
  return !find_sum_collision(b.elements, b.n, b.t).has_value();
}

/// {a in [1, q^t - 1] : theta^a - theta in GF(q)} inside Z_{q^t - 1}; q elements
/// for t >= 2. For t = 1 every residue qualifies, giving q - 1 elements.
[[nodiscard]] BtSet bose_chowla(std::uint64_t q, int t);

/// {0} u {log(theta + c) : c in GF(q)} inside Z_{(q^{t+1}-1)/(q-1)}, theta
/// primitive in GF(q^{t+1}); q+1 elements.
[[nodiscard]] BtSet singer_bt_set(std::uint64_t q, int t);

/// Cyclic projective toric design: point j has angles 2 pi j b_i / n,
/// shifted so the first angle is 0 and reduced into [0, 2 pi).
struct ToricDesign {
  int d = 0;
  int t = 0;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> generators;
  PointMatrix angles;  // n x d
  Recipe recipe;

  [[nodiscard]] std::size_t size() const { return n; }
};

inline constexpr std::uint64_t kToricSizeCap = 10'000'000;

/// Toric design from explicit generators (no B_t check).
[[nodiscard]] ToricDesign toric_from_generators(int d, int t, std::uint64_t n,
                                                std::vector<std::uint64_t> generators);

/// Bose-Chowla route: q = next_prime_power(d), first d elements of
/// bose_chowla(q, t), n = q^t - 1. For t = 1 the set has only q - 1 elements,
/// so q = next_prime_power(d + 1) there. For d = 1 a single point.
[[nodiscard]] ToricDesign toric_design(int d, int t);

/// Singer route: q = smallest prime power >= max(d-1, 2), first d elements of
/// singer_bt_set(q, t), n = (q^{t+1}-1)/(q-1).
[[nodiscard]] ToricDesign singer_toric_design(int d, int t);

/// The smaller of the two routes (Bose-Chowla on ties).
[[nodiscard]] ToricDesign compact_toric_design(int d, int t);

inline constexpr double kToricTolerance = 1e-10;

/// Exponential-sum check of every m_{a,b} with |a| = |b| <= t against the
/// Haar integral, plus the exact integer collision check on the generators.
/// Passes only if both agree that the set is a design.
[[nodiscard]] VerificationReport verify_toric(const ToricDesign& x, int t,
                                              double tol = kToricTolerance);

}  // namespace sdesign
