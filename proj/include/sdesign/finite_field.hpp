#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace sdesign {

struct PrimePower {
  std::uint64_t p = 0;
  int m = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

[[nodiscard]] bool is_prime(std::uint64_t n);
/// The unique (p, m) with n = p^m, if any. Requires n >= 2.
[[nodiscard]] std::optional<PrimePower> is_prime_power(std::uint64_t n);
/// Smallest prime power >= n. Requires n >= 2.
[[nodiscard]] std::uint64_t next_prime_power(std::uint64_t n);
/// Distinct prime factors in increasing order.
[[nodiscard]] std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Field elements are encoded as integers whose base-p digits are the
/// coefficients of the polynomial representative (digit i <-> x^i).
using FieldElem = std::uint32_t;

/// GF(p^m) with log/exp tables.
///
/// The modulus is the lexicographically smallest monic irreducible polynomial
/// (ordering by the integer encoding of its lower coefficients) and the
/// primitive element is the smallest-encoded generator of the multiplicative
/// group, so two contexts built from the same (p, m) are identical.
class FieldCtx {
 public:
  static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 20;

  /// Throws InvalidArgument if p is not prime or m < 1, ResourceCap if p^m > 2^20.
  static FieldCtx make(std::uint64_t p, int m);
  /// Field of order q; throws InvalidArgument if q is not a prime power.
  static FieldCtx of_order(std::uint64_t q);

  [[nodiscard]] std::uint32_t characteristic() const { return p_; }
  [[nodiscard]] int degree() const { return m_; }
  [[nodiscard]] std::uint32_t size() const { return q_; }
  /// Coefficients c_0..c_m of the monic modulus.
  [[nodiscard]] const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  [[nodiscard]] FieldElem primitive() const { return primitive_; }

  [[nodiscard]] FieldElem add(FieldElem a, FieldElem b) const;
  [[nodiscard]] FieldElem neg(FieldElem a) const;
  [[nodiscard]] FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
  [[nodiscard]] FieldElem mul(FieldElem a, FieldElem b) const;
  /// Throws InvalidArgument on zero.
  [[nodiscard]] FieldElem inv(FieldElem a) const;
  [[nodiscard]] FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  [[nodiscard]] FieldElem pow(FieldElem a, std::uint64_t e) const;

  /// primitive^k, k taken mod q-1.
  [[nodiscard]] FieldElem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
  /// Discrete log base the primitive element. Throws InvalidArgument on zero.
  [[nodiscard]] std::uint32_t log(FieldElem a) const;

  /// Multiplicative order of a nonzero element.
  [[nodiscard]] std::uint64_t order(FieldElem a) const;
  /// True iff a lies in the subfield of order `sub` (sub^k = q for some k).
  [[nodiscard]] bool in_subfield(FieldElem a, std::uint64_t sub) const;

  /// Product of two polynomial representatives reduced by the modulus,
  /// computed without tables. Used to build the tables and to cross-check them.
  [[nodiscard]] FieldElem mul_by_polynomial(FieldElem a, FieldElem b) const;

 private:
  FieldCtx() = default;

  std::uint32_t p_ = 0;
  int m_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  FieldElem primitive_ = 0;
  std::vector<FieldElem> exp_;
  std::vector<std::uint32_t> log_;
};

/// A point of the projective line P^1(F_q) under the fixed indexing
/// infinity -> 0, 0 -> 1, primitive^k -> k + 2.
struct ProjLinePoint {
  bool infinite = false;
  FieldElem value = 0;
};

[[nodiscard]] int proj_index(const FieldCtx& f, ProjLinePoint pt);
[[nodiscard]] ProjLinePoint proj_point(const FieldCtx& f, int index);

/// Permutation of {0..n-1} given by its image sequence.
struct Permutation {
  std::vector<int> image;

  [[nodiscard]] std::size_t size() const { return image.size(); }
  [[nodiscard]] bool is_bijective() const;
  /// (this o other)(i) = this(other(i)).
  [[nodiscard]] Permutation compose(const Permutation& other) const;
  [[nodiscard]] Permutation inverse() const;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

/// The q^3 - q Mobius maps z -> (az+b)/(cz+d) of PGL(2,q) acting on P^1(F_q),
/// as permutations of the q+1 indices. Throws InvalidArgument unless q is a
/// prime power.
[[nodiscard]] std::vector<Permutation> pgl2_permutations(std::uint64_t q);

}  // namespace sdesign
