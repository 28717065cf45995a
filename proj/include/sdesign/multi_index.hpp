#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sdesign {

/// Exponent vector of a monomial; one entry per coordinate.
using MultiIndex = std::vector<int>;

[[nodiscard]] inline int degree(std::span<const int> alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

/// All exponent vectors of length n and total degree exactly k, in
/// reverse-lexicographic order (x_1^k first).
[[nodiscard]] std::vector<MultiIndex> multi_indices_of_degree(int n, int k);

/// Number of monomials of degree exactly k in n variables, C(n+k-1, k);
/// saturates at UINT64_MAX.
[[nodiscard]] std::uint64_t monomial_count(int n, int k);

/// Nondecreasing index tuples (multisets) of size s drawn from {0..n-1}.
[[nodiscard]] std::vector<std::vector<int>> multisets(int n, int s);

}  // namespace sdesign
