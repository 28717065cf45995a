#include "sdesign/reference_moments.hpp"

#include <algorithm>
#include <vector>

#include "sdesign/errors.hpp"

namespace sdesign {

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt factorial(int n) {
  if (n < 0) throw InvalidArgument("factorial of a negative number");
  BigInt acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

BigInt double_factorial(int n) {
  if (n < -1) throw InvalidArgument("double factorial below -1");
  BigInt acc = 1;
  for (int i = n; i > 1; i -= 2) acc *= i;
  return acc;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

namespace {

/// prod_{j=0}^{m-1} (d + 2j)
BigInt rising_even(int d, int m) {
  BigInt acc = 1;
  for (int j = 0; j < m; ++j) acc *= d + 2 * j;
  return acc;
}

void require_exponents(std::span<const int> alpha) {
  for (int a : alpha) {
    if (a < 0) throw InvalidArgument("negative exponent in multi-index");
  }
}

}  // namespace

Rational sphere_monomial_moment(int d, std::span<const int> alpha) {
  if (d < 1) throw InvalidArgument("sphere_monomial_moment: d must be >= 1");
  if (static_cast<int>(alpha.size()) != d) {
    throw InvalidArgument("sphere_monomial_moment: multi-index length differs from dimension");
  }
  require_exponents(alpha);
  BigInt num = 1;
  for (int a : alpha) {
    if (a % 2 != 0) return 0;
    num *= double_factorial(a - 1);
  }
  return Rational(num, rising_even(d, degree(alpha) / 2));
}

Rational sphere_pair_constant(int d, int k) {
  if (d < 1 || k < 0) throw InvalidArgument("sphere_pair_constant: need d >= 1, k >= 0");
  if (k % 2 != 0) return 0;
  return Rational(double_factorial(k - 1), rising_even(d, k / 2));
}

Rational interval_moment(int d, int k) {
  if (d < 1 || k < 0) throw InvalidArgument("interval_moment: need d >= 1, k >= 0");
  if (k % 2 != 0) return 0;
  // B(m + 1/2, d) / B(1/2, d) = (2m-1)!! / prod_{j<m} (2d + 1 + 2j)
  const int m = k / 2;
  return Rational(double_factorial(k - 1), rising_even(2 * d + 1, m));
}

Rational simplex_monomial_moment(int d, std::span<const int> k) {
  if (d < 1) throw InvalidArgument("simplex_monomial_moment: d must be >= 1");
  if (static_cast<int>(k.size()) != d) {
    throw InvalidArgument("simplex_monomial_moment: multi-index length differs from dimension");
  }
  require_exponents(k);
  BigInt num = factorial(d - 1);
  for (int e : k) num *= factorial(e);
  return Rational(num, factorial(d - 1 + degree(k)));
}

Rational cp_pair_constant(int d, int k) {
  if (d < 1 || k < 0) throw InvalidArgument("cp_pair_constant: need d >= 1, k >= 0");
  return Rational(BigInt(1), binomial(d + k - 1, k));
}

Rational toric_monomial_integral(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw InvalidArgument("toric_monomial_integral: length mismatch");
  std::vector<int> sa(a.begin(), a.end());
  std::vector<int> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb ? 1 : 0;
}

BigInt dgs_lower_bound(int d, int t) {
  if (d < 1 || t < 1) throw InvalidArgument("dgs_lower_bound: need d >= 1, t >= 1");
  if (t % 2 == 0) {
    const int e = t / 2;
    return binomial(d + e - 1, d - 1) + binomial(d + e - 2, d - 1);
  }
  const int e = (t - 1) / 2;
  return 2 * binomial(d + e - 1, d - 1);
}

}  // namespace sdesign
