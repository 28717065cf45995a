#pragma once

#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "multi_index.hpp"

namespace sdesign {

using BigInt = boost::multiprecision::cpp_int;
/// Exact moment constant; always stored reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

[[nodiscard]] double to_double(const Rational& r);

/// Integral of x^alpha over S^{d-1} against the normalized surface measure.
[[nodiscard]] Rational sphere_monomial_moment(int d, std::span<const int> alpha);

/// Double integral of (x.y)^k over S^{d-1} x S^{d-1}; equals the moment of x_1^k.
[[nodiscard]] Rational sphere_pair_constant(int d, int k);

/// k-th moment of the normalized weight (1-u^2)^{d-1} on [-1, 1].
[[nodiscard]] Rational interval_moment(int d, int k);

/// Integral of x^k over the standard simplex in R^d against the normalized
/// Lebesgue measure: (d-1)! prod k_i! / (d-1+|k|)!.
[[nodiscard]] Rational simplex_monomial_moment(int d, std::span<const int> k);

/// Double integral of |<x,y>|^{2k} over CP^{d-1}: 1 / C(d+k-1, k).
[[nodiscard]] Rational cp_pair_constant(int d, int k);

/// Haar integral over the projective torus of the monomial m_{a,b}: one when
/// a and b agree as multisets, zero otherwise.
[[nodiscard]] Rational toric_monomial_integral(std::span<const int> a, std::span<const int> b);

/// Delsarte-Goethals-Seidel lower bound on the size of a spherical t-design on S^{d-1}.
[[nodiscard]] BigInt dgs_lower_bound(int d, int t);

[[nodiscard]] BigInt binomial(int n, int k);
[[nodiscard]] BigInt factorial(int n);
/// (n)!! with the convention (-1)!! = 0!! = 1.
[[nodiscard]] BigInt double_factorial(int n);

}  // namespace sdesign
