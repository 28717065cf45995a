#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "errors.hpp"
#include "reference_moments.hpp"

namespace sdesign {

/// Working precision for seeds: IEEE quad, 113-bit significand.
using WideFloat = boost::multiprecision::cpp_bin_float_quad;

template <class Real>
Real to_real(const Rational& r) {
  if constexpr (std::is_floating_point_v<Real>) {
    return static_cast<Real>(to_double(r));
  } else {
    return Real(boost::multiprecision::numerator(r)) / Real(boost::multiprecision::denominator(r));
  }
}

/// Polynomial sum c_i x^i with exact coefficients, to be solved on (lo, hi).
template <class Real>
struct BracketedPolynomial {
  std::vector<Rational> coefficients;  // c_0 .. c_n
  Real lo;
  Real hi;
};

/// Thrown when a bracket carries no sign change.
class NoSignChange : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

template <class Real>
Real evaluate(std::span<const Rational> coeffs, const Real& x) {
  Real acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + to_real<Real>(coeffs[i]);
  return acc;
}

inline std::vector<Rational> derivative(std::span<const Rational> coeffs) {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < coeffs.size(); ++i) out.push_back(coeffs[i] * static_cast<int>(i));
  return out;
}

template <class Real>
int sign_of(const Real& v) {
  return (v > 0) - (v < 0);
}

/// Root of the polynomial strictly inside the bracket.
///
/// Bisection until the bracket has shrunk by 2^10, then safeguarded Newton:
/// every iterate keeps a sign-changing bracket and any Newton step leaving it
/// is replaced by a bisection step. Throws NoSignChange if P(lo) P(hi) >= 0.
template <class Real>
Real bracketed_root(const BracketedPolynomial<Real>& c) {
  using std::abs;
  using boost::multiprecision::abs;
  const std::span<const Rational> coeffs(c.coefficients);
  const std::vector<Rational> dcoeffs = derivative(coeffs);
  Real lo = c.lo;
  Real hi = c.hi;
  if (!(lo < hi)) throw InvalidArgument("bracketed_root: empty bracket");
  const int slo = sign_of(evaluate(coeffs, lo));
  const int shi = sign_of(evaluate(coeffs, hi));
  if (slo == 0 || shi == 0 || slo == shi) {
    throw NoSignChange("bracketed_root: no sign change across the bracket");
  }

  const Real width0 = hi - lo;
  const Real coarse = width0 / 1024;
  while (hi - lo > coarse) {
    const Real mid = (lo + hi) / 2;
    const int sm = sign_of(evaluate(coeffs, mid));
    if (sm == 0) return mid;
    (sm == slo ? lo : hi) = mid;
  }

  const Real eps = std::numeric_limits<Real>::epsilon();
  Real x = (lo + hi) / 2;
  for (int iter = 0; iter < 400; ++iter) {
    const Real fx = evaluate(coeffs, x);
    const int sx = sign_of(fx);
    if (sx == 0) return x;
    (sx == slo ? lo : hi) = x;
    const Real dfx = evaluate(std::span<const Rational>(dcoeffs), x);
    Real next = (lo + hi) / 2;
    if (dfx != 0) {
      const Real newton = x - fx / dfx;
      if (newton > lo && newton < hi) next = newton;
    }
    const Real step = abs(next - x);
    x = next;
    if (step <= 4 * eps * abs(x) || hi - lo <= 4 * eps * abs(x)) break;
  }
  return x;
}

/// Sub-brackets of (lo, hi) on which a polynomial of degree <= 3 changes
/// sign, in increasing order. The interval is split at the real critical
/// points so each returned bracket contains exactly one simple root.
template <class Real>
std::vector<std::pair<Real, Real>> real_root_brackets(std::span<const Rational> coeffs, Real lo,
                                                      Real hi) {
  using std::sqrt;
  using boost::multiprecision::sqrt;
  if (coeffs.size() > 4) throw InvalidArgument("real_root_brackets: degree above 3");
  std::vector<Real> cuts{lo};
  const std::vector<Rational> d = derivative(coeffs);
  std::vector<Real> crit;
  if (d.size() == 3 && d[2] != 0) {
    const Real a = to_real<Real>(d[2]);
    const Real b = to_real<Real>(d[1]);
    const Real cc = to_real<Real>(d[0]);
    const Real disc = b * b - 4 * a * cc;
    if (disc >= 0) {
      const Real r = sqrt(disc);
      crit.push_back((-b - r) / (2 * a));
      crit.push_back((-b + r) / (2 * a));
    }
  } else if (d.size() >= 2 && d[1] != 0) {
    crit.push_back(-to_real<Real>(d[0]) / to_real<Real>(d[1]));
  }
  std::sort(crit.begin(), crit.end());
  for (const Real& x : crit) {
    if (x > lo && x < hi) cuts.push_back(x);
  }
  cuts.push_back(hi);
  std::vector<std::pair<Real, Real>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int a = sign_of(evaluate(coeffs, cuts[i]));
    const int b = sign_of(evaluate(coeffs, cuts[i + 1]));
    if (a != 0 && b != 0 && a != b) out.emplace_back(cuts[i], cuts[i + 1]);
  }
  return out;
}

}  // namespace sdesign
