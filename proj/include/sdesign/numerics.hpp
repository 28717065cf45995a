#pragma once

#include <cmath>
#include <span>

namespace sdesign {

/// Error-free transformations and a double-double number type.
///
/// All routines assume IEEE binary64 with round-to-nearest and no
/// reassociation (the library is built with -ffp-contract=off).
struct TwoSumResult {
  double sum;
  double err;
};

inline TwoSumResult two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline TwoSumResult fast_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline TwoSumResult two_prod(double a, double b) {
  const double p = a * b;
#ifdef FP_FAST_FMA
  return {p, std::fma(a, b, -p)};
#else
  // Dekker split.
  constexpr double kSplit = 134217729.0;  // 2^27 + 1
  double t = kSplit * a;
  const double ah = t - (t - a);
  const double al = a - ah;
  t = kSplit * b;
  const double bh = t - (t - b);
  const double bl = b - bh;
  const double err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
  return {p, err};
#endif
}

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  [[nodiscard]] double value() const { return hi + lo; }
};

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  auto [s, e] = two_sum(a.hi, b.hi);
  auto [t, f] = two_sum(a.lo, b.lo);
  e += t;
  auto r = fast_two_sum(s, e);
  r.err += f;
  auto out = fast_two_sum(r.sum, r.err);
  return {out.sum, out.err};
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  auto [p, e] = two_prod(a.hi, b.hi);
  e += a.hi * b.lo + a.lo * b.hi;
  auto r = fast_two_sum(p, e);
  return {r.sum, r.err};
}

inline DoubleDouble& operator+=(DoubleDouble& a, DoubleDouble b) { return a = a + b; }
inline DoubleDouble& operator*=(DoubleDouble& a, DoubleDouble b) { return a = a * b; }

/// 1/sqrt(a) to double-double accuracy: one Newton step from the double estimate.
inline DoubleDouble inv_sqrt_dd(DoubleDouble a) {
  DoubleDouble y(1.0 / std::sqrt(a.hi));
  const DoubleDouble r = DoubleDouble(1.0) - a * y * y;
  return y + y * r * DoubleDouble(0.5);
}

/// Dot product returned as a double-double (compensated, Ogita-Rump-Oishi Dot2).
inline DoubleDouble dot_dd(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto [p, pe] = two_prod(x[i], y[i]);
    auto [t, se] = two_sum(s, p);
    s = t;
    c += pe + se;
  }
  auto r = fast_two_sum(s, c);
  return {r.sum, r.err};
}

/// Neumaier's improved Kahan summation.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(DoubleDouble x) {
    add(x.hi);
    add(x.lo);
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }
  [[nodiscard]] DoubleDouble dd() const {
    auto r = two_sum(sum_, comp_);
    return {r.sum, r.err};
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace sdesign
