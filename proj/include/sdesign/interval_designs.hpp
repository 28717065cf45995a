#pragma once

#include <vector>

#include "recipe.hpp"
#include "reference_moments.hpp"
#include "report.hpp"

namespace sdesign {

/// Number of the form rational + coefficient * sqrt(radicand), all exact.
struct Surd {
  Rational rational;
  Rational coefficient;
  Rational radicand;

  [[nodiscard]] double value() const;
  /// sqrt(value()) evaluated in extended precision, rounded once to double.
  [[nodiscard]] double sqrt_value() const;
};

/// Equal-weight quadrature nodes on [-1, 1] for the weight (1-u^2)^{d-1}.
struct IntervalDesign {
  int d = 1;
  std::vector<double> nodes;
  std::vector<double> weights;
  int strength = 0;
  /// Squared node magnitudes A_d, B_d, C_d (empty for designs built from raw nodes).
  std::vector<Surd> squared_nodes;
  Recipe recipe;
};

/// The seven nodes {0, +-sqrt(A_d), +-sqrt(B_d), +-sqrt(C_d)} exact to degree 5.
[[nodiscard]] IntervalDesign interval5_design(int d);

/// Interval design from explicit nodes with equal weights.
[[nodiscard]] IntervalDesign interval_from_nodes(int d, std::vector<double> nodes);

inline constexpr double kIntervalTolerance = 1e-11;

/// Compares sum w_i v_i^k with interval_moment(d, k) for every k <= t.
/// Throws InvalidArgument for nodes outside [-1, 1].
[[nodiscard]] VerificationReport verify_interval(const IntervalDesign& design, int t,
                                                 double tol = kIntervalTolerance);

}  // namespace sdesign
