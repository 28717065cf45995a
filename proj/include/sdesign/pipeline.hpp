#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "point_io.hpp"
#include "recipe.hpp"

namespace sdesign {

/// Rebuilds a design by walking its construction tree bottom-up.
[[nodiscard]] AnyDesign replay(const Recipe& recipe);

/// One row of the cardinality table.
struct TableRow {
  int n = 0;
  int strength = 0;
  std::string route;
  std::uint64_t simplex_points = 0;
  std::uint64_t toric_points = 0;
  std::uint64_t distinct_lines = 0;
  std::uint64_t frame_size = 0;  // planes counted with multiplicity
  std::uint64_t count = 0;
  std::uint64_t dgs_bound = 0;
  bool polynomial_route = false;  // 5-designs, or 7-designs with n/2 - 1 a prime power
  double ratio = 0.0;             // count / n^3 (t=5) or count / n^6 (t=7)
};

/// Exact cardinalities of sphere5_design(n) for 2 <= n <= max_n and
/// sphere7_design(n) for even 6 <= n <= max_n, computed from the construction
/// stages without materializing the sphere points. Rows whose symmetric orbit
/// exceeds `orbit_cap` report count 0.
[[nodiscard]] std::vector<TableRow> cardinality_table(int max_n,
                                                      std::uint64_t orbit_cap = kDefaultOrbitCap);

/// True when no ratio in the second half of the series exceeds the maximum
/// ratio of the first half.
[[nodiscard]] bool ratios_bounded(const std::vector<double>& ratios);

}  // namespace sdesign
