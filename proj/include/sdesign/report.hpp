#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace sdesign {

struct DegreeResidual {
  int degree = 0;
  double residual = 0.0;
};

/// Outcome of checking a point set against exact moment constants.
///
/// `passed` always equals `worst_residual <= tolerance`. `conclusive` is false
/// for tests that only check a necessary condition (directional sampling).
struct VerificationReport {
  std::string method;
  std::vector<DegreeResidual> per_degree;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool conclusive = true;
  double wall_seconds = 0.0;
  int threads = 1;
  std::string note;

  /// Records `residual` for `degree`, keeping the per-degree maximum.
  void record(int degree, double residual);
  /// Sets worst_residual and passed from the per-degree table.
  void finish();

  [[nodiscard]] nlohmann::json to_json() const;
  [[nodiscard]] std::string summary() const;
};

}  // namespace sdesign
