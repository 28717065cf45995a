#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "interval_designs.hpp"
#include "json.hpp"
#include "projective_bridge.hpp"
#include "simplex_designs.hpp"
#include "sphere_lift.hpp"
#include "toric_designs.hpp"

namespace sdesign {

using AnyDesign = std::variant<SphericalPointSet, SimplexPointSet, ToricDesign, IntervalDesign,
                               ComplexLineSet, FusionFrame>;

inline constexpr int kFormatVersion = 1;

/// Common envelope: {"space", "dim", "strength", "count", "weighted",
/// "points", "weights", "recipe", "version"} plus space-specific fields.
/// Spaces: sphere, simplex, torus, interval, cp, frame.
[[nodiscard]] nlohmann::json to_json(const AnyDesign& design);
/// Throws InvalidArgument on malformed input.
[[nodiscard]] AnyDesign design_from_json(const nlohmann::json& j);
[[nodiscard]] std::string space_of(const AnyDesign& design);

/// One point per row, 17 significant digits, comma separated.
void write_csv(const PointMatrix& points, std::ostream& os);
/// Reads rows written by write_csv (blank lines and '#' comments skipped).
[[nodiscard]] PointMatrix read_csv(std::istream& is);

[[nodiscard]] AnyDesign load_design(const std::string& path);
void save_design(const AnyDesign& design, const std::string& path, const std::string& format);

}  // namespace sdesign
