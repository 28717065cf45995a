#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace sdesign {

/// One node of a construction tree: the operation, its parameters, and the
/// recipes of its inputs. Replaying the root reproduces the output exactly.
struct Recipe {
  std::string op;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Recipe> children;

  [[nodiscard]] nlohmann::json to_json() const;
  static Recipe from_json(const nlohmann::json& j);
};

}  // namespace sdesign
