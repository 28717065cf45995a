#include "sdesign/point_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "sdesign/errors.hpp"

namespace sdesign {

using nlohmann::json;

namespace {

json rows_json(const PointMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    out.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return out;
}

PointMatrix rows_from_json(const json& j, std::size_t cols, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string("design file: '") + what + "' must be an array");
  PointMatrix out(cols);
  out.reserve(j.size());
  for (const auto& r : j) {
    const auto v = r.get<std::vector<double>>();
    if (v.size() != cols) {
      throw InvalidArgument(std::string("design file: row of '") + what + "' has " +
                            std::to_string(v.size()) + " entries, expected " + std::to_string(cols));
    }
    out.push_back(v);
  }
  return out;
}

bool all_equal(const std::vector<double>& w) {
  for (double x : w) {
    if (x != w.front()) return false;
  }
  return true;
}

json envelope(const char* space, int dim, int strength, std::size_t count, bool weighted,
              const std::vector<double>& weights, const Recipe& recipe) {
  return {{"space", space},     {"dim", dim},         {"strength", strength},
          {"count", count},     {"weighted", weighted}, {"weights", weights},
          {"recipe", recipe.to_json()}, {"version", kFormatVersion}};
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("design file: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("design file: bad field '") + key + "': " + e.what());
  }
}

Invariance invariance_from_string(const std::string& s) {
  for (auto inv : {Invariance::symmetric, Invariance::pgl, Invariance::cyclic, Invariance::none}) {
    if (to_string(inv) == s) return inv;
  }
  throw InvalidArgument("design file: unknown invariance '" + s + "'");
}

}  // namespace

std::string space_of(const AnyDesign& design) {
  struct Visitor {
    std::string operator()(const SphericalPointSet&) const { return "sphere"; }
    std::string operator()(const SimplexPointSet&) const { return "simplex"; }
    std::string operator()(const ToricDesign&) const { return "torus"; }
    std::string operator()(const IntervalDesign&) const { return "interval"; }
    std::string operator()(const ComplexLineSet&) const { return "cp"; }
    std::string operator()(const FusionFrame&) const { return "frame"; }
  };
  return std::visit(Visitor{}, design);
}

json to_json(const AnyDesign& design) {
  struct Visitor {
    json operator()(const SphericalPointSet& x) const {
      json j = envelope("sphere", x.dim(), x.strength, x.size(), x.weighted, x.weights, x.recipe);
      j["points"] = rows_json(x.points);
      return j;
    }
    json operator()(const SimplexPointSet& x) const {
      json j = envelope("simplex", x.d, x.strength, x.size(), !all_equal(x.weights), x.weights, x.recipe);
      j["points"] = rows_json(x.points);
      j["invariance"] = to_string(x.invariance);
      j["q"] = x.q;
      return j;
    }
    json operator()(const ToricDesign& x) const {
      const std::vector<double> w(x.n, 1.0 / static_cast<double>(x.n));
      json j = envelope("torus", x.d, x.t, x.n, false, w, x.recipe);
      j["points"] = rows_json(x.angles);
      j["n"] = x.n;
      j["generators"] = x.generators;
      return j;
    }
    json operator()(const IntervalDesign& x) const {
      // dim carries the weight parameter d of (1-u^2)^{d-1}.
      json j = envelope("interval", x.d, x.strength, x.nodes.size(), !all_equal(x.weights), x.weights,
                        x.recipe);
      json pts = json::array();
      for (double v : x.nodes) pts.push_back({v});
      j["points"] = pts;
      return j;
    }
    json operator()(const ComplexLineSet& x) const {
      json j = envelope("cp", x.d, x.strength, x.size(), !all_equal(x.weights), x.weights, x.recipe);
      j["points"] = rows_json(x.vectors);
      return j;
    }
    json operator()(const FusionFrame& x) const {
      json j = envelope("frame", x.ambient, x.strength, x.size(), !all_equal(x.weights), x.weights,
                        x.recipe);
      json planes = json::array();
      for (std::size_t i = 0; i < x.size(); ++i) {
        const auto u = x.u.row(i);
        const auto w = x.w.row(i);
        planes.push_back({std::vector<double>(u.begin(), u.end()), std::vector<double>(w.begin(), w.end())});
      }
      j["planes"] = planes;
      return j;
    }
  };
  return std::visit(Visitor{}, design);
}

AnyDesign design_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("design file: top level must be an object");
  const int version = field<int>(j, "version");
  if (version != kFormatVersion) {
    throw InvalidArgument("design file: unsupported version " + std::to_string(version));
  }
  const auto space = field<std::string>(j, "space");
  const int dim = field<int>(j, "dim");
  const int strength = field<int>(j, "strength");
  const auto weights = field<std::vector<double>>(j, "weights");
  const Recipe recipe = j.contains("recipe") ? Recipe::from_json(j.at("recipe")) : Recipe{};
  if (dim < 1) throw InvalidArgument("design file: dim must be >= 1");

  auto check_count = [&](std::size_t rows) {
    if (rows != weights.size()) throw InvalidArgument("design file: weights and points differ in length");
    if (j.contains("count") && field<std::size_t>(j, "count") != rows) {
      throw InvalidArgument("design file: count does not match the points");
    }
  };

  if (space == "sphere") {
    SphericalPointSet x;
    x.points = rows_from_json(j.at("points"), dim, "points");
    x.weights = weights;
    x.strength = strength;
    x.weighted = field<bool>(j, "weighted");
    x.recipe = recipe;
    check_count(x.size());
    return x;
  }
  if (space == "simplex") {
    SimplexPointSet x;
    x.d = dim;
    x.points = rows_from_json(j.at("points"), dim, "points");
    x.weights = weights;
    x.strength = strength;
    x.invariance = invariance_from_string(field<std::string>(j, "invariance"));
    x.q = field<int>(j, "q");
    x.recipe = recipe;
    check_count(x.size());
    return x;
  }
  if (space == "torus") {
    ToricDesign x;
    x.d = dim;
    x.t = strength;
    x.n = field<std::uint64_t>(j, "n");
    x.generators = field<std::vector<std::uint64_t>>(j, "generators");
    x.angles = rows_from_json(j.at("points"), dim, "points");
    x.recipe = recipe;
    if (x.generators.size() != static_cast<std::size_t>(dim) || x.angles.rows() != x.n) {
      throw InvalidArgument("design file: torus generators or point count inconsistent with n");
    }
    check_count(x.angles.rows());
    return x;
  }
  if (space == "interval") {
    IntervalDesign x;
    x.d = dim;
    const PointMatrix pts = rows_from_json(j.at("points"), 1, "points");
    x.nodes = pts.data();
    x.weights = weights;
    x.strength = strength;
    x.recipe = recipe;
    check_count(x.nodes.size());
    return x;
  }
  if (space == "cp") {
    ComplexLineSet x;
    x.d = dim;
    x.vectors = rows_from_json(j.at("points"), 2 * static_cast<std::size_t>(dim), "points");
    x.weights = weights;
    x.strength = strength;
    x.recipe = recipe;
    check_count(x.size());
    return x;
  }
  if (space == "frame") {
    FusionFrame x;
    x.ambient = dim;
    x.u = PointMatrix(static_cast<std::size_t>(dim));
    x.w = PointMatrix(static_cast<std::size_t>(dim));
    const auto& planes = j.at("planes");
    if (!planes.is_array()) throw InvalidArgument("design file: 'planes' must be an array");
    for (const auto& p : planes) {
      if (!p.is_array() || p.size() != 2) throw InvalidArgument("design file: each plane needs two vectors");
      const auto u = p[0].get<std::vector<double>>();
      const auto w = p[1].get<std::vector<double>>();
      if (u.size() != static_cast<std::size_t>(dim) || w.size() != u.size()) {
        throw InvalidArgument("design file: plane vector length differs from dim");
      }
      x.u.push_back(u);
      x.w.push_back(w);
    }
    x.weights = weights;
    x.strength = strength;
    x.recipe = recipe;
    check_count(x.size());
    return x;
  }
  throw InvalidArgument("design file: unknown space '" + space + "'");
}

void write_csv(const PointMatrix& points, std::ostream& os) {
  char buf[32];
  for (std::size_t i = 0; i < points.rows(); ++i) {
    const auto r = points.row(i);
    for (std::size_t c = 0; c < r.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", r[c]);
      if (c > 0) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

PointMatrix read_csv(std::istream& is) {
  PointMatrix out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw InvalidArgument("csv line " + std::to_string(line_no) + ": cannot parse '" + cell + "'");
      }
    }
    if (out.cols() == 0) out = PointMatrix(row.size());
    if (row.size() != out.cols()) {
      throw InvalidArgument("csv line " + std::to_string(line_no) + ": expected " +
                            std::to_string(out.cols()) + " columns");
    }
    out.push_back(row);
  }
  return out;
}

AnyDesign load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    SphericalPointSet x;
    x.points = read_csv(in);
    if (x.points.rows() == 0) throw InvalidArgument("'" + path + "' contains no points");
    x.weights.assign(x.size(), 1.0 / static_cast<double>(x.size()));
    x.recipe = {"csv", {{"path", path}}, {}};
    return x;
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
  return design_from_json(j);
}

void save_design(const AnyDesign& design, const std::string& path, const std::string& format) {
  if (format != "json" && format != "csv") throw InvalidArgument("unknown format '" + format + "'");
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw InvalidArgument("cannot write '" + path + "'");
    os = &file;
  }
  if (format == "json") {
    *os << to_json(design).dump() << '\n';
    return;
  }
  struct Points {
    PointMatrix operator()(const SphericalPointSet& x) const { return x.points; }
    PointMatrix operator()(const SimplexPointSet& x) const { return x.points; }
    PointMatrix operator()(const ToricDesign& x) const { return x.angles; }
    PointMatrix operator()(const IntervalDesign& x) const {
      PointMatrix m(1);
      for (double v : x.nodes) m.push_back(std::span<const double>(&v, 1));
      return m;
    }
    PointMatrix operator()(const ComplexLineSet& x) const { return x.vectors; }
    PointMatrix operator()(const FusionFrame& x) const {
      PointMatrix m(2 * x.u.cols());
      std::vector<double> row;
      for (std::size_t i = 0; i < x.size(); ++i) {
        row.assign(x.u.row(i).begin(), x.u.row(i).end());
        row.insert(row.end(), x.w.row(i).begin(), x.w.row(i).end());
        m.push_back(row);
      }
      return m;
    }
  };
  write_csv(std::visit(Points{}, design), *os);
}

}  // namespace sdesign
