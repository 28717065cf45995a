#include "sdesign/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sdesign/errors.hpp"
#include "sdesign/finite_field.hpp"
#include "sdesign/reference_moments.hpp"

namespace sdesign {

namespace {

template <class T>
T param(const Recipe& r, const char* key) {
  if (!r.params.contains(key)) {
    throw InvalidArgument("recipe '" + r.op + "': missing parameter '" + key + "'");
  }
  return r.params.at(key).get<T>();
}

template <class T>
T param_or(const Recipe& r, const char* key, T fallback) {
  return r.params.contains(key) ? r.params.at(key).get<T>() : fallback;
}

template <class T>
T child(const Recipe& r, std::size_t i) {
  if (r.children.size() <= i) throw InvalidArgument("recipe '" + r.op + "': missing input");
  AnyDesign d = replay(r.children[i]);
  if (!std::holds_alternative<T>(d)) {
    throw InvalidArgument("recipe '" + r.op + "': input " + std::to_string(i) + " has the wrong space");
  }
  return std::get<T>(std::move(d));
}

}  // namespace

AnyDesign replay(const Recipe& r) {
  const std::string& op = r.op;
  if (op == "sphere5_design") return sphere5_design(param<int>(r, "n"), param_or<std::uint64_t>(r, "seed", 0));
  if (op == "sphere7_design") {
    return sphere7_design(param<int>(r, "n"), param_or<std::uint64_t>(r, "seed", 0),
                          param_or<std::uint64_t>(r, "orbit_cap", kDefaultOrbitCap));
  }
  if (op == "polygon_design") return polygon_design(param<int>(r, "m"), param_or<double>(r, "phase", 0.0));
  if (op == "lift") {
    const auto mode = param<std::string>(r, "mode") == "weighted" ? LiftMode::weighted : LiftMode::equal;
    return lift(child<FusionFrame>(r, 0), param<int>(r, "m"), mode, param_or<std::uint64_t>(r, "seed", 0),
                param_or<bool>(r, "check_tight", true));
  }
  if (op == "rabau_bajnok") return rabau_bajnok(child<SphericalPointSet>(r, 0), child<IntervalDesign>(r, 1));
  if (op == "simplex2_design") return simplex2_design(param<int>(r, "d"));
  if (op == "symmetric_orbit") {
    return symmetric_orbit(simplex3_seed(param<int>(r, "d")),
                           param_or<std::uint64_t>(r, "cap", kDefaultOrbitCap));
  }
  if (op == "pgl_orbit") return pgl_orbit(simplex3_seed(param<int>(r, "d")), param<std::uint64_t>(r, "q"));
  if (op == "interval5_design") return interval5_design(param<int>(r, "d"));
  if (op == "interval_from_nodes") {
    return interval_from_nodes(param<int>(r, "d"), param<std::vector<double>>(r, "nodes"));
  }
  if (op == "toric_design") return toric_design(param<int>(r, "d"), param<int>(r, "t"));
  if (op == "singer_toric_design") return singer_toric_design(param<int>(r, "d"), param<int>(r, "t"));
  if (op == "toric_from_generators") {
    return toric_from_generators(param<int>(r, "d"), param<int>(r, "t"), param<std::uint64_t>(r, "n"),
                                 param<std::vector<std::uint64_t>>(r, "generators"));
  }
  if (op == "concatenate") return concatenate(child<SimplexPointSet>(r, 0), child<ToricDesign>(r, 1));
  if (op == "cp_to_fusion_frame") {
    return cp_to_fusion_frame(child<ComplexLineSet>(r, 0), param<int>(r, "strength"));
  }
  throw InvalidArgument("recipe: operation '" + op + "' cannot be replayed");
}

namespace {

std::uint64_t to_u64(const BigInt& v) { return static_cast<std::uint64_t>(v); }

// For a simplex point p the toric index j enters the line only through
// j (g_k - g_k0) mod n over the support of p, so the lines repeat with period
// n / g_p where g_p = gcd(n, those differences), each line g_p times.
TableRow pipeline_row(int n, int t, const SimplexPointSet& y, const ToricDesign& x, int m) {
  std::vector<std::uint64_t> period_gcd(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto p = y.points.row(i);
    std::uint64_t g = x.n;
    int k0 = -1;
    for (int k = 0; k < x.d; ++k) {
      if (!(p[k] > 0.0)) continue;
      if (k0 < 0) {
        k0 = k;
        continue;
      }
      g = std::gcd(g, (x.generators[k] % x.n + x.n - x.generators[k0] % x.n) % x.n);
    }
    period_gcd[i] = g;
  }
  const std::uint64_t g_min = *std::min_element(period_gcd.begin(), period_gcd.end());
  TableRow row;
  row.n = n;
  row.strength = t;
  row.simplex_points = y.size();
  row.toric_points = x.n;
  for (auto g : period_gcd) {
    if (g % g_min != 0) throw ConstructionError("cardinality_table: multiplicities are not multiples");
    row.distinct_lines += x.n / g;
  }
  // lift() gives each line g_p / g_min planes.
  row.frame_size = y.size() * (x.n / g_min);
  row.count = row.frame_size * static_cast<std::uint64_t>(m);
  row.route = y.recipe.op + "(" + std::to_string(y.d) + ") x " + x.recipe.op + "(n=" + std::to_string(x.n) + ")";
  return row;
}

}  // namespace

std::vector<TableRow> cardinality_table(int max_n, std::uint64_t orbit_cap) {
  if (max_n < 2) throw InvalidArgument("cardinality_table: max_n must be >= 2");
  std::vector<TableRow> rows;
  TableRow prev_even;
  for (int n = 2; n <= max_n; ++n) {
    TableRow row;
    if (n == 2) {
      row.n = 2;
      row.strength = 5;
      row.route = "hexagon";
      row.frame_size = 1;
      row.count = 6;
    } else if (n % 2 == 0) {
      const int d = n / 2;
      row = pipeline_row(n, 5, simplex2_design(d), compact_toric_design(d, 2), 6);
    } else {
      row = prev_even;
      row.n = n;
      row.count = prev_even.count * 7;
      row.route = "interval5(" + std::to_string((n - 1) / 2) + ") x [n=" + std::to_string(n - 1) + "]";
    }
    if (n % 2 == 0) prev_even = row;
    row.polynomial_route = true;
    row.dgs_bound = to_u64(dgs_lower_bound(n, 5));
    row.ratio = static_cast<double>(row.count) / std::pow(static_cast<double>(n), 3);
    rows.push_back(row);
  }
  for (int n = 6; n <= max_n; n += 2) {
    const int d = n / 2;
    const SimplexSeed seed = simplex3_seed(d);
    const bool pgl = is_prime_power(static_cast<std::uint64_t>(d - 1)).has_value();
    if (!pgl && symmetric_orbit_size(seed) > orbit_cap) {
      TableRow row;
      row.n = n;
      row.strength = 7;
      row.simplex_points = symmetric_orbit_size(seed);
      row.route = "symmetric_orbit(" + std::to_string(d) + ") exceeds the orbit cap";
      row.dgs_bound = to_u64(dgs_lower_bound(n, 7));
      rows.push_back(row);
      continue;
    }
    const SimplexPointSet y = pgl ? pgl_orbit(seed, static_cast<std::uint64_t>(d - 1))
                                  : symmetric_orbit(seed, orbit_cap);
    TableRow row = pipeline_row(n, 7, y, compact_toric_design(d, 3), 8);
    row.polynomial_route = pgl;
    row.dgs_bound = to_u64(dgs_lower_bound(n, 7));
    row.ratio = static_cast<double>(row.count) / std::pow(static_cast<double>(n), 6);
    rows.push_back(row);
  }
  return rows;
}

bool ratios_bounded(const std::vector<double>& ratios) {
  if (ratios.size() < 2) return true;
  const std::size_t half = ratios.size() / 2;
  const double first = *std::max_element(ratios.begin(), ratios.begin() + half);
  return std::all_of(ratios.begin() + half, ratios.end(), [&](double r) { return r <= first; });
}

}  // namespace sdesign
