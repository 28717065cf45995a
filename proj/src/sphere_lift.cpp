#include "sdesign/sphere_lift.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "sdesign/errors.hpp"
#include "sdesign/finite_field.hpp"
#include "sdesign/kernels.hpp"
#include "sdesign/multi_index.hpp"
#include "sdesign/reference_moments.hpp"
#include "sdesign/simplex_designs.hpp"
#include "sdesign/toric_designs.hpp"

namespace sdesign {

SphericalPointSet polygon_design(int m, double phase) {
  if (m < 1) throw InvalidArgument("polygon_design: m must be >= 1");
  SphericalPointSet out;
  out.points = PointMatrix(static_cast<std::size_t>(m), 2);
  out.weights.assign(m, 1.0 / m);
  out.strength = m - 1;
  for (int j = 0; j < m; ++j) {
    const double a = 2.0 * std::numbers::pi * j / m + phase;
    out.points.row(j)[0] = std::cos(a);
    out.points.row(j)[1] = std::sin(a);
  }
  out.recipe = {"polygon_design", {{"m", m}, {"phase", phase}}, {}};
  return out;
}

namespace {

std::vector<double> unit_direction(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(dim);
  double norm = 0.0;
  while (norm == 0.0) {
    for (auto& c : v) c = normal(rng);
    norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  }
  for (auto& c : v) c /= norm;
  return v;
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Pairs (i, j) with |x_i - x_j| < threshold, found through a projection sort.
template <class Visit>
void close_pairs(const PointMatrix& pts, double threshold, Visit visit) {
  const std::size_t n = pts.rows();
  if (n < 2) return;
  const auto dir = unit_direction(pts.cols(), 0x5eed);
  std::vector<std::pair<double, std::size_t>> proj(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = pts.row(i);
    proj[i] = {std::inner_product(x.begin(), x.end(), dir.begin(), 0.0), i};
  }
  std::sort(proj.begin(), proj.end());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n && proj[b].first - proj[a].first < threshold; ++b) {
      const double dist = distance(pts.row(proj[a].second), pts.row(proj[b].second));
      if (dist < threshold) visit(proj[a].second, proj[b].second, dist);
    }
  }
}

}  // namespace

double min_pairwise_distance_below(const PointMatrix& pts, double threshold) {
  double best = std::numeric_limits<double>::infinity();
  close_pairs(pts, threshold, [&](std::size_t, std::size_t, double d) { best = std::min(best, d); });
  return best;
}

namespace {

constexpr double kCollisionDistance = 1e-8;
constexpr int kPhaseAttempts = 8;

SphericalPointSet emit_planes(const FusionFrame& frame, int m, std::span<const int> copies,
                              std::span<const double> phases) {
  SphericalPointSet out;
  out.points = PointMatrix(static_cast<std::size_t>(frame.ambient));
  std::vector<double> x(frame.ambient);
  for (std::size_t v = 0; v < frame.size(); ++v) {
    const auto u = frame.u.row(v);
    const auto w = frame.w.row(v);
    const int total = copies[v] * m;
    for (int j = 0; j < total; ++j) {
      const double a = 2.0 * std::numbers::pi * j / total + phases[v];
      const double c = std::cos(a);
      const double s = std::sin(a);
      for (int i = 0; i < frame.ambient; ++i) x[i] = c * u[i] + s * w[i];
      out.points.push_back(x);
    }
  }
  return out;
}

}  // namespace

SphericalPointSet lift(const FusionFrame& frame, int m, LiftMode mode, std::uint64_t seed,
                       bool check_tight) {
  if (m < 1) throw InvalidArgument("lift: polygon size must be >= 1");
  if (frame.size() == 0) throw InvalidArgument("lift: empty frame");
  if (check_tight && frame.strength >= 1) {
    const auto rep = verify_tff(frame, frame.strength);
    if (!rep.passed) {
      throw InvalidArgument("lift: frame is not tight at strength " + std::to_string(frame.strength) +
                            " (" + rep.summary() + ")");
    }
  }
  const int strength = std::min(m - 1, 2 * frame.strength + 1);
  const nlohmann::json params = {{"m", m}, {"mode", mode == LiftMode::equal ? "equal" : "weighted"},
                                 {"seed", seed}, {"check_tight", check_tight}};
  const double total_weight = std::accumulate(frame.weights.begin(), frame.weights.end(), 0.0);

  if (mode == LiftMode::weighted) {
    std::vector<int> ones(frame.size(), 1);
    std::vector<double> zero(frame.size(), 0.0);
    SphericalPointSet raw = emit_planes(frame, m, ones, zero);
    std::vector<double> w(raw.size());
    for (std::size_t v = 0; v < frame.size(); ++v) {
      for (int j = 0; j < m; ++j) w[v * m + j] = frame.weights[v] / (m * total_weight);
    }
    // Merge each point into the lowest-index point it coincides with.
    std::vector<std::size_t> parent(raw.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    close_pairs(raw.points, 1e-12, [&](std::size_t a, std::size_t b, double) {
      const std::size_t ra = find(a);
      const std::size_t rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    });
    SphericalPointSet out;
    out.points = PointMatrix(static_cast<std::size_t>(frame.ambient));
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const std::size_t r = find(i);
      auto [it, fresh] = slot.emplace(r, out.weights.size());
      if (fresh) {
        out.points.push_back(raw.points.row(r));
        out.weights.push_back(0.0);
      }
      out.weights[it->second] += w[i];
    }
    out.strength = strength;
    out.weighted = true;
    out.recipe = {"lift", params, {frame.recipe}};
    return out;
  }

  const double w_min = *std::min_element(frame.weights.begin(), frame.weights.end());
  if (!(w_min > 0.0)) throw InvalidArgument("lift: frame weights must be positive");
  std::vector<int> copies(frame.size());
  for (std::size_t v = 0; v < frame.size(); ++v) {
    const double r = frame.weights[v] / w_min;
    copies[v] = static_cast<int>(std::lround(r));
    if (std::abs(r - copies[v]) > 1e-9 * r) {
      throw InvalidArgument("lift: equal mode needs weights that are integer multiples of the smallest");
    }
  }
  std::vector<double> phases(frame.size(), 0.0);
  for (int attempt = 0; attempt <= kPhaseAttempts; ++attempt) {
    if (attempt > 0) {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
      std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
      for (auto& p : phases) p = uni(rng);
    }
    SphericalPointSet out = emit_planes(frame, m, copies, phases);
    if (min_pairwise_distance_below(out.points, kCollisionDistance) < kCollisionDistance) continue;
    out.weights.assign(out.size(), 1.0 / static_cast<double>(out.size()));
    out.strength = strength;
    out.weighted = false;
    out.recipe = {"lift", params, {frame.recipe}};
    if (attempt > 0) out.recipe.params["phase_attempts"] = attempt;
    return out;
  }
  throw ConstructionError("lift: points still collide after re-phasing");
}

SphericalPointSet rabau_bajnok(const SphericalPointSet& y, const IntervalDesign& u) {
  if (y.dim() != 2 * u.d) {
    throw InvalidArgument("rabau_bajnok: interval weight parameter " + std::to_string(u.d) +
                          " does not match sphere dimension " + std::to_string(y.dim()));
  }
  SphericalPointSet out;
  out.points = PointMatrix(static_cast<std::size_t>(y.dim() + 1));
  std::vector<double> x(y.dim() + 1);
  for (std::size_t a = 0; a < u.nodes.size(); ++a) {
    const double ua = u.nodes[a];
    const double r = std::sqrt(std::max(0.0, 1.0 - ua * ua));
    for (std::size_t b = 0; b < y.size(); ++b) {
      const auto yb = y.points.row(b);
      x[0] = ua;
      for (int i = 0; i < y.dim(); ++i) x[i + 1] = r * yb[i];
      out.points.push_back(x);
      out.weights.push_back(u.weights[a] * y.weights[b]);
    }
  }
  out.strength = y.strength;
  const bool uniform_u = std::all_of(u.weights.begin(), u.weights.end(),
                                     [&](double w) { return w == u.weights.front(); });
  out.weighted = y.weighted || !uniform_u;
  out.recipe = {"rabau_bajnok", nlohmann::json::object(), {y.recipe, u.recipe}};
  return out;
}

std::string to_string(SphereMethod m) {
  switch (m) {
    case SphereMethod::automatic: return "auto";
    case SphereMethod::monomial: return "monomial";
    case SphereMethod::pairsum: return "pairsum";
    case SphereMethod::directional: return "directional";
  }
  return "?";
}

SphereMethod sphere_method_from_string(const std::string& s) {
  if (s == "auto") return SphereMethod::automatic;
  if (s == "monomial") return SphereMethod::monomial;
  if (s == "pairsum") return SphereMethod::pairsum;
  if (s == "directional") return SphereMethod::directional;
  throw InvalidArgument("unknown verification method '" + s + "'");
}

namespace {

DoubleDouble rational_dd(const Rational& r) {
  const double hi = to_double(r);
  return {hi, to_double(r - Rational(hi))};
}

class ThreadScope {
 public:
  explicit ThreadScope(int n) : saved_(kernel_threads()) {
    if (n > 0) set_kernel_threads(n);
  }
  ~ThreadScope() { set_kernel_threads(saved_); }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int saved_;
};

void check_points(const SphericalPointSet& x) {
  if (x.size() == 0 || x.dim() < 1) throw InvalidArgument("verify_spherical: empty point set");
  if (x.weights.size() != x.size()) throw InvalidArgument("verify_spherical: one weight per point required");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto p = x.points.row(i);
    const double n2 = dot_dd(p, p).value();
    if (!(std::abs(n2 - 1.0) <= 1e-12)) {
      throw InvalidArgument("verify_spherical: point " + std::to_string(i) + " is not a unit vector");
    }
    if (!(x.weights[i] > 0.0)) throw InvalidArgument("verify_spherical: weights must be positive");
  }
}

void check_monomials(const SphericalPointSet& x, int t, bool serial_kernels, VerificationReport& rep) {
  const int dim = x.dim();
  std::vector<MultiIndex> alphas;
  std::vector<int> degrees;
  for (int k = 0; k <= t; ++k) {
    for (auto& a : multi_indices_of_degree(dim, k)) {
      alphas.push_back(std::move(a));
      degrees.push_back(k);
    }
  }
  const auto sums = serial_kernels ? serial::monomial_sums(x.points, x.weights, alphas)
                                   : omp::monomial_sums(x.points, x.weights, alphas);
  NeumaierSum wsum;
  for (double w : x.weights) wsum.add(w);
  const double total = wsum.value();
  std::map<MultiIndex, double> moments;  // keyed by sorted exponents
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    MultiIndex key = alphas[i];
    std::sort(key.begin(), key.end());
    auto it = moments.find(key);
    if (it == moments.end()) it = moments.emplace(key, to_double(sphere_monomial_moment(dim, key))).first;
    rep.record(degrees[i], std::abs(sums[i] / total - it->second));
  }
}

void check_pairsum(const SphericalPointSet& x, int t, bool serial_kernels, VerificationReport& rep) {
  const auto sums = serial_kernels ? serial::pair_power_sums(x.points, x.weights, t)
                                   : omp::pair_power_sums(x.points, x.weights, t);
  for (int k = 0; k <= t; ++k) {
    const DoubleDouble expected = rational_dd(sphere_pair_constant(x.dim(), k));
    const DoubleDouble excess = sums[k] - expected * sums[0];
    rep.record(k, std::sqrt(std::abs(excess.value() / sums[0].value())));
  }
}

void check_directions(const SphericalPointSet& x, int t, const SphereCheckOptions& opts,
                      VerificationReport& rep) {
  NeumaierSum wsum;
  for (double w : x.weights) wsum.add(w);
  const double total = wsum.value();
  std::vector<double> expected(t + 1);
  for (int k = 0; k <= t; ++k) expected[k] = to_double(sphere_pair_constant(x.dim(), k));
  for (int r = 0; r < opts.directions; ++r) {
    const auto v = unit_direction(x.dim(), opts.seed + static_cast<std::uint64_t>(r));
    std::vector<NeumaierSum> acc(t + 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double g = dot_dd(v, x.points.row(i)).value();
      double p = x.weights[i];
      for (int k = 0; k <= t; ++k) {
        acc[k].add(p);
        p *= g;
      }
    }
    for (int k = 0; k <= t; ++k) rep.record(k, std::abs(acc[k].value() / total - expected[k]));
  }
}

}  // namespace

VerificationReport verify_spherical(const SphericalPointSet& x, int t, const SphereCheckOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  if (t < 0) throw InvalidArgument("verify_spherical: t must be >= 0");
  check_points(x);
  ThreadScope threads(opts.threads);

  SphereMethod method = opts.method;
  if (method == SphereMethod::automatic) {
    const double n = static_cast<double>(x.size());
    const double monomial_cost = static_cast<double>(monomial_count(x.dim() + 1, t)) * n;
    method = monomial_cost <= n * n * std::max(t, 1) ? SphereMethod::monomial : SphereMethod::pairsum;
  }
  VerificationReport rep;
  rep.method = to_string(method);
  rep.tolerance = opts.tol;
  rep.threads = opts.serial_reference ? 1 : kernel_threads();
  switch (method) {
    case SphereMethod::monomial: check_monomials(x, t, opts.serial_reference, rep); break;
    case SphereMethod::pairsum: check_pairsum(x, t, opts.serial_reference, rep); break;
    case SphereMethod::directional:
      check_directions(x, t, opts, rep);
      rep.conclusive = false;
      rep.note = "directional sampling checks a necessary condition only";
      break;
    case SphereMethod::automatic: break;
  }
  rep.finish();
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SphericalPointSet sphere5_design(int n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("sphere5_design: dimension must be >= 2");
  SphericalPointSet out;
  if (n == 2) {
    out = polygon_design(6);
  } else if (n % 2 == 0) {
    const int d = n / 2;
    const SimplexPointSet y = simplex2_design(d);
    const ToricDesign x = compact_toric_design(d, 2);
    const FusionFrame frame = cp_to_fusion_frame(concatenate(y, x), 2);
    out = lift(frame, 6, LiftMode::equal, seed);
  } else {
    const int d = (n - 1) / 2;
    out = rabau_bajnok(sphere5_design(n - 1, seed), interval5_design(d));
  }
  out.strength = 5;
  out.recipe = {"sphere5_design", {{"n", n}, {"seed", seed}}, {out.recipe}};
  return out;
}

SphericalPointSet sphere7_design(int n, std::uint64_t seed, std::uint64_t orbit_cap) {
  if (n < 6 || n % 2 != 0) {
    throw InvalidArgument("sphere7_design: dimension must be even and >= 6, got " + std::to_string(n));
  }
  const int d = n / 2;
  const SimplexSeed s = simplex3_seed(d);
  const SimplexPointSet y = is_prime_power(static_cast<std::uint64_t>(d - 1))
                                ? pgl_orbit(s, static_cast<std::uint64_t>(d - 1))
                                : symmetric_orbit(s, orbit_cap);
  const ToricDesign x = compact_toric_design(d, 3);
  const FusionFrame frame = cp_to_fusion_frame(concatenate(y, x), 3);
  SphericalPointSet out = lift(frame, 8, LiftMode::equal, seed);
  out.strength = 7;
  out.recipe = {"sphere7_design", {{"n", n}, {"seed", seed}, {"orbit_cap", orbit_cap}}, {out.recipe}};
  return out;
}

}  // namespace sdesign
