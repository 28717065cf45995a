#include "sdesign/projective_bridge.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "sdesign/errors.hpp"
#include "sdesign/kernels.hpp"
#include "sdesign/multi_index.hpp"
#include "sdesign/reference_moments.hpp"

namespace sdesign {

void canonicalize_phase(std::span<double> v) {
  const std::size_t d = v.size() / 2;
  std::size_t best = 0;
  double best_mod = -1.0;
  for (std::size_t n = 0; n < d; ++n) {
    const double m = std::hypot(v[n], v[d + n]);
    if (m > best_mod) {
      best_mod = m;
      best = n;
    }
  }
  if (best_mod <= 0.0) return;
  // Multiply by conj(z_best) / |z_best|.
  const double c = v[best] / best_mod;
  const double s = -v[d + best] / best_mod;
  for (std::size_t n = 0; n < d; ++n) {
    const double re = v[n];
    const double im = v[d + n];
    v[n] = re * c - im * s;
    v[d + n] = re * s + im * c;
  }
  v[best] = best_mod;
  v[d + best] = 0.0;
}

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto k : key) {
      h ^= k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

void check_pair(const SimplexPointSet& y, const ToricDesign& x) {
  if (y.d != x.d) {
    throw InvalidArgument("concatenate: simplex dimension " + std::to_string(y.d) +
                          " != toric dimension " + std::to_string(x.d));
  }
  if (y.points.cols() != static_cast<std::size_t>(y.d) || y.weights.size() != y.size()) {
    throw InvalidArgument("concatenate: malformed simplex point set");
  }
  if (x.generators.size() != static_cast<std::size_t>(x.d) || x.angles.rows() != x.n) {
    throw InvalidArgument("concatenate: malformed toric design");
  }
}

// Two lines from (p, j) and (p, j') coincide exactly when the phase
// differences against the first supported coordinate agree, and those are
// the integers j (g_n - g_k0) mod n.
std::vector<std::uint64_t> line_key(std::size_t yi, std::span<const double> p, const ToricDesign& x,
                                    std::uint64_t j) {
  std::vector<std::uint64_t> key{yi};
  int k0 = -1;
  for (int n = 0; n < x.d; ++n) {
    if (!(p[n] > 0.0)) continue;
    if (k0 < 0) {
      k0 = n;
      continue;
    }
    const std::uint64_t diff = (x.generators[n] % x.n + x.n - x.generators[k0] % x.n) % x.n;
    key.push_back(static_cast<std::uint64_t>((static_cast<unsigned __int128>(j) * diff) % x.n));
  }
  return key;
}

}  // namespace

ComplexLineSet concatenate(const SimplexPointSet& y, const ToricDesign& x) {
  check_pair(y, x);
  const int d = y.d;
  ComplexLineSet out;
  out.d = d;
  out.vectors = PointMatrix(static_cast<std::size_t>(2 * d));
  out.strength = std::min(y.strength, x.t);
  out.recipe = {"concatenate", {{"d", d}}, {y.recipe, x.recipe}};
  std::unordered_map<std::vector<std::uint64_t>, std::size_t, VectorHash> index;
  std::vector<double> v(2 * d);
  const double wx = 1.0 / static_cast<double>(x.n);
  for (std::size_t yi = 0; yi < y.size(); ++yi) {
    const auto p = y.points.row(yi);
    for (std::uint64_t j = 0; j < x.n; ++j) {
      const double w = y.weights[yi] * wx;
      auto [it, fresh] = index.emplace(line_key(yi, p, x, j), out.weights.size());
      if (!fresh) {
        out.weights[it->second] += w;
        continue;
      }
      const auto phi = x.angles.row(j);
      for (int n = 0; n < d; ++n) {
        const double r = std::sqrt(std::max(p[n], 0.0));
        v[n] = r * std::cos(phi[n]);
        v[d + n] = r * std::sin(phi[n]);
      }
      canonicalize_phase(v);
      out.vectors.push_back(v);
      out.weights.push_back(w);
    }
  }
  return out;
}

std::vector<std::uint64_t> line_multiplicities(const SimplexPointSet& y, const ToricDesign& x) {
  check_pair(y, x);
  std::vector<std::uint64_t> out;
  // Keys of different simplex points never coincide, so one map per point suffices.
  for (std::size_t yi = 0; yi < y.size(); ++yi) {
    const auto p = y.points.row(yi);
    std::unordered_map<std::vector<std::uint64_t>, std::size_t, VectorHash> slot;
    for (std::uint64_t j = 0; j < x.n; ++j) {
      auto [it, fresh] = slot.emplace(line_key(yi, p, x, j), out.size());
      if (fresh) out.push_back(0);
      ++out[it->second];
    }
  }
  return out;
}

std::uint64_t concatenated_line_count(const SimplexPointSet& y, const ToricDesign& x) {
  return line_multiplicities(y, x).size();
}

namespace {

DoubleDouble rational_dd(const Rational& r) {
  const double hi = to_double(r);
  const double lo = to_double(r - Rational(hi));
  return {hi, lo};
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

VerificationReport verify_cp(const ComplexLineSet& z, int t, double tol) {
  const auto start = std::chrono::steady_clock::now();
  if (t < 0) throw InvalidArgument("verify_cp: t must be >= 0");
  if (z.d < 1 || z.vectors.cols() != static_cast<std::size_t>(2 * z.d) ||
      z.weights.size() != z.size() || z.size() == 0) {
    throw InvalidArgument("verify_cp: malformed line set");
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double norm2 = dot_dd(z.vectors.row(i), z.vectors.row(i)).value();
    if (std::abs(norm2 - 1.0) > 1e-12) {
      throw InvalidArgument("verify_cp: vector " + std::to_string(i) + " is not a unit vector");
    }
    if (!(z.weights[i] > 0.0)) throw InvalidArgument("verify_cp: weights must be positive");
  }
  VerificationReport rep;
  rep.method = "frame-potential";
  rep.tolerance = tol;
  rep.threads = kernel_threads();
  const auto sums = omp::hermitian_pair_power_sums(z.vectors, z.weights, t);
  for (int k = 0; k <= t; ++k) {
    const DoubleDouble expected = rational_dd(cp_pair_constant(z.d, k));
    const DoubleDouble excess = sums[k] - expected * sums[0];
    rep.record(k, std::sqrt(std::abs(excess.value() / sums[0].value())));
  }
  rep.finish();
  rep.wall_seconds = elapsed(start);
  return rep;
}

FusionFrame cp_to_fusion_frame(const ComplexLineSet& z, int strength) {
  const std::size_t d = static_cast<std::size_t>(z.d);
  FusionFrame f;
  f.ambient = static_cast<int>(2 * d);
  f.u = PointMatrix(2 * d);
  f.w = PointMatrix(2 * d);
  f.u.reserve(z.size());
  f.w.reserve(z.size());
  f.weights = z.weights;
  f.strength = strength;
  f.recipe = {"cp_to_fusion_frame", {{"strength", strength}}, {z.recipe}};
  std::vector<double> w(2 * d);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto v = z.vectors.row(i);
    for (std::size_t n = 0; n < d; ++n) {
      w[n] = -v[d + n];
      w[d + n] = v[n];
    }
    f.u.push_back(v);
    f.w.push_back(w);
  }
  return f;
}

namespace {

// Dense monomial bookkeeping for even degrees 0, 2, ..., 2t in D variables:
// the monomials of each degree plus, for every (monomial, pair i <= j), the
// index of monomial * x_i x_j one level up.
struct Expansion {
  std::vector<std::vector<MultiIndex>> monomials;
  std::vector<std::vector<std::uint32_t>> step;  // [level][mono * pairs + pair]
  std::vector<std::pair<int, int>> pairs;
};

Expansion build_expansion(int dim, int t) {
  Expansion e;
  std::uint64_t total = 0;
  for (int k = 0; k <= t; ++k) {
    total += monomial_count(dim, 2 * k);
    if (total > kExpansionCap) {
      throw ResourceCap("verify_tff: " + std::to_string(total) + " coefficients exceed the cap");
    }
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) e.pairs.emplace_back(i, j);
  }
  std::map<MultiIndex, std::uint32_t> next_rank;
  for (int k = 0; k <= t; ++k) e.monomials.push_back(multi_indices_of_degree(dim, 2 * k));
  for (int k = 0; k < t; ++k) {
    next_rank.clear();
    const auto& up = e.monomials[k + 1];
    for (std::uint32_t r = 0; r < up.size(); ++r) next_rank.emplace(up[r], r);
    const auto& cur = e.monomials[k];
    std::vector<std::uint32_t> table(cur.size() * e.pairs.size());
    for (std::size_t m = 0; m < cur.size(); ++m) {
      for (std::size_t p = 0; p < e.pairs.size(); ++p) {
        MultiIndex a = cur[m];
        ++a[e.pairs[p].first];
        ++a[e.pairs[p].second];
        table[m * e.pairs.size() + p] = next_rank.at(a);
      }
    }
    e.step.push_back(std::move(table));
  }
  return e;
}

}  // namespace

VerificationReport verify_tff(const FusionFrame& f, int t, double tol) {
  const auto start = std::chrono::steady_clock::now();
  if (t < 1) throw InvalidArgument("verify_tff: t must be >= 1");
  const int dim = f.ambient;
  if (dim < 1 || f.u.cols() != static_cast<std::size_t>(dim) || f.w.cols() != f.u.cols() ||
      f.u.rows() != f.w.rows() || f.weights.size() != f.u.rows() || f.u.rows() == 0) {
    throw InvalidArgument("verify_tff: malformed frame");
  }
  const Expansion e = build_expansion(dim, t);
  const std::size_t n_pairs = e.pairs.size();

  // sums[k][m] accumulates sum_V w_V coefficient of monomial m in Q_V^k.
  std::vector<std::vector<NeumaierSum>> sums(t + 1);
  for (int k = 0; k <= t; ++k) sums[k].resize(e.monomials[k].size());
  NeumaierSum weight_total;

  std::vector<double> quad(n_pairs);
  std::vector<std::vector<double>> poly(t + 1);
  for (int k = 0; k <= t; ++k) poly[k].resize(e.monomials[k].size());
  for (std::size_t v = 0; v < f.size(); ++v) {
    const auto u = f.u.row(v);
    const auto w = f.w.row(v);
    for (std::size_t p = 0; p < n_pairs; ++p) {
      const auto [i, j] = e.pairs[p];
      const double pij = u[i] * u[j] + w[i] * w[j];
      quad[p] = i == j ? pij : 2.0 * pij;
    }
    poly[0][0] = 1.0;
    for (int k = 0; k < t; ++k) {
      std::fill(poly[k + 1].begin(), poly[k + 1].end(), 0.0);
      const auto& table = e.step[k];
      for (std::size_t m = 0; m < poly[k].size(); ++m) {
        const double c = poly[k][m];
        if (c == 0.0) continue;
        for (std::size_t p = 0; p < n_pairs; ++p) poly[k + 1][table[m * n_pairs + p]] += c * quad[p];
      }
      for (std::size_t m = 0; m < poly[k + 1].size(); ++m) sums[k + 1][m].add(f.weights[v] * poly[k + 1][m]);
    }
    weight_total.add(f.weights[v]);
  }

  VerificationReport rep;
  rep.method = "coefficient-expansion";
  rep.tolerance = tol;
  rep.threads = 1;
  const double scale = weight_total.value();
  for (int k = 1; k <= t; ++k) {
    // |x|^{2k} has coefficient k! / beta! on x^{2 beta}; x_1^{2k} is monomial 0
    // in graded order and carries coefficient 1.
    const auto& monos = e.monomials[k];
    std::size_t ref = 0;
    for (std::size_t m = 0; m < monos.size(); ++m) {
      if (monos[m][0] == 2 * k) ref = m;
    }
    const double a = sums[k][ref].value();
    double worst = 0.0;
    for (std::size_t m = 0; m < monos.size(); ++m) {
      double norm_coef = 0.0;
      bool even = true;
      for (int x : monos[m]) even = even && x % 2 == 0;
      if (even) {
        double c = std::tgamma(k + 1.0);
        for (int x : monos[m]) c /= std::tgamma(x / 2 + 1.0);
        norm_coef = c;
      }
      const double r = std::abs(sums[k][m].value() - a * norm_coef) / scale;
      if (!(r <= worst)) worst = r;
    }
    rep.record(k, worst);
  }
  rep.finish();
  rep.wall_seconds = elapsed(start);
  return rep;
}

}  // namespace sdesign
