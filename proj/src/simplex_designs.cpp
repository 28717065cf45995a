#include "sdesign/simplex_designs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_set>

#include "sdesign/errors.hpp"
#include "sdesign/finite_field.hpp"
#include "sdesign/kernels.hpp"

namespace sdesign {

std::string to_string(SeedCase c) {
  switch (c) {
    case SeedCase::odd: return "odd";
    case SeedCase::even: return "even";
    case SeedCase::d4: return "d4";
    case SeedCase::simplex2: return "simplex2";
  }
  return "?";
}

std::string to_string(Invariance inv) {
  switch (inv) {
    case Invariance::symmetric: return "S_d";
    case Invariance::pgl: return "PGL(2,q)";
    case Invariance::cyclic: return "C_d";
    case Invariance::none: return "none";
  }
  return "?";
}

namespace {

std::string wide_str(const WideFloat& x) { return x.str(36, std::ios_base::scientific); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ConstructionError("simplex seed invariant violated: " + what);
}

/// Sets the discriminant and the roots b >= c of z^2 - s z + pair_product.
void set_pair_roots(SimplexSeed& seed) {
  using boost::multiprecision::sqrt;
  seed.discriminant = seed.s * seed.s - 4 * seed.pair_product;
  require(seed.discriminant > 0, "discriminant > 0");
  const WideFloat root = sqrt(seed.discriminant);
  seed.b = (seed.s + root) / 2;
  seed.c = (seed.s - root) / 2;
}

void check_seed(const SimplexSeed& seed) {
  using boost::multiprecision::abs;
  require(abs(seed.b + seed.c - seed.s) < WideFloat(1e-14), "b + c = s");
  require(abs(seed.b * seed.c - seed.pair_product) < WideFloat(1e-14), "b c = pair product");
  WideFloat total = 0;
  int count = 0;
  for (const auto& part : seed.pattern) {
    require(part.value >= 0, "nonnegative coordinates");
    total += part.value * part.multiplicity;
    count += part.multiplicity;
  }
  require(abs(total - 1) < WideFloat(1e-14), "coordinates sum to 1");
  require(count == seed.d, "pattern length equals d");
  for (std::size_t i = 0; i < seed.pattern.size(); ++i) {
    for (std::size_t j = i + 1; j < seed.pattern.size(); ++j) {
      require(abs(seed.pattern[i].value - seed.pattern[j].value) > WideFloat(1e-9),
              "pattern values pairwise distinct");
    }
  }
}

/// Smallest root of the cubic in (lo, hi) accepted by `admissible`.
template <class Pred>
WideFloat smallest_admissible_root(SimplexSeed& seed, const WideFloat& lo, const WideFloat& hi,
                                   Pred admissible) {
  const std::span<const Rational> coeffs(seed.cubic);
  for (const auto& [blo, bhi] : real_root_brackets<WideFloat>(coeffs, lo, hi)) {
    const BracketedPolynomial<WideFloat> bp{{seed.cubic.begin(), seed.cubic.end()}, blo, bhi};
    const WideFloat r = bracketed_root(bp);
    if (admissible(r)) {
      seed.bracket_lo = blo;
      seed.bracket_hi = bhi;
      return r;
    }
  }
  throw NoSignChange("simplex3_seed: no admissible root in (" + wide_str(lo) + ", " +
                     wide_str(hi) + ")");
}

SimplexPointSet from_labels(int d, const std::vector<std::vector<int>>& rows,
                            const std::vector<double>& values) {
  SimplexPointSet out;
  out.d = d;
  out.points = PointMatrix(static_cast<std::size_t>(d));
  out.points.reserve(rows.size());
  std::vector<double> buf(d);
  for (const auto& r : rows) {
    for (int i = 0; i < d; ++i) buf[i] = values[r[i]];
    out.points.push_back(buf);
  }
  out.weights.assign(rows.size(), 1.0 / static_cast<double>(rows.size()));
  return out;
}

std::vector<double> pattern_values(const SimplexSeed& seed) {
  std::vector<double> v;
  for (const auto& part : seed.pattern) v.push_back(static_cast<double>(part.value));
  return v;
}

}  // namespace

std::vector<double> SimplexSeed::point() const {
  std::vector<double> out;
  for (const auto& part : pattern) {
    out.insert(out.end(), part.multiplicity, static_cast<double>(part.value));
  }
  return out;
}

std::vector<int> SimplexSeed::labels() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < pattern.size(); ++k) out.insert(out.end(), pattern[k].multiplicity, static_cast<int>(k));
  return out;
}

WideFloat SimplexSeed::power_sum(int k) const {
  WideFloat acc = 0;
  for (const auto& part : pattern) acc += part.multiplicity * boost::multiprecision::pow(part.value, k);
  return acc;
}

nlohmann::json SimplexSeed::to_json() const {
  nlohmann::json pat = nlohmann::json::array();
  for (const auto& part : pattern) {
    pat.push_back({{"value", static_cast<double>(part.value)}, {"multiplicity", part.multiplicity}});
  }
  nlohmann::json cub = nlohmann::json::array();
  for (const auto& c : cubic) cub.push_back(c.str());
  return {{"d", d},
          {"case", to_string(kind)},
          {"q", q},
          {"root", wide_str(kind == SeedCase::d4 ? a : s)},
          {"s", static_cast<double>(s)},
          {"bracket", {wide_str(bracket_lo), wide_str(bracket_hi)}},
          {"cubic", cub},
          {"pattern", pat}};
}

SimplexPointSet simplex2_design(int d) {
  using boost::multiprecision::sqrt;
  if (d < 2) throw InvalidArgument("simplex2_design: d must be >= 2");
  const WideFloat wd = d;
  const WideFloat a = 1 / wd - 1 / (wd * sqrt(wd + 1));
  const WideFloat last = 1 - (wd - 1) * a;
  const double av = static_cast<double>(a);
  const double lv = static_cast<double>(last);

  SimplexPointSet out;
  out.d = d;
  out.points = PointMatrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    auto row = out.points.row(j);
    for (int i = 0; i < d; ++i) row[i] = ((i - j + d) % d == d - 1) ? lv : av;
  }
  out.weights.assign(d, 1.0 / d);
  out.invariance = Invariance::cyclic;
  out.strength = 2;
  out.recipe = {"simplex2_design", {{"d", d}, {"a", av}}, {}};
  return out;
}

SimplexSeed simplex3_seed(int d) {
  using boost::multiprecision::sqrt;
  if (d < 3) throw InvalidArgument("simplex3_seed: d must be >= 3");
  SimplexSeed seed;
  seed.d = d;

  if (d == 4) {
    seed.kind = SeedCase::d4;
    seed.cubic = {Rational(-1), Rational(18), Rational(-90), Rational(120)};
    auto pair_product_of = [](const WideFloat& a) {
      const WideFloat s = 1 - 2 * a;
      return (2 * a * a + s * s - WideFloat(2) / 5) / 2;
    };
    const WideFloat a = smallest_admissible_root(seed, WideFloat(0), WideFloat(0.5), [&](const WideFloat& r) {
      const WideFloat s = 1 - 2 * r;
      const WideFloat t = pair_product_of(r);
      return t > 0 && s * s - 4 * t > 0;
    });
    seed.a = a;
    seed.s = 1 - 2 * a;
    seed.pair_product = pair_product_of(a);
    set_pair_roots(seed);
    seed.pattern = {{seed.a, 2}, {seed.b, 1}, {seed.c, 1}};
    check_seed(seed);
    return seed;
  }

  WideFloat lo;
  WideFloat hi;
  if (d % 2 == 1) {
    const int q = (d - 1) / 2;
    seed.kind = SeedCase::odd;
    seed.q = q;
    const Rational q1 = q + 1;
    seed.cubic = {Rational(-2 * (2 * q + 5)), Rational(3 * (2 * q + 3) * (2 * q + 3)),
                  Rational(-6) * q1 * q1 * (2 * q + 3), q1 * q1 * (2 * q + 1) * (2 * q + 3)};
    const WideFloat wq = q;
    lo = (2 * (wq + 1) - sqrt(2 * (wq + 1))) / ((2 * wq + 1) * (wq + 1));
    hi = 1 / (wq + 1);
  } else {
    const int q = d / 2;
    seed.kind = SeedCase::even;
    seed.q = q;
    const Rational rq = q;
    seed.cubic = {Rational(-2 * (q + 2) * (2 * q - 1)), Rational(3 * (q + 1) * (4 * q * q - 3)),
                  Rational(-6) * rq * (q - 1) * (q + 1) * (2 * q + 1),
                  rq * (q - 1) * (q + 1) * (2 * q - 1) * (2 * q + 1)};
    const WideFloat wq = q;
    lo = (2 * (wq - 1) * (2 * wq + 1) - sqrt(2 * (wq - 1) * (2 * wq - 3) * (2 * wq + 1))) /
         ((wq - 1) * (2 * wq - 1) * (2 * wq + 1));
    hi = 1 / wq;
  }

  // The full bracket must change sign; this re-checks the intermediate value step.
  {
    const std::span<const Rational> coeffs(seed.cubic);
    if (!(sign_of(evaluate(coeffs, lo)) * sign_of(evaluate(coeffs, hi)) < 0)) {
      throw NoSignChange("simplex3_seed: no sign change on the bracket for d = " + std::to_string(d));
    }
  }
  const int q = seed.q;
  auto pair_product_of = [&](const WideFloat& s) -> WideFloat {
    if (seed.kind == SeedCase::odd) {
      const WideFloat u = (q + 1) * s - 1;
      return u * u / (2 * (q + 1));
    }
    const WideFloat k = WideFloat(q - 1) * (2 * q + 1);
    return (q * k * s * s - 2 * k * s + (2 * q - 1)) / (2 * k);
  };
  seed.s = smallest_admissible_root(seed, lo, hi, [&](const WideFloat& s) {
    const WideFloat t = pair_product_of(s);
    return t > 0 && s * s - 4 * t > 0;
  });
  seed.pair_product = pair_product_of(seed.s);
  set_pair_roots(seed);
  if (seed.kind == SeedCase::odd) {
    seed.a = 1 - q * seed.s;
    seed.pattern = {{seed.a, 1}, {seed.b, q}, {seed.c, q}};
  } else {
    seed.a = 1 - (q - 1) * seed.s;
    seed.pattern = {{seed.a, 1}, {seed.b, q - 1}, {seed.c, q - 1}, {WideFloat(0), 1}};
  }
  check_seed(seed);
  return seed;
}

std::uint64_t symmetric_orbit_size(const SimplexSeed& seed) {
  // Multinomial as a product of binomials, exact in 128 bits for the supported range.
  unsigned __int128 acc = 1;
  int placed = 0;
  for (const auto& part : seed.pattern) {
    for (int i = 1; i <= part.multiplicity; ++i) {
      acc = acc * static_cast<unsigned>(placed + i) / static_cast<unsigned>(i);
      if (acc > std::numeric_limits<std::uint64_t>::max()) {
        return std::numeric_limits<std::uint64_t>::max();
      }
    }
    placed += part.multiplicity;
  }
  return static_cast<std::uint64_t>(acc);
}

SimplexPointSet symmetric_orbit(const SimplexSeed& seed, std::uint64_t cap) {
  const std::uint64_t size = symmetric_orbit_size(seed);
  if (size > cap) {
    throw ResourceCap("symmetric_orbit: orbit of " + std::to_string(size) +
                      " points exceeds the cap of " + std::to_string(cap));
  }
  std::vector<int> labels = seed.labels();
  std::vector<std::vector<int>> rows;
  rows.reserve(size);
  do {
    rows.push_back(labels);
  } while (std::next_permutation(labels.begin(), labels.end()));
  if (rows.size() != size) throw ConstructionError("symmetric_orbit: size differs from multinomial");

  SimplexPointSet out = from_labels(seed.d, rows, pattern_values(seed));
  out.invariance = Invariance::symmetric;
  out.strength = 3;
  out.recipe = {"symmetric_orbit", {{"d", seed.d}, {"seed", seed.to_json()}}, {}};
  return out;
}

SimplexPointSet pgl_orbit(const SimplexSeed& seed, std::uint64_t q) {
  if (q < 2 || !is_prime_power(q)) {
    throw InvalidArgument("pgl_orbit: q = " + std::to_string(q) + " is not a prime power");
  }
  if (static_cast<std::uint64_t>(seed.d) != q + 1) {
    throw InvalidArgument("pgl_orbit: d - 1 = " + std::to_string(seed.d - 1) + " differs from q");
  }
  const std::vector<int> labels = seed.labels();
  std::vector<std::vector<int>> rows;
  std::unordered_set<std::string> seen;
  std::vector<int> image(seed.d);
  for (const Permutation& g : pgl2_permutations(q)) {
    // (g x)_{g(j)} = x_j
    for (int j = 0; j < seed.d; ++j) image[g.image[j]] = labels[j];
    std::string key(image.begin(), image.end());
    if (seen.insert(std::move(key)).second) rows.push_back(image);
  }
  SimplexPointSet out = from_labels(seed.d, rows, pattern_values(seed));
  out.invariance = Invariance::pgl;
  out.q = static_cast<int>(q);
  out.strength = 3;
  out.recipe = {"pgl_orbit", {{"d", seed.d}, {"q", q}, {"seed", seed.to_json()}}, {}};
  return out;
}

VerificationReport verify_simplex(const SimplexPointSet& x, int t, SimplexCheck mode, double tol) {
  if (t < 0) throw InvalidArgument("verify_simplex: t must be >= 0");
  const int d = x.d;
  if (static_cast<int>(x.points.cols()) != d) throw InvalidArgument("verify_simplex: dimension mismatch");
  if (x.weights.size() != x.size()) throw InvalidArgument("verify_simplex: weight count mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    NeumaierSum s;
    for (double v : x.points.row(i)) {
      if (v < -1e-12) throw InvalidArgument("verify_simplex: negative coordinate");
      s.add(v);
    }
    if (std::abs(s.value() - 1.0) > 1e-12) throw InvalidArgument("verify_simplex: point off the simplex");
  }
  if (mode == SimplexCheck::automatic) {
    mode = (x.invariance == Invariance::symmetric && t <= 3) ? SimplexCheck::fast : SimplexCheck::full;
  }

  NeumaierSum wtotal;
  for (double w : x.weights) wtotal.add(w);
  const double wsum = wtotal.value();

  VerificationReport rep;
  rep.tolerance = tol;
  rep.threads = kernel_threads();
  if (mode == SimplexCheck::fast) {
    if (x.invariance != Invariance::symmetric) {
      throw InvalidArgument("verify_simplex: power-sum check requires an S_d-invariant set");
    }
    if (t > 3) throw InvalidArgument("verify_simplex: power-sum check covers t <= 3 only");
    rep.method = "power-sum";
    const Rational targets[] = {Rational(1), Rational(1), Rational(2, d + 1), Rational(6, (d + 1) * (d + 2))};
    for (int k = 0; k <= t; ++k) {
      NeumaierSum acc;
      for (std::size_t i = 0; i < x.size(); ++i) {
        NeumaierSum pk;
        for (double v : x.points.row(i)) pk.add(std::pow(v, k));
        acc.add(x.weights[i] * pk.value());
      }
      // p_0 = d, not 1; compare p_0 / d.
      const double got = acc.value() / wsum / (k == 0 ? d : 1);
      rep.record(k, std::abs(got - to_double(targets[k])));
    }
    rep.finish();
    return rep;
  }

  rep.method = "monomial";
  std::map<std::vector<int>, double> moment_cache;
  for (int k = 0; k <= t; ++k) {
    const auto alphas = multi_indices_of_degree(d, k);
    const auto sums = omp::monomial_sums(x.points, x.weights, alphas);
    double worst = 0.0;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      std::vector<int> key = alphas[j];
      std::sort(key.begin(), key.end());
      auto it = moment_cache.find(key);
      if (it == moment_cache.end()) {
        it = moment_cache.emplace(key, to_double(simplex_monomial_moment(d, alphas[j]))).first;
      }
      const double r = std::abs(sums[j] / wsum - it->second);
      if (!(r <= worst)) worst = r;
    }
    rep.record(k, worst);
  }
  rep.finish();
  return rep;
}

}  // namespace sdesign
