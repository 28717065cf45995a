#include "sdesign/toric_designs.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <unordered_map>

#include "sdesign/errors.hpp"
#include "sdesign/finite_field.hpp"
#include "sdesign/kernels.hpp"
#include "sdesign/multi_index.hpp"
#include "sdesign/reference_moments.hpp"

namespace sdesign {

namespace {

std::uint64_t checked_pow(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > kToricSizeCap * 16 / base) throw ResourceCap("toric construction: size overflow");
    out *= base;
  }
  return out;
}

PrimePower require_prime_power(std::uint64_t q, const char* where) {
  if (q < 2) throw InvalidArgument(std::string(where) + ": q must be >= 2");
  const auto pp = is_prime_power(q);
  if (!pp) throw InvalidArgument(std::string(where) + ": " + std::to_string(q) + " is not a prime power");
  return *pp;
}

void check_or_throw(const BtSet& b, const char* where) {
  if (!is_bt_set(b)) throw ConstructionError(std::string(where) + ": result is not a B_t set");
}

}  // namespace

std::optional<SumCollision> find_sum_collision(std::span<const std::uint64_t> elements,
                                               std::uint64_t n, int t) {
  if (n == 0) throw InvalidArgument("find_sum_collision: modulus must be positive");
  const int k = static_cast<int>(elements.size());
  for (int s = 1; s <= t; ++s) {
    std::unordered_map<std::uint64_t, std::vector<int>> seen;
    for (const auto& ms : multisets(k, s)) {
      std::uint64_t sum = 0;
      for (int i : ms) sum = (sum + elements[i] % n) % n;
      auto [it, inserted] = seen.emplace(sum, ms);
      if (!inserted) return SumCollision{it->second, ms};
    }
  }
  return std::nullopt;
}

BtSet bose_chowla(std::uint64_t q, int t) {
  const PrimePower pp = require_prime_power(q, "bose_chowla");
  if (t < 1) throw InvalidArgument("bose_chowla: t must be >= 1");
  const FieldCtx f = FieldCtx::make(pp.p, pp.m * t);
  const std::uint64_t n = f.size() - 1;
  const FieldElem theta = f.primitive();
  BtSet out;
  out.n = n;
  out.t = t;
  out.q = q;
  for (std::uint64_t a = 1; a <= n; ++a) {
    if (f.in_subfield(f.sub(f.exp(a), theta), q)) out.elements.push_back(a % n);
  }
  std::sort(out.elements.begin(), out.elements.end());
  check_or_throw(out, "bose_chowla");
  return out;
}

BtSet singer_bt_set(std::uint64_t q, int t) {
  const PrimePower pp = require_prime_power(q, "singer_bt_set");
  if (t < 1) throw InvalidArgument("singer_bt_set: t must be >= 1");
  const FieldCtx f = FieldCtx::make(pp.p, pp.m * (t + 1));
  const std::uint64_t big = f.size() - 1;
  const std::uint64_t n = big / (q - 1);
  const FieldElem theta = f.primitive();
  BtSet out;
  out.n = n;
  out.t = t;
  out.q = q;
  out.elements.push_back(0);
  // Nonzero elements of the subfield GF(q) are the powers of primitive^n.
  out.elements.push_back(f.log(theta) % n);
  for (std::uint64_t k = 0; k + 1 < q; ++k) {
    const FieldElem c = f.exp(k * n);
    out.elements.push_back(f.log(f.add(theta, c)) % n);
  }
  std::sort(out.elements.begin(), out.elements.end());
  out.elements.erase(std::unique(out.elements.begin(), out.elements.end()), out.elements.end());
  if (out.elements.size() != q + 1) throw ConstructionError("singer_bt_set: expected q + 1 residues");
  check_or_throw(out, "singer_bt_set");
  return out;
}

ToricDesign toric_from_generators(int d, int t, std::uint64_t n, std::vector<std::uint64_t> generators) {
  if (d < 1 || t < 0) throw InvalidArgument("toric design: need d >= 1, t >= 0");
  if (static_cast<int>(generators.size()) != d) throw InvalidArgument("toric design: need d generators");
  if (n == 0) throw InvalidArgument("toric design: cycle length must be positive");
  if (n > kToricSizeCap) throw ResourceCap("toric design: cycle length exceeds cap");
  ToricDesign out;
  out.d = d;
  out.t = t;
  out.n = n;
  out.generators = std::move(generators);
  out.angles = PointMatrix(n, static_cast<std::size_t>(d));
  for (std::uint64_t j = 0; j < n; ++j) {
    auto row = out.angles.row(j);
    for (int i = 0; i < d; ++i) {
      const std::uint64_t diff = (out.generators[i] % n + n - out.generators[0] % n) % n;
      const auto r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(j) * diff) % n);
      row[i] = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(n));
    }
  }
  out.recipe = {"toric_from_generators", {{"d", d}, {"t", t}, {"n", n}, {"generators", out.generators}}, {}};
  return out;
}

ToricDesign toric_design(int d, int t) {
  if (d < 1 || t < 1) throw InvalidArgument("toric_design: need d >= 1, t >= 1");
  if (d == 1) {
    ToricDesign out = toric_from_generators(1, t, 1, {0});
    out.recipe = {"toric_design", {{"d", d}, {"t", t}}, {}};
    return out;
  }
  // For t = 1 the Bose-Chowla set has only q - 1 residues, so q must exceed d.
  const std::uint64_t q = next_prime_power(t == 1 ? d + 1 : d);
  checked_pow(q, t);
  const BtSet b = bose_chowla(q, t);
  std::vector<std::uint64_t> gens(b.elements.begin(), b.elements.begin() + d);
  ToricDesign out = toric_from_generators(d, t, b.n, std::move(gens));
  out.recipe = {"toric_design", {{"d", d}, {"t", t}, {"q", q}, {"n", b.n}, {"generators", out.generators}}, {}};
  return out;
}

ToricDesign singer_toric_design(int d, int t) {
  if (d < 1 || t < 1) throw InvalidArgument("singer_toric_design: need d >= 1, t >= 1");
  if (d == 1) {
    ToricDesign out = toric_from_generators(1, t, 1, {0});
    out.recipe = {"singer_toric_design", {{"d", d}, {"t", t}}, {}};
    return out;
  }
  const std::uint64_t q = next_prime_power(std::max(d - 1, 2));
  checked_pow(q, t + 1);
  const BtSet b = singer_bt_set(q, t);
  std::vector<std::uint64_t> gens(b.elements.begin(), b.elements.begin() + d);
  ToricDesign out = toric_from_generators(d, t, b.n, std::move(gens));
  out.recipe = {"singer_toric_design",
                {{"d", d}, {"t", t}, {"q", q}, {"n", b.n}, {"generators", out.generators}},
                {}};
  return out;
}

namespace {

std::uint64_t bose_size(int d, int t) {
  if (d == 1) return 1;
  const std::uint64_t q = next_prime_power(t == 1 ? d + 1 : d);
  return checked_pow(q, t) - 1;
}

std::uint64_t singer_size(int d, int t) {
  if (d == 1) return 1;
  const std::uint64_t q = next_prime_power(std::max(d - 1, 2));
  return (checked_pow(q, t + 1) - 1) / (q - 1);
}

}  // namespace

ToricDesign compact_toric_design(int d, int t) {
  if (d < 1 || t < 1) throw InvalidArgument("compact_toric_design: need d >= 1, t >= 1");
  return singer_size(d, t) < bose_size(d, t) ? singer_toric_design(d, t) : toric_design(d, t);
}

VerificationReport verify_toric(const ToricDesign& x, int t, double tol) {
  if (t < 0) throw InvalidArgument("verify_toric: t must be >= 0");
  if (x.angles.rows() != x.n || static_cast<int>(x.angles.cols()) != x.d) {
    throw InvalidArgument("verify_toric: angle table does not match (n, d)");
  }
  VerificationReport rep;
  rep.method = "exponential-sum";
  rep.tolerance = tol;
  rep.threads = kernel_threads();

  for (int s = 0; s <= t; ++s) {
    const auto ms = multisets(x.d, s);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < static_cast<int>(ms.size()); ++i) {
      for (int j = i; j < static_cast<int>(ms.size()); ++j) pairs.emplace_back(i, j);
    }
    std::vector<double> residual(pairs.size(), 0.0);
#pragma omp parallel for schedule(static)
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto& a = ms[pairs[p].first];
      const auto& b = ms[pairs[p].second];
      NeumaierSum re;
      NeumaierSum im;
      for (std::uint64_t j = 0; j < x.n; ++j) {
        const auto row = x.angles.row(j);
        double phase = 0.0;
        for (int k = 0; k < s; ++k) phase += row[a[k]] - row[b[k]];
        re.add(std::cos(phase));
        im.add(std::sin(phase));
      }
      const double expected = to_double(toric_monomial_integral(a, b));
      const double n = static_cast<double>(x.n);
      residual[p] = std::abs(std::complex<double>(re.value() / n - expected, im.value() / n));
    }
    double worst = 0.0;
    for (double r : residual) {
      if (!(r <= worst)) worst = r;
    }
    rep.record(s, worst);
  }

  // Exact route: a collision of generator sums means the colliding monomial
  // averages to exactly 1 where the integral is 0.
  if (const auto hit = find_sum_collision(x.generators, x.n, t)) {
    rep.record(static_cast<int>(hit->first.size()), 1.0);
    rep.note = "integer check: generator sums collide at size " + std::to_string(hit->first.size());
  } else {
    rep.note = "integer check: no generator-sum collisions";
  }
  rep.finish();
  return rep;
}

}  // namespace sdesign
