#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sdesign/errors.hpp"
#include "sdesign/finite_field.hpp"
#include "sdesign/interval_designs.hpp"
#include "sdesign/simplex_designs.hpp"
#include "sdesign/toric_designs.hpp"

using namespace sdesign;

TEST_SUITE("interval_designs") {
  TEST_CASE("d = 1 closed forms") {
    const auto v = interval5_design(1);
    const double s5 = std::sqrt(5.0), s153 = std::sqrt(153.0);
    CHECK(v.squared_nodes[0].value() == doctest::Approx(1.0 / 12).epsilon(1e-15));
    CHECK(v.squared_nodes[1].value() == doctest::Approx((13 * s5 + s153) / (24 * s5)).epsilon(1e-15));
    CHECK(v.squared_nodes[2].value() == doctest::Approx((13 * s5 - s153) / (24 * s5)).epsilon(1e-15));
  }

  TEST_CASE("symmetric nodes with a single zero") {
    for (int d = 1; d <= 50; ++d) {
      auto v = interval5_design(d);
      CHECK(std::count(v.nodes.begin(), v.nodes.end(), 0.0) == 1);
      auto neg = v.nodes;
      for (auto& x : neg) x = -x;
      std::sort(neg.begin(), neg.end());
      auto pos = v.nodes;
      std::sort(pos.begin(), pos.end());
      CHECK(neg == pos);
    }
  }

  TEST_CASE("direct summation for d = 3") {
    const auto v = interval5_design(3);
    double s2 = 0.0, s4 = 0.0;
    for (double x : v.nodes) {
      s2 += x * x / 7;
      s4 += x * x * x * x / 7;
    }
    CHECK(s2 == doctest::Approx(1.0 / 7).epsilon(1e-14));
    CHECK(s4 == doctest::Approx(1.0 / 21).epsilon(1e-14));
  }

  TEST_CASE("5-designs for d = 1..50 and quadrature cross-check") {
    for (int d = 1; d <= 50; ++d) {
      const auto rep = verify_interval(interval5_design(d), 5, 1e-12);
      CHECK(rep.passed);
      CHECK(rep.worst_residual <= 1e-12);
    }
    const auto v = interval5_design(4);
    for (int k = 0; k <= 5; ++k) {
      double s = 0.0;
      for (double x : v.nodes) s += std::pow(x, k) / 7;
      CHECK(std::abs(s - oracle::interval_moment_quadrature(4, k)) < 1e-13);
    }
  }

  TEST_CASE("perturbed node fails; two-point 3-design passes") {
    auto v = interval5_design(2);
    v.nodes[6] += 1e-3;
    CHECK_FALSE(verify_interval(v, 5).passed);
    const auto two = interval_from_nodes(1, {-std::sqrt(1.0 / 3), std::sqrt(1.0 / 3)});
    CHECK(verify_interval(two, 3).passed);
    CHECK_THROWS_AS((void)verify_interval(interval_from_nodes(1, {1.5}), 1), InvalidArgument);
  }
}

TEST_SUITE("simplex_designs") {
  TEST_CASE("2-designs") {
    const auto y3 = simplex2_design(3);
    CHECK(y3.size() == 3);
    CHECK(y3.points.row(0)[0] == doctest::Approx(1.0 / 6));
    CHECK(y3.points.row(0)[2] == doctest::Approx(2.0 / 3));
    const auto y2 = simplex2_design(2);
    const double a = 0.5 - 1 / (2 * std::sqrt(3.0));
    CHECK(y2.points.row(0)[0] == doctest::Approx(a).epsilon(1e-15));
    for (int d = 2; d <= 50; ++d) {
      const auto y = simplex2_design(d);
      CHECK(y.size() == static_cast<std::size_t>(d));
      const auto rep = verify_simplex(y, 2, SimplexCheck::full, 1e-12);
      CHECK(rep.passed);
    }
  }

  TEST_CASE("3-design seeds: invariants and power sums") {
    for (int d = 3; d <= 16; ++d) {
      CAPTURE(d);
      const auto seed = simplex3_seed(d);
      CHECK(static_cast<double>(seed.power_sum(1)) == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(std::abs(static_cast<double>(seed.power_sum(2)) - 2.0 / (d + 1)) < 1e-14);
      CHECK(std::abs(static_cast<double>(seed.power_sum(3)) - 6.0 / ((d + 1) * (d + 2))) < 1e-14);
      CHECK(seed.discriminant > 0);
      const auto p = seed.point();
      CHECK(p.size() == static_cast<std::size_t>(d));
      for (double x : p) CHECK(x >= 0.0);
    }
    CHECK(simplex3_seed(4).kind == SeedCase::d4);
    CHECK(simplex3_seed(6).pattern.back().value == 0);
    CHECK_THROWS_AS((void)simplex3_seed(2), InvalidArgument);
  }

  TEST_CASE("d = 6 pair product closed form") {
    const auto seed = simplex3_seed(6);
    const double q = 3, s = static_cast<double>(seed.s);
    const double t = (q * (q - 1) * (2 * q + 1) * s * s - 2 * (q - 1) * (2 * q + 1) * s + (2 * q - 1)) /
                     (2 * (q - 1) * (2 * q + 1));
    CHECK(static_cast<double>(seed.pair_product) == doctest::Approx(t).epsilon(1e-14));
    CHECK(t > 0);
  }

  TEST_CASE("orbit sizes") {
    CHECK(symmetric_orbit_size(simplex3_seed(4)) == 12);
    CHECK(symmetric_orbit_size(simplex3_seed(3)) == 6);
    CHECK(symmetric_orbit_size(simplex3_seed(12)) == 33264);
    for (int q = 1; q <= 5; ++q) {
      const int d = 2 * q + 1;
      std::uint64_t c = 1;  // (2q+1) C(2q, q)
      for (int i = 1; i <= q; ++i) c = c * (q + i) / i;
      CHECK(symmetric_orbit_size(simplex3_seed(d)) == static_cast<std::uint64_t>(d) * c);
      CHECK(symmetric_orbit(simplex3_seed(d)).size() == static_cast<std::size_t>(d) * c);
    }
    CHECK_THROWS_AS((void)symmetric_orbit(simplex3_seed(12), 1000), ResourceCap);
  }

  TEST_CASE("symmetric orbits are 3-designs, full and fast checks agree") {
    for (int d = 3; d <= 9; ++d) {
      CAPTURE(d);
      const auto y = symmetric_orbit(simplex3_seed(d));
      const auto full = verify_simplex(y, 3, SimplexCheck::full, 1e-11);
      const auto fast = verify_simplex(y, 3, SimplexCheck::fast, 1e-12);
      CHECK(full.passed);
      CHECK(fast.passed);
      CHECK_FALSE(verify_simplex(y, 4, SimplexCheck::full).passed);
    }
  }

  TEST_CASE("PGL orbits") {
    for (int d : {3, 4, 5, 6, 8, 9, 10}) {
      CAPTURE(d);
      const auto y = pgl_orbit(simplex3_seed(d), d - 1);
      CHECK(y.size() <= static_cast<std::size_t>(d * (d - 1) * (d - 2)));
      CHECK(verify_simplex(y, 3, SimplexCheck::full, 1e-11).passed);
    }
    CHECK(pgl_orbit(simplex3_seed(3), 2).size() == symmetric_orbit(simplex3_seed(3)).size());
    // d = 5: every monomial average of degree <= 3 equals that of the full orbit.
    const auto pg = pgl_orbit(simplex3_seed(5), 4);
    const auto sym = symmetric_orbit(simplex3_seed(5));
    CHECK(pg.size() <= 60);
    const auto a = verify_simplex(pg, 3, SimplexCheck::full);
    const auto b = verify_simplex(sym, 3, SimplexCheck::full);
    CHECK(a.passed);
    CHECK(b.passed);
    CHECK_THROWS_AS((void)pgl_orbit(simplex3_seed(7), 6), InvalidArgument);
  }

  TEST_CASE("centroid is a 1-design but not a 2-design") {
    for (int d = 2; d <= 6; ++d) {
      SimplexPointSet c;
      c.d = d;
      c.points = PointMatrix(1, d);
      for (int i = 0; i < d; ++i) c.points.row(0)[i] = 1.0 / d;
      c.weights = {1.0};
      CHECK(verify_simplex(c, 1, SimplexCheck::full).passed);
      CHECK_FALSE(verify_simplex(c, 2, SimplexCheck::full).passed);
    }
  }

  TEST_CASE("simplex moments against Monte Carlo") {
    std::mt19937_64 rng(11);
    for (int d : {3, 5}) {
      std::vector<int> k(d, 0);
      k[0] = 2;
      k[1] = 1;
      const auto est = oracle::monte_carlo(
          200000, [&] { return oracle::uniform_simplex(d, rng); },
          [&](const std::vector<double>& x) { return x[0] * x[0] * x[1]; });
      CHECK(std::abs(est.mean - to_double(simplex_monomial_moment(d, k))) < 4 * est.stderr_);
    }
  }

  TEST_CASE("points off the simplex are rejected") {
    auto y = simplex2_design(3);
    y.points.row(0)[0] += 0.1;
    CHECK_THROWS_AS((void)verify_simplex(y, 2), InvalidArgument);
  }
}

TEST_SUITE("toric_designs") {
  TEST_CASE("Bose-Chowla q = 2, t = 2") {
    const auto b = bose_chowla(2, 2);
    CHECK(b.n == 3);
    CHECK(b.elements == std::vector<std::uint64_t>{1, 2});
  }

  TEST_CASE("Bose-Chowla sizes and B_t property for q <= 9, t <= 4") {
    for (std::uint64_t q = 2; q <= 9; ++q) {
      if (!is_prime_power(q)) continue;
      for (int t = 1; t <= 4; ++t) {
        if (std::pow(double(q), t) > 1e5) continue;
        CAPTURE(q);
        CAPTURE(t);
        const auto b = bose_chowla(q, t);
        CHECK(b.elements.size() == (t == 1 ? q - 1 : q));
        CHECK(is_bt_set(b));
        const auto s = singer_bt_set(q, t);
        CHECK(s.elements.size() == q + 1);
        CHECK(is_bt_set(s));
      }
    }
  }

  TEST_CASE("collisions") {
    // 1 + 1 == 0 + 0 mod 2.
    const std::vector<std::uint64_t> g{0, 1};
    CHECK(find_sum_collision(g, 2, 2).has_value());
    auto b = bose_chowla(5, 3);
    b.elements[1] = b.elements[0] + 1;
    b.elements[2] = b.elements[0] + 2;  // 0 + 2 == 1 + 1
    CHECK_FALSE(is_bt_set(b));
  }

  TEST_CASE("toric designs") {
    const auto x = toric_design(2, 2);
    CHECK(x.n == 3);
    CHECK(x.generators == std::vector<std::uint64_t>{1, 2});
    CHECK(verify_toric(x, 2, 1e-13).passed);
    CHECK(toric_design(1, 3).n == 1);
    CHECK(toric_design(6, 3).n == 342);
    const auto bad = toric_from_generators(2, 2, 2, {0, 1});
    const auto rep = verify_toric(bad, 2);
    CHECK_FALSE(rep.passed);
  }

  TEST_CASE("exponential sums and the integer check agree") {
    for (int d = 1; d <= 6; ++d) {
      for (int t = 1; t <= 3; ++t) {
        CAPTURE(d);
        CAPTURE(t);
        for (const auto& x : {toric_design(d, t), singer_toric_design(d, t)}) {
          const bool integer_ok = !find_sum_collision(x.generators, x.n, t).has_value();
          const auto rep = verify_toric(x, t);
          CHECK(integer_ok);
          CHECK(rep.passed == integer_ok);
          // One degree past the strength the two checks must still agree.
          const bool next_ok = !find_sum_collision(x.generators, x.n, t + 1).has_value();
          CHECK(verify_toric(x, t + 1).passed == next_ok);
        }
      }
    }
  }

  TEST_CASE("compact route is never larger") {
    for (int d = 2; d <= 10; ++d) {
      for (int t = 2; t <= 3; ++t) {
        const auto c = compact_toric_design(d, t);
        CHECK(c.n <= toric_design(d, t).n);
        CHECK(c.n <= singer_toric_design(d, t).n);
      }
    }
    CHECK(compact_toric_design(4, 3).n == 40);
  }
}
