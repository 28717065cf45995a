#include <algorithm>
#include <set>
#include <tuple>

#include "doctest.h"
#include "sdesign/errors.hpp"
#include "sdesign/finite_field.hpp"
#include "sdesign/root_isolation.hpp"

using namespace sdesign;

TEST_SUITE("finite_field") {
  TEST_CASE("prime powers") {
    CHECK(is_prime_power(8) == PrimePower{2, 3});
    CHECK_FALSE(is_prime_power(12).has_value());
    CHECK(is_prime_power(121) == PrimePower{11, 2});
    CHECK(next_prime_power(6) == 7);
    CHECK(next_prime_power(8) == 8);
    CHECK(next_prime_power(10) == 11);
    CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
  }

  TEST_CASE("small fields") {
    const FieldCtx f4 = FieldCtx::make(2, 2);
    CHECK(f4.modulus() == std::vector<std::uint32_t>{1, 1, 1});
    const FieldCtx f5 = FieldCtx::make(5, 1);
    CHECK(f5.primitive() == 2);
    const FieldCtx f2 = FieldCtx::make(2, 1);
    CHECK(f2.size() == 2);
    CHECK_THROWS_AS((void)FieldCtx::make(6, 1), InvalidArgument);
    CHECK_THROWS_AS((void)FieldCtx::of_order(12), InvalidArgument);
    CHECK_THROWS_AS((void)FieldCtx::make(2, 21), ResourceCap);
  }

  TEST_CASE("field axioms by exhaustive check for q <= 64") {
    for (std::uint64_t q = 2; q <= 64; ++q) {
      if (!is_prime_power(q)) continue;
      CAPTURE(q);
      const FieldCtx f = FieldCtx::of_order(q);
      const auto n = static_cast<FieldElem>(q);
      bool ok = true;
      for (FieldElem a = 0; a < n && ok; ++a) {
        ok = ok && f.add(a, f.neg(a)) == 0 && f.mul(a, 1) == a && f.add(a, 0) == a;
        if (a != 0) ok = ok && f.mul(a, f.inv(a)) == 1 && f.exp(f.log(a)) == a;
        for (FieldElem b = 0; b < n && ok; ++b) {
          ok = ok && f.mul(a, b) == f.mul_by_polynomial(a, b) && f.mul(a, b) == f.mul(b, a) &&
               f.add(a, b) == f.add(b, a);
          // Associativity and distributivity on a sparse grid of c.
          for (FieldElem c = 0; c < n && ok; c += 1 + n / 8) {
            ok = ok && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)) &&
                 f.add(f.add(a, b), c) == f.add(a, f.add(b, c)) &&
                 f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
          }
        }
      }
      CHECK(ok);
      CHECK(f.order(f.primitive()) == q - 1);
    }
  }

  TEST_CASE("subfield membership") {
    const FieldCtx f = FieldCtx::of_order(16);
    int in4 = 0, in2 = 0;
    for (FieldElem a = 0; a < 16; ++a) {
      in4 += f.in_subfield(a, 4);
      in2 += f.in_subfield(a, 2);
    }
    CHECK(in4 == 4);
    CHECK(in2 == 2);
  }

  TEST_CASE("projective line indexing") {
    const FieldCtx f = FieldCtx::of_order(9);
    for (int i = 0; i < 10; ++i) CHECK(proj_index(f, proj_point(f, i)) == i);
    CHECK(proj_point(f, 0).infinite);
    CHECK(proj_point(f, 1).value == 0);
  }

  TEST_CASE("PGL(2,q) sizes, closure and 3-transitivity") {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
      CAPTURE(q);
      const auto g = pgl2_permutations(q);
      CHECK(g.size() == q * q * q - q);
      std::set<Permutation> set(g.begin(), g.end());
      CHECK(set.size() == g.size());
      for (const auto& p : g) CHECK(p.is_bijective());
      // Closure under composition and inverse (all pairs for q <= 5, a stride otherwise).
      const std::size_t stride = q <= 5 ? 1 : 7;
      bool closed = true;
      for (std::size_t i = 0; i < g.size(); i += stride) {
        closed = closed && set.count(g[i].inverse());
        for (std::size_t j = 0; j < g.size(); j += stride) closed = closed && set.count(g[i].compose(g[j]));
      }
      CHECK(closed);
      // Sharp 3-transitivity: each ordered triple of distinct points has exactly one preimage of (0,1,2).
      std::set<std::tuple<int, int, int>> images;
      for (const auto& p : g) images.emplace(p.image[0], p.image[1], p.image[2]);
      const std::size_t n = q + 1;
      CHECK(images.size() == n * (n - 1) * (n - 2));
    }
    CHECK(pgl2_permutations(2).size() == 6);
    CHECK(pgl2_permutations(4).size() == 60);
    CHECK_THROWS_AS((void)pgl2_permutations(6), InvalidArgument);
  }
}

TEST_SUITE("root_isolation") {
  TEST_CASE("linear root") {
    const BracketedPolynomial<WideFloat> p{{Rational(-1) / 2, Rational(1)}, WideFloat(0), WideFloat(1)};
    CHECK(bracketed_root(p) == WideFloat(0.5));
  }

  TEST_CASE("cubic of the d = 3 seed changes sign on (1/3, 1/2)") {
    const std::vector<Rational> c{-14, 75, -120, 60};
    CHECK(evaluate<Rational>(c, Rational(1, 3)) * evaluate<Rational>(c, Rational(1, 2)) < 0);
    const BracketedPolynomial<WideFloat> p{c, WideFloat(1) / 3, WideFloat(1) / 2};
    const WideFloat r = bracketed_root(p);
    CHECK(abs(evaluate<WideFloat>(c, r)) < WideFloat(1e-30));
  }

  TEST_CASE("brackets split at critical points") {
    // (x - 0.1)(x - 0.5)(x - 0.9) = x^3 - 1.5 x^2 + 0.59 x - 0.045
    const std::vector<Rational> c{Rational(-45, 1000), Rational(59, 100), Rational(-3, 2), Rational(1)};
    const auto br = real_root_brackets<WideFloat>(c, WideFloat(0), WideFloat(1));
    REQUIRE(br.size() == 3);
    const double expect[] = {0.1, 0.5, 0.9};
    for (int i = 0; i < 3; ++i) {
      const WideFloat r = bracketed_root(BracketedPolynomial<WideFloat>{c, br[i].first, br[i].second});
      CHECK(static_cast<double>(r) == doctest::Approx(expect[i]).epsilon(1e-15));
    }
  }

  TEST_CASE("no sign change") {
    const BracketedPolynomial<WideFloat> p{{Rational(1), Rational(0), Rational(1)}, WideFloat(-1), WideFloat(1)};
    CHECK_THROWS_AS((void)bracketed_root(p), NoSignChange);
  }
}
