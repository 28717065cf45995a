#include "sdesign/finite_field.hpp"

#include <algorithm>
#include <string>

#include "sdesign/errors.hpp"

namespace sdesign {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::optional<PrimePower> is_prime_power(std::uint64_t n) {
  if (n < 2) throw InvalidArgument("is_prime_power: n must be >= 2");
  const auto factors = prime_factors(n);
  if (factors.size() != 1) return std::nullopt;
  PrimePower pp{factors.front(), 0};
  while (n > 1) {
    n /= pp.p;
    ++pp.m;
  }
  return pp;
}

std::uint64_t next_prime_power(std::uint64_t n) {
  if (n < 2) throw InvalidArgument("next_prime_power: n must be >= 2");
  while (!is_prime_power(n)) ++n;
  return n;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, index = power

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Remainder of a modulo the monic polynomial m over F_p.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = static_cast<std::uint64_t>(lead) * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  trim(out);
  return out;
}

Poly digits_of(std::uint64_t v, std::uint32_t p, int len) {
  Poly out(len, 0);
  for (int i = 0; i < len; ++i) {
    out[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  return out;
}

std::uint32_t encode(const Poly& a, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return static_cast<std::uint32_t>(v);
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const int m = static_cast<int>(f.size()) - 1;
  for (int e = 1; e <= m / 2; ++e) {
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      Poly g = digits_of(k, p, e);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

FieldCtx FieldCtx::make(std::uint64_t p, int m) {
  if (!is_prime(p)) throw InvalidArgument("make_field: p = " + std::to_string(p) + " is not prime");
  if (m < 1) throw InvalidArgument("make_field: degree must be >= 1");
  std::uint64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxSize) throw ResourceCap("make_field: field size exceeds 2^20");
  }
  FieldCtx f;
  f.p_ = static_cast<std::uint32_t>(p);
  f.m_ = m;
  f.q_ = static_cast<std::uint32_t>(q);

  for (std::uint64_t k = 0; k < q; ++k) {
    Poly cand = digits_of(k, f.p_, m);
    cand.push_back(1);
    if (is_irreducible(cand, f.p_)) {
      f.modulus_ = cand;
      break;
    }
  }
  if (f.modulus_.empty()) throw ConstructionError("make_field: no irreducible modulus found");

  const std::uint64_t group = q - 1;
  const auto factors = prime_factors(group);
  auto slow_pow = [&f](FieldElem a, std::uint64_t e) {
    FieldElem r = 1;
    while (e > 0) {
      if (e & 1) r = f.mul_by_polynomial(r, a);
      a = f.mul_by_polynomial(a, a);
      e >>= 1;
    }
    return r;
  };
  for (FieldElem g = 1; g < q; ++g) {
    bool generator = true;
    for (auto r : factors) {
      if (slow_pow(g, group / r) == 1) {
        generator = false;
        break;
      }
    }
    if (generator || group == 1) {
      f.primitive_ = g;
      break;
    }
  }
  if (f.primitive_ == 0) throw ConstructionError("make_field: no primitive element found");

  f.exp_.assign(group, 0);
  f.log_.assign(q, 0);
  FieldElem cur = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    f.exp_[i] = cur;
    f.log_[cur] = static_cast<std::uint32_t>(i);
    cur = f.mul_by_polynomial(cur, f.primitive_);
  }
  if (cur != 1) throw ConstructionError("make_field: primitive element has wrong order");
  return f;
}

FieldCtx FieldCtx::of_order(std::uint64_t q) {
  if (q < 2) throw InvalidArgument("field order must be >= 2");
  const auto pp = is_prime_power(q);
  if (!pp) throw InvalidArgument("field order " + std::to_string(q) + " is not a prime power");
  return make(pp->p, pp->m);
}

FieldElem FieldCtx::mul_by_polynomial(FieldElem a, FieldElem b) const {
  Poly pa = digits_of(a, p_, m_);
  Poly pb = digits_of(b, p_, m_);
  trim(pa);
  trim(pb);
  return encode(poly_mod(poly_mul(pa, pb, p_), modulus_, p_), p_);
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
  if (p_ == 2) return a ^ b;
  FieldElem out = 0;
  FieldElem place = 1;
  while (a > 0 || b > 0) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

FieldElem FieldCtx::neg(FieldElem a) const {
  if (p_ == 2) return a;
  FieldElem out = 0;
  FieldElem place = 1;
  while (a > 0) {
    out += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return out;
}

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a == 0) throw InvalidArgument("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FieldElem FieldCtx::pow(FieldElem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<unsigned __int128>(log_[a]) * e) % (q_ - 1)];
}

std::uint32_t FieldCtx::log(FieldElem a) const {
  if (a == 0 || a >= q_) throw InvalidArgument("log of zero or out-of-range element");
  return log_[a];
}

std::uint64_t FieldCtx::order(FieldElem a) const {
  const std::uint64_t group = q_ - 1;
  const std::uint64_t l = log(a);
  std::uint64_t g = group;
  std::uint64_t x = l;
  while (x != 0) {
    const auto r = g % x;
    g = x;
    x = r;
  }
  return group / g;
}

bool FieldCtx::in_subfield(FieldElem a, std::uint64_t sub) const {
  std::uint64_t pw = 1;
  int k = 0;
  while (pw < sub) {
    pw *= p_;
    ++k;
  }
  if (pw != sub || k == 0 || m_ % k != 0) {
    throw InvalidArgument("in_subfield: " + std::to_string(sub) + " is not a subfield order");
  }
  if (a == 0) return true;
  const std::uint64_t cofactor = (static_cast<std::uint64_t>(q_) - 1) / (sub - 1);
  return log(a) % cofactor == 0;
}

int proj_index(const FieldCtx& f, ProjLinePoint pt) {
  if (pt.infinite) return 0;
  if (pt.value == 0) return 1;
  return static_cast<int>(f.log(pt.value)) + 2;
}

ProjLinePoint proj_point(const FieldCtx& f, int index) {
  if (index < 0 || index > static_cast<int>(f.size())) {
    throw InvalidArgument("projective line index out of range");
  }
  if (index == 0) return {true, 0};
  if (index == 1) return {false, 0};
  return {false, f.exp(static_cast<std::uint64_t>(index - 2))};
}

bool Permutation::is_bijective() const {
  std::vector<char> seen(image.size(), 0);
  for (int v : image) {
    if (v < 0 || v >= static_cast<int>(image.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw InvalidArgument("compose: size mismatch");
  Permutation out;
  out.image.resize(size());
  for (std::size_t i = 0; i < size(); ++i) out.image[i] = image[other.image[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.image.resize(size());
  for (std::size_t i = 0; i < size(); ++i) out.image[image[i]] = static_cast<int>(i);
  return out;
}

std::vector<Permutation> pgl2_permutations(std::uint64_t q) {
  if (q < 2 || !is_prime_power(q)) {
    throw InvalidArgument("pgl2_permutations: q = " + std::to_string(q) + " is not a prime power");
  }
  const FieldCtx f = FieldCtx::of_order(q);
  const int npts = static_cast<int>(q) + 1;

  auto apply = [&f](FieldElem a, FieldElem b, FieldElem c, FieldElem d, ProjLinePoint z) {
    if (z.infinite) {
      if (c == 0) return ProjLinePoint{true, 0};
      return ProjLinePoint{false, f.div(a, c)};
    }
    const FieldElem den = f.add(f.mul(c, z.value), d);
    if (den == 0) return ProjLinePoint{true, 0};
    return ProjLinePoint{false, f.div(f.add(f.mul(a, z.value), b), den)};
  };
  auto as_perm = [&](FieldElem a, FieldElem b, FieldElem c, FieldElem d) {
    Permutation perm;
    perm.image.resize(npts);
    for (int i = 0; i < npts; ++i) perm.image[i] = proj_index(f, apply(a, b, c, d, proj_point(f, i)));
    return perm;
  };

  // Representatives modulo scalars: c = 1, or c = 0 and d = 1.
  std::vector<Permutation> out;
  out.reserve(q * q * q - q);
  const auto qq = static_cast<FieldElem>(q);
  for (FieldElem a = 1; a < qq; ++a) {
    for (FieldElem b = 0; b < qq; ++b) out.push_back(as_perm(a, b, 0, 1));
  }
  for (FieldElem a = 0; a < qq; ++a) {
    for (FieldElem b = 0; b < qq; ++b) {
      for (FieldElem d = 0; d < qq; ++d) {
        if (f.mul(a, d) == b) continue;  // ad - bc = 0 with c = 1
        out.push_back(as_perm(a, b, 1, d));
      }
    }
  }
  return out;
}

}  // namespace sdesign
