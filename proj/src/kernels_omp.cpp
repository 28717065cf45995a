#include <omp.h>

#include <algorithm>
#include <cmath>

#include "sdesign/errors.hpp"
#include "sdesign/kernels.hpp"

namespace sdesign {

int set_kernel_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
  return omp_get_max_threads();
}

int kernel_threads() { return omp_get_max_threads(); }

namespace omp {

namespace {

void check_weights(const PointMatrix& pts, std::span<const double> weights) {
  if (weights.size() != pts.rows()) throw InvalidArgument("kernel: one weight per point required");
}

// Accumulator for many double-double terms of similar magnitude: the high
// parts go through two_sum, everything else collects in `lo`.
struct Accum {
  double hi = 0.0;
  double lo = 0.0;
  void add(DoubleDouble x) {
    const auto [s, e] = two_sum(hi, x.hi);
    hi = s;
    lo += e + x.lo;
  }
  [[nodiscard]] DoubleDouble dd() const {
    const auto r = fast_two_sum(hi, lo);
    return {r.sum, r.err};
  }
};

inline DoubleDouble scale(DoubleDouble p, double w) {
  const auto [h, e] = two_prod(p.hi, w);
  const auto r = fast_two_sum(h, e + p.lo * w);
  return {r.sum, r.err};
}

constexpr int kMaxPower = 64;

// Row i contributes w_i (w_i g_ii^k + 2 sum_{j > i} w_j g_ij^k). Each row is
// computed by one thread and rows are merged in index order, so the result
// does not depend on the thread count.
template <class Gram>
std::vector<DoubleDouble> symmetric_pair_sums(std::size_t n_pts, std::span<const double> weights,
                                              int max_k, Gram gram) {
  if (max_k < 0 || max_k > kMaxPower) throw InvalidArgument("kernel: power out of range");
  const std::size_t width = static_cast<std::size_t>(max_k) + 1;
  std::vector<DoubleDouble> rows(n_pts * width);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < n_pts; ++i) {
    Accum acc[kMaxPower + 1];
    for (std::size_t j = i + 1; j < n_pts; ++j) {
      const DoubleDouble g = gram(i, j);
      DoubleDouble p(weights[j]);
      acc[0].add(p);
      for (int k = 1; k <= max_k; ++k) {
        p *= g;
        acc[k].add(p);
      }
    }
    const DoubleDouble gii = gram(i, i);
    DoubleDouble p(weights[i]);
    for (int k = 0; k <= max_k; ++k) {
      if (k > 0) p *= gii;
      const DoubleDouble off = acc[k].dd();
      rows[i * width + k] = scale(p + off + off, weights[i]);
    }
  }
  std::vector<DoubleDouble> out(width);
  for (std::size_t i = 0; i < n_pts; ++i) {
    for (std::size_t k = 0; k < width; ++k) out[k] += rows[i * width + k];
  }
  return out;
}

}  // namespace

std::vector<DoubleDouble> pair_power_sums(const PointMatrix& pts, std::span<const double> weights,
                                          int max_k) {
  check_weights(pts, weights);
  std::vector<DoubleDouble> inv(pts.rows());
  for (std::size_t i = 0; i < pts.rows(); ++i) inv[i] = inv_sqrt_dd(dot_dd(pts.row(i), pts.row(i)));
  return symmetric_pair_sums(pts.rows(), weights, max_k, [&](std::size_t i, std::size_t j) {
    return dot_dd(pts.row(i), pts.row(j)) * (inv[i] * inv[j]);
  });
}

std::vector<DoubleDouble> hermitian_pair_power_sums(const PointMatrix& vecs,
                                                    std::span<const double> weights, int max_k) {
  check_weights(vecs, weights);
  const std::size_t d = vecs.cols() / 2;
  // rot_j = (y_im, -y_re) so that Im <x, y> = x . rot_j.
  PointMatrix rot(vecs.rows(), vecs.cols());
  for (std::size_t j = 0; j < vecs.rows(); ++j) {
    const auto y = vecs.row(j);
    auto r = rot.row(j);
    for (std::size_t n = 0; n < d; ++n) {
      r[n] = y[d + n];
      r[d + n] = -y[n];
    }
  }
  // inv2[i] = 1 / |x_i|^2
  std::vector<DoubleDouble> inv2(vecs.rows());
  for (std::size_t i = 0; i < vecs.rows(); ++i) {
    const DoubleDouble r = inv_sqrt_dd(dot_dd(vecs.row(i), vecs.row(i)));
    inv2[i] = r * r;
  }
  return symmetric_pair_sums(vecs.rows(), weights, max_k, [&](std::size_t i, std::size_t j) {
    const DoubleDouble re = dot_dd(vecs.row(i), vecs.row(j));
    const DoubleDouble im = dot_dd(vecs.row(i), rot.row(j));
    return (re * re + im * im) * (inv2[i] * inv2[j]);
  });
}

std::vector<double> monomial_sums(const PointMatrix& pts, std::span<const double> weights,
                                  std::span<const MultiIndex> alphas) {
  check_weights(pts, weights);
  const std::size_t dim = pts.cols();
  int max_e = 0;
  for (const auto& alpha : alphas) {
    if (alpha.size() != dim) throw InvalidArgument("kernel: exponent length != dimension");
    for (int e : alpha) max_e = std::max(max_e, e);
  }
  // powers[(i * dim + c) * (max_e + 1) + e] = x_ic^e
  const std::size_t stride = static_cast<std::size_t>(max_e) + 1;
  std::vector<double> powers(pts.rows() * dim * stride);
  for (std::size_t i = 0; i < pts.rows(); ++i) {
    const auto x = pts.row(i);
    for (std::size_t c = 0; c < dim; ++c) {
      double* p = &powers[(i * dim + c) * stride];
      p[0] = 1.0;
      for (std::size_t e = 1; e < stride; ++e) p[e] = p[e - 1] * x[c];
    }
  }
  std::vector<double> out(alphas.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    const auto& alpha = alphas[a];
    NeumaierSum acc;
    for (std::size_t i = 0; i < pts.rows(); ++i) {
      double v = weights[i];
      const double* row = &powers[i * dim * stride];
      for (std::size_t c = 0; c < dim; ++c) {
        if (alpha[c] != 0) v *= row[c * stride + alpha[c]];
      }
      acc.add(v);
    }
    out[a] = acc.value();
  }
  return out;
}

}  // namespace omp

}  // namespace sdesign
