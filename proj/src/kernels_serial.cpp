#include <cmath>

#include "sdesign/errors.hpp"
#include "sdesign/kernels.hpp"

namespace sdesign::serial {

namespace {

void check_weights(const PointMatrix& pts, std::span<const double> weights) {
  if (weights.size() != pts.rows()) throw InvalidArgument("kernel: one weight per point required");
}

DoubleDouble power_dd(DoubleDouble g, int k) {
  DoubleDouble p(1.0);
  for (int i = 0; i < k; ++i) p *= g;
  return p;
}

}  // namespace

// Reference versions: the full N x N grid in row order, no symmetry shortcuts.

std::vector<DoubleDouble> pair_power_sums(const PointMatrix& pts, std::span<const double> weights,
                                          int max_k) {
  check_weights(pts, weights);
  std::vector<DoubleDouble> out(static_cast<std::size_t>(max_k) + 1);
  for (std::size_t i = 0; i < pts.rows(); ++i) {
    for (std::size_t j = 0; j < pts.rows(); ++j) {
      const DoubleDouble ni = dot_dd(pts.row(i), pts.row(i));
      const DoubleDouble nj = dot_dd(pts.row(j), pts.row(j));
      const DoubleDouble g = dot_dd(pts.row(i), pts.row(j)) * inv_sqrt_dd(ni) * inv_sqrt_dd(nj);
      const DoubleDouble ww = DoubleDouble(weights[i]) * DoubleDouble(weights[j]);
      for (int k = 0; k <= max_k; ++k) out[k] += ww * power_dd(g, k);
    }
  }
  return out;
}

std::vector<DoubleDouble> hermitian_pair_power_sums(const PointMatrix& vecs,
                                                    std::span<const double> weights, int max_k) {
  check_weights(vecs, weights);
  const std::size_t d = vecs.cols() / 2;
  std::vector<DoubleDouble> out(static_cast<std::size_t>(max_k) + 1);
  std::vector<double> rot(vecs.cols());
  for (std::size_t i = 0; i < vecs.rows(); ++i) {
    for (std::size_t j = 0; j < vecs.rows(); ++j) {
      const auto x = vecs.row(i);
      const auto y = vecs.row(j);
      // Im <x, y> with <x, y> = sum conj(x_n) y_n is x_re . y_im - x_im . y_re.
      for (std::size_t n = 0; n < d; ++n) {
        rot[n] = y[d + n];
        rot[d + n] = -y[n];
      }
      const DoubleDouble re = dot_dd(x, y);
      const DoubleDouble im = dot_dd(x, rot);
      const DoubleDouble ni = dot_dd(x, x);
      const DoubleDouble nj = dot_dd(y, y);
      const DoubleDouble m = (re * re + im * im) * inv_sqrt_dd(ni * nj) * inv_sqrt_dd(ni * nj);
      const DoubleDouble ww = DoubleDouble(weights[i]) * DoubleDouble(weights[j]);
      for (int k = 0; k <= max_k; ++k) out[k] += ww * power_dd(m, k);
    }
  }
  return out;
}

std::vector<double> monomial_sums(const PointMatrix& pts, std::span<const double> weights,
                                  std::span<const MultiIndex> alphas) {
  check_weights(pts, weights);
  std::vector<double> out;
  out.reserve(alphas.size());
  for (const auto& alpha : alphas) {
    if (alpha.size() != pts.cols()) throw InvalidArgument("kernel: exponent length != dimension");
    NeumaierSum acc;
    for (std::size_t i = 0; i < pts.rows(); ++i) {
      const auto x = pts.row(i);
      double v = weights[i];
      for (std::size_t c = 0; c < alpha.size(); ++c) {
        for (int e = 0; e < alpha[c]; ++e) v *= x[c];
      }
      acc.add(v);
    }
    out.push_back(acc.value());
  }
  return out;
}

}  // namespace sdesign::serial
