#pragma once

#include <span>
#include <vector>

#include "multi_index.hpp"
#include "numerics.hpp"
#include "point_matrix.hpp"

namespace sdesign {

/// Data-parallel reductions used by the verifiers. Each kernel exists twice:
/// `serial` is the straightforward reference kept for testing, `omp` the
/// OpenMP version. The OpenMP kernels partition work into fixed blocks and
/// merge block results in a fixed order, so their output does not depend on
/// the thread count.
namespace serial {

/// S_k = sum_{x,y} w_x w_y (x.y)^k for k = 0..max_k, with every point first
/// scaled to unit length in double-double arithmetic.
std::vector<DoubleDouble> pair_power_sums(const PointMatrix& pts, std::span<const double> weights,
                                          int max_k);

/// S_k = sum_{x,y} w_x w_y |<x,y>|^{2k} for complex vectors stored (re, im),
/// also taken over the normalized vectors.
std::vector<DoubleDouble> hermitian_pair_power_sums(const PointMatrix& vecs,
                                                    std::span<const double> weights, int max_k);

/// sum_x w_x x^alpha for every exponent vector in `alphas`.
std::vector<double> monomial_sums(const PointMatrix& pts, std::span<const double> weights,
                                  std::span<const MultiIndex> alphas);

}  // namespace serial

namespace omp {

std::vector<DoubleDouble> pair_power_sums(const PointMatrix& pts, std::span<const double> weights,
                                          int max_k);
std::vector<DoubleDouble> hermitian_pair_power_sums(const PointMatrix& vecs,
                                                    std::span<const double> weights, int max_k);
std::vector<double> monomial_sums(const PointMatrix& pts, std::span<const double> weights,
                                  std::span<const MultiIndex> alphas);

}  // namespace omp

/// Sets the OpenMP thread count for subsequent kernels when n > 0 and
/// returns the count in effect.
int set_kernel_threads(int n);
int kernel_threads();

}  // namespace sdesign
