#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sdesign {

/// Row-major block of points: `rows()` points of `cols()` coordinates each.
class PointMatrix {
 public:
  PointMatrix() = default;
  explicit PointMatrix(std::size_t cols) : cols_(cols) {}
  PointMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows * cols, 0.0) {}

  [[nodiscard]] std::size_t rows() const { return cols_ == 0 ? 0 : data_.size() / cols_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool empty() const { return data_.empty(); }

  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  void push_back(std::span<const double> r) { data_.insert(data_.end(), r.begin(), r.end()); }
  void reserve(std::size_t rows) { data_.reserve(rows * cols_); }

  [[nodiscard]] const std::vector<double>& data() const { return data_; }
  [[nodiscard]] std::vector<double>& data() { return data_; }

  friend bool operator==(const PointMatrix&, const PointMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace sdesign
