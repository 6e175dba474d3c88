#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ddg {

// Row-major H x W raster of doubles.
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  double& at(int r, int c) { return data_[idx(r, c)]; }
  double at(int r, int c) const { return data_[idx(r, c)]; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }
  bool same_shape(const Grid& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

 private:
  std::size_t idx(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return static_cast<std::size_t>(r) * cols_ + c;
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Boolean raster, same layout as Grid.
class Mask {
 public:
  Mask() = default;
  Mask(int rows, int cols, bool fill = false)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
              fill ? 1 : 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool at(int r, int c) const { return data_[idx(r, c)] != 0; }
  void set(int r, int c, bool v) { data_[idx(r, c)] = v ? 1 : 0; }
  int count() const {
    int n = 0;
    for (auto v : data_) n += v;
    return n;
  }

 private:
  std::size_t idx(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return static_cast<std::size_t>(r) * cols_ + c;
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace ddg
