#ifndef HS_CORE_GRID_HPP
#define HS_CORE_GRID_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "core/errors.hpp"

namespace hs {

// Row-major 2D grid; pixel (0,0) is top-left.
template <typename T>
class Grid {
public:
  Grid() : rows_(0), cols_(0) {}
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  bool same_shape(const Grid& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool operator==(const Grid& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using RealGrid = Grid<double>;
using ComplexGrid = Grid<std::complex<double>>;
using BoolGrid = Grid<unsigned char>;

inline void require_same_shape(const char* what, std::size_t r1, std::size_t c1,
                               std::size_t r2, std::size_t c2) {
  if (r1 != r2 || c1 != c2)
    fail(errc::incompatible_grid, std::string(what) + ": grid shapes differ (" +
                                      std::to_string(r1) + "x" + std::to_string(c1) + " vs " +
                                      std::to_string(r2) + "x" + std::to_string(c2) + ")");
}

} // namespace hs

#endif
