#pragma once

#include <cstddef>
#include <vector>

#include "histlight/error.hpp"

namespace histlight {

// Dense row-major l x l storage shared by the pair matrices, index maps and
// weight matrices.
template <typename T>
class SquareGrid {
 public:
  SquareGrid() = default;
  SquareGrid(int size, T fill) : size_(size) {
    if (size < 1) throw Error("grid size must be positive");
    data_.assign(static_cast<std::size_t>(size) * size, fill);
  }

  int size() const { return size_; }

  T& operator()(int row, int col) {
    return data_[static_cast<std::size_t>(row) * size_ + col];
  }
  const T& operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * size_ + col];
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool operator==(const SquareGrid&) const = default;

 private:
  int size_ = 0;
  std::vector<T> data_;
};

}  // namespace histlight
