#pragma once

#include <cstddef>
#include <vector>

#include "histlight/error.hpp"

namespace histlight {

// Quantized intensity plane: every sample is a level in [0, levels - 1].
struct ValueChannel {
  int width = 0;
  int height = 0;
  int levels = 256;
  std::vector<int> data;  // row-major, width * height

  ValueChannel() = default;
  ValueChannel(int w, int h, int l, std::vector<int> values)
      : width(w), height(h), levels(l), data(std::move(values)) {
    validate();
  }

  std::size_t pixel_count() const { return data.size(); }

  int at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  int& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }

  void validate() const {
    if (width < 0 || height < 0) throw Error("negative channel dimensions");
    if (levels < 2) throw Error("levels must be at least 2");
    if (data.size() != static_cast<std::size_t>(width) * height) {
      throw Error("channel data does not match its dimensions");
    }
    for (int v : data) {
      if (v < 0 || v >= levels) throw Error("channel level out of range");
    }
  }

  bool operator==(const ValueChannel&) const = default;
};

}  // namespace histlight
