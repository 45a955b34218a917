#pragma once

#include <stdexcept>

namespace histlight {

// Thrown for contract violations on inputs (bad sizes, out-of-range
// parameters, degenerate histograms).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace histlight
