#pragma once

#include <stdexcept>

namespace ncps {

// Physical parameters outside the admissible regime (e.g. mu*nu >= hbar^2).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request the calculus does not cover: fractional entropy orders, state
// classes without a closed star product, unknown figure ids.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ncps
