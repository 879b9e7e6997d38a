#pragma once

#include <stdexcept>

namespace rwg {

// A configured memory or enumeration budget would be exceeded.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to a measure-level or numerical operation.
class MeasureError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rwg
