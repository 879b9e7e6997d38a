#pragma once

#include <cmath>
#include <limits>

namespace rwg {

// A nonnegative real stored as mantissa * exp(log_scale) so that very small
// return probabilities survive without underflow.
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;

  static ScaledValue from_log(double log_value) {
    if (std::isinf(log_value) && log_value < 0) return {};
    return {1.0, log_value};
  }

  bool is_zero() const { return mantissa == 0.0; }
  double value() const { return mantissa * std::exp(log_scale); }
  double log() const {
    return mantissa > 0 ? std::log(mantissa) + log_scale : -std::numeric_limits<double>::infinity();
  }
  double log10() const { return log() / std::log(10.0); }
};

// a / b, computed in log space.
inline double ratio(const ScaledValue& a, const ScaledValue& b) {
  if (a.is_zero()) return 0.0;
  return (a.mantissa / b.mantissa) * std::exp(a.log_scale - b.log_scale);
}

}  // namespace rwg
