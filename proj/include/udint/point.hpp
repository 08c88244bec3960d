#pragma once

#include <cmath>
#include <stdexcept>

namespace udint {

// A point strictly inside the open unit interval. Generators never emit the
// endpoints; integrands are allowed to be singular there.
class Point01 {
  public:
    explicit Point01(double v) : value_(v) {
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument("Point01: value must lie strictly inside (0,1)");
    }

    double value() const { return value_; }

  private:
    double value_;
};

// x - floor(x), in [0,1). Integer input yields 0, so the result is not
// always a valid Point01.
inline double fractional_part(double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("fractional_part: input must be finite");
    return x - std::floor(x);
}

} // namespace udint
