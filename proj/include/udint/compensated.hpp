#pragma once

#include <cmath>

namespace udint {

// Neumaier-compensated running sum. Trajectories accumulate up to 1e7
// unbounded summands; a plain double sum would drift.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace udint
