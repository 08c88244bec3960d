#pragma once

#include <functional>
#include <span>

namespace udint {

// Classic adaptive Simpson with the err/15 refinement test. f must be finite
// on [a,b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 30);

// Integral over (a,b) of a function that may blow up at the interval
// endpoints and at the interior points listed in `singular`. The interval is
// split at the interior singularities; each piece is integrated adaptively
// over a central core while both endpoint tails are summed over dyadic
// shells down to `exclusion` and the remainder extrapolated geometrically
// from the last shell ratio. Nothing is ever evaluated within `exclusion` of
// a singular point.
double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> singular, double tol = 1e-12,
                          double exclusion = 1e-10);

} // namespace udint
