#pragma once

#include <cstddef>
#include <span>

#include "udint/integrand.hpp"
#include "udint/point.hpp"

namespace udint {

struct DiscrepancyReport {
    std::size_t n = 0;
    double d_star = 0.0;
    // anchored interval [c,d) attaining the supremum among tested intervals
    double worst_c = 0.0;
    double worst_d = 0.0;
};

// #({points} in [c,d]) / n with closed-interval membership on both ends.
double interval_ratio(std::span<const Point01> points, double c, double d);

// Exact one-dimensional star discrepancy via the sorted-sample formula
// D* = max_i max(i/n - x_(i), x_(i) - (i-1)/n). Duplicates are kept; the
// counting measure counts multiplicity.
DiscrepancyReport star_discrepancy(std::span<const Point01> points);

// |(1/N) sum f(x_n) - integral of f|. The integrand must be continuous and
// bounded on [0,1] (caller's responsibility) and must carry an exact
// integral to compare against.
double weyl_check(std::span<const Point01> points, const Integrand& f);

} // namespace udint
