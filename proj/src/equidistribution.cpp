#include "udint/equidistribution.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "udint/compensated.hpp"

namespace udint {

double interval_ratio(std::span<const Point01> points, double c, double d) {
    if (points.empty()) throw std::invalid_argument("interval_ratio: empty point set");
    if (!(c <= d)) throw std::invalid_argument("interval_ratio: need c <= d");
    if (c < 0.0 || d > 1.0)
        throw std::invalid_argument("interval_ratio: interval must lie inside [0,1]");
    std::size_t hits = 0;
    for (const Point01& p : points) {
        double v = p.value();
        if (v >= c && v <= d) ++hits; // closed on both ends
    }
    return static_cast<double>(hits) / static_cast<double>(points.size());
}

DiscrepancyReport star_discrepancy(std::span<const Point01> points) {
    if (points.empty()) throw std::invalid_argument("star_discrepancy: empty point set");
    std::vector<double> xs;
    xs.reserve(points.size());
    for (const Point01& p : points) xs.push_back(p.value());
    std::sort(xs.begin(), xs.end()); // duplicates kept by multiplicity
    const double n = static_cast<double>(xs.size());
    double best = 0.0;
    double best_t = xs.front();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double up = static_cast<double>(i + 1) / n - xs[i];
        double down = xs[i] - static_cast<double>(i) / n;
        double m = std::max(up, down);
        if (m > best) {
            best = m;
            best_t = xs[i];
        }
    }
    return DiscrepancyReport{xs.size(), best, 0.0, best_t};
}

double weyl_check(std::span<const Point01> points, const Integrand& f) {
    if (points.empty()) throw std::invalid_argument("weyl_check: empty point set");
    if (!f.exact_integral)
        throw std::invalid_argument("weyl_check: integrand '" + f.name +
                                    "' carries no exact integral; supply an oracle value");
    CompensatedSum sum;
    std::uint64_t index = 0;
    for (const Point01& p : points) {
        ++index;
        double v = f(p);
        if (!std::isfinite(v)) throw SingularEvaluationError(index, p.value());
        sum.add(v);
    }
    double mean = sum.value() / static_cast<double>(points.size());
    return std::abs(mean - *f.exact_integral);
}

} // namespace udint
