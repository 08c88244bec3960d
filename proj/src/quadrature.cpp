#include "udint/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace udint {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double simpson_rec(const std::function<double(double)>& f, double a, double m, double b,
                   double fa, double fm, double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double err = (left + right - whole) / 15.0;
    if (depth <= 0 || std::abs(err) <= tol) return left + right + err;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a);
    double fm = f(m);
    double fb = f(b);
    double whole = simpson(fa, fm, fb, b - a);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

namespace {

// Tail toward a segment endpoint: dyadic shells down to `exclusion`, then a
// geometric extrapolation of the remainder from the last shell ratio. Exact
// for power-law blow-ups, conservative no-op when the ratio is unstable.
double endpoint_tail(const std::function<double(double)>& f, double endpoint, double delta,
                     bool left_endpoint, double tol, double exclusion) {
    double total = 0.0;
    double prev_shell = 0.0;
    double last_shell = 0.0;
    bool have_two = false;
    double offset = delta;
    while (offset * 0.5 > exclusion) {
        double next_offset = 0.5 * offset;
        double lo = left_endpoint ? endpoint + next_offset : endpoint - offset;
        double hi = left_endpoint ? endpoint + offset : endpoint - next_offset;
        double shell = adaptive_simpson(f, lo, hi, tol);
        total += shell;
        prev_shell = last_shell;
        have_two = have_two || last_shell != 0.0;
        last_shell = shell;
        offset = next_offset;
    }
    if (have_two && prev_shell != 0.0) {
        double ratio = last_shell / prev_shell;
        if (ratio > 0.0 && ratio < 0.95) total += last_shell * ratio / (1.0 - ratio);
    }
    return total;
}

double segment_integral(const std::function<double(double)>& f, double a, double b, double tol,
                        double exclusion) {
    double w = b - a;
    if (w <= 4.0 * exclusion) return 0.0; // nothing resolvable between two singularities
    double core_lo = a + 0.25 * w;
    double core_hi = b - 0.25 * w;
    double total = adaptive_simpson(f, core_lo, core_hi, tol);
    total += endpoint_tail(f, a, 0.25 * w, true, tol, exclusion);
    total += endpoint_tail(f, b, 0.25 * w, false, tol, exclusion);
    return total;
}

} // namespace

double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> singular, double tol, double exclusion) {
    if (!(b > a)) throw std::invalid_argument("integrate_singular: need a < b");
    std::vector<double> cuts;
    for (double s : singular)
        if (s > a && s < b) cuts.push_back(s);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    double lo = a;
    for (double c : cuts) {
        total += segment_integral(f, lo, c, tol, exclusion);
        lo = c;
    }
    total += segment_integral(f, lo, b, tol, exclusion);
    return total;
}

} // namespace udint
