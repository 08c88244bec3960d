#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "udint/point.hpp"

namespace udint {

// Raised when an estimator evaluates an integrand at a point where it is
// undefined. The generators are expected to avoid such points; hitting one
// is a hard error, never a value to substitute.
class SingularEvaluationError : public std::runtime_error {
  public:
    SingularEvaluationError(std::uint64_t index, double x);

    std::uint64_t sequence_index() const { return index_; }
    double point() const { return point_; }

  private:
    std::uint64_t index_;
    double point_;
};

// An evaluatable function on (0,1) together with the metadata the estimators
// need. eval() returns NaN at declared singular points; any non-finite value
// is treated by callers as an undefined evaluation.
struct Integrand {
    std::string name;
    std::function<double(double)> formula;

    std::optional<double> exact_integral;
    std::vector<double> singular_points; // the finite exceptional set

    // t -> measure of {x in (0,1) : f(x) >= t}; null when no analytic form
    std::function<double(double)> level_measure;
    // t -> integral of f over {x : f(x) < t}; null when no analytic form
    std::function<double(double)> partial_integral;

    bool nonneg = false;
    // Declared, not verified: f is bounded or monotone on each side of every
    // singular point. The numeric level-set scan relies on it.
    bool monotone_near_singular = false;

    double eval(double x) const;
    double operator()(const Point01& p) const { return eval(p.value()); }
};

/// Parse "3/7"-style exact rationals (plain decimals also accepted).
double parse_rational(const std::string& text);

namespace catalog {

Integrand square();                 // x^2, integral 1/3
Integrand log_recip();              // ln(1/x), integral 1, singular at 0
Integrand inv_sqrt();               // x^(-1/2), integral 2, singular at 0
Integrand inv_sqrt_shift(double p); // |x-p|^(-1/2), integral 2(sqrt(p)+sqrt(1-p))
Integrand signed_demo();            // x^2 - ln(1/x), integral 1/3 - 1

// Lookup used by the CLI; inv_sqrt_shift takes the rational p, all other
// names reject it.
Integrand by_name(const std::string& name, std::optional<double> p = std::nullopt);

} // namespace catalog

// Indicator of the complement of a stored point set: 1 everywhere except at
// points bit-identical to a stored one, where it is 0. The stored set is
// finite, hence null, so the declared integral is 1 even though averaging
// along the stored points themselves gives 0.
Integrand counterexample_integrand(std::span<const Point01> points);

Integrand positive_part(const Integrand& f); // max(f, 0)
Integrand negative_part(const Integrand& f); // min(f, 0)

// Measure of the superlevel set {f >= t}. Uses the analytic form when the
// integrand carries one; otherwise a composite midpoint scan at resolution
// 1e-6, which requires nonneg + monotone-near-singular metadata.
double level_set_measure(const Integrand& f, double t);

// Integral of f over {f < t} for nonnegative f; 0 for t <= 0. Uses the
// analytic form when present, otherwise clipped adaptive quadrature away
// from the singular points.
double partial_integral_below(const Integrand& f, double t);

} // namespace udint
