#include "udint/integrand.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <unordered_set>

#include "udint/quadrature.hpp"

namespace udint {

namespace {

std::string describe_singular(std::uint64_t index, double x) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand undefined at sequence index " << index << ", x = " << x;
    return os.str();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

SingularEvaluationError::SingularEvaluationError(std::uint64_t index, double x)
    : std::runtime_error(describe_singular(index, x)), index_(index), point_(x) {}

double Integrand::eval(double x) const {
    for (double s : singular_points)
        if (x == s) return kNaN;
    return formula(x);
}

double parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long num = std::stoll(text.substr(0, slash));
        long long den = std::stoll(text.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("parse_rational: denominator must be positive");
        return static_cast<double>(num) / static_cast<double>(den);
    }
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v))
        throw std::invalid_argument("parse_rational: cannot parse '" + text + "'");
    return v;
}

namespace catalog {

Integrand square() {
    Integrand f;
    f.name = "square";
    f.formula = [](double x) { return x * x; };
    f.exact_integral = 1.0 / 3.0;
    f.nonneg = true;
    f.monotone_near_singular = true;
    f.level_measure = [](double t) {
        if (t <= 0.0) return 1.0;
        if (t >= 1.0) return 0.0;
        return 1.0 - std::sqrt(t);
    };
    f.partial_integral = [](double t) {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0 / 3.0;
        return std::pow(t, 1.5) / 3.0;
    };
    return f;
}

Integrand log_recip() {
    Integrand f;
    f.name = "log_recip";
    f.formula = [](double x) { return std::log(1.0 / x); };
    f.exact_integral = 1.0;
    f.singular_points = {0.0};
    f.nonneg = true;
    f.monotone_near_singular = true;
    f.level_measure = [](double t) { return t <= 0.0 ? 1.0 : std::exp(-t); };
    f.partial_integral = [](double t) {
        // integral over {ln(1/x) < t} = (e^-t, 1); antiderivative x - x ln x
        return t <= 0.0 ? 0.0 : 1.0 - std::exp(-t) * (1.0 + t);
    };
    return f;
}

Integrand inv_sqrt() {
    Integrand f;
    f.name = "inv_sqrt";
    f.formula = [](double x) { return 1.0 / std::sqrt(x); };
    f.exact_integral = 2.0;
    f.singular_points = {0.0};
    f.nonneg = true;
    f.monotone_near_singular = true;
    f.level_measure = [](double t) { return t <= 1.0 ? 1.0 : 1.0 / (t * t); };
    f.partial_integral = [](double t) {
        // f > 1 on (0,1), so {f < t} is empty until t passes 1
        return t <= 1.0 ? 0.0 : 2.0 - 2.0 / t;
    };
    return f;
}

Integrand inv_sqrt_shift(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("inv_sqrt_shift: p must lie strictly inside (0,1)");
    Integrand f;
    f.name = "inv_sqrt_shift";
    f.formula = [p](double x) { return 1.0 / std::sqrt(std::abs(x - p)); };
    f.exact_integral = 2.0 * (std::sqrt(p) + std::sqrt(1.0 - p));
    f.singular_points = {p};
    f.nonneg = true;
    f.monotone_near_singular = true;
    f.level_measure = [p](double t) {
        if (t <= 0.0) return 1.0;
        double r = 1.0 / (t * t); // {|x-p| <= r}
        return std::min(p, r) + std::min(1.0 - p, r);
    };
    f.partial_integral = [p](double t) {
        if (t <= 0.0) return 0.0;
        double r = 1.0 / (t * t);
        double left = p > r ? 2.0 * (std::sqrt(p) - std::sqrt(r)) : 0.0;
        double right = (1.0 - p) > r ? 2.0 * (std::sqrt(1.0 - p) - std::sqrt(r)) : 0.0;
        return left + right;
    };
    return f;
}

Integrand signed_demo() {
    Integrand f;
    f.name = "signed_demo";
    f.formula = [](double x) { return x * x - std::log(1.0 / x); };
    f.exact_integral = 1.0 / 3.0 - 1.0;
    f.singular_points = {0.0};
    f.nonneg = false;
    f.monotone_near_singular = true; // increasing on all of (0,1)
    return f;
}

Integrand by_name(const std::string& name, std::optional<double> p) {
    if (name == "inv_sqrt_shift") {
        if (!p) throw std::invalid_argument("integrand inv_sqrt_shift requires parameter p");
        return inv_sqrt_shift(*p);
    }
    if (p) throw std::invalid_argument("integrand '" + name + "' takes no parameter p");
    if (name == "square") return square();
    if (name == "log_recip") return log_recip();
    if (name == "inv_sqrt") return inv_sqrt();
    if (name == "signed_demo") return signed_demo();
    throw std::invalid_argument(
        "unknown integrand '" + name +
        "' (expected square|log_recip|inv_sqrt|inv_sqrt_shift|signed_demo|counterexample)");
}

} // namespace catalog

Integrand counterexample_integrand(std::span<const Point01> points) {
    auto stored = std::make_shared<std::unordered_set<double>>();
    stored->reserve(points.size());
    for (const Point01& p : points) stored->insert(p.value());
    Integrand f;
    f.name = "counterexample";
    f.formula = [stored](double x) { return stored->count(x) ? 0.0 : 1.0; };
    f.exact_integral = 1.0; // the stored set is finite, hence null
    f.nonneg = true;
    f.monotone_near_singular = true; // bounded everywhere
    f.level_measure = [](double t) { return t <= 1.0 ? 1.0 : 0.0; };
    f.partial_integral = [](double t) { return t <= 1.0 ? 0.0 : 1.0; };
    return f;
}

Integrand positive_part(const Integrand& f) {
    Integrand g;
    g.name = "positive_part(" + f.name + ")";
    Integrand base = f;
    g.formula = [base](double x) {
        double v = base.eval(x);
        if (std::isnan(v)) return v; // undefined stays undefined
        return v > 0.0 ? v : 0.0;
    };
    g.singular_points = f.singular_points;
    g.nonneg = true;
    g.monotone_near_singular = f.monotone_near_singular;
    if (f.nonneg) {
        // max(f,0) is f itself; all metadata carries over
        g.exact_integral = f.exact_integral;
        g.level_measure = f.level_measure;
        g.partial_integral = f.partial_integral;
    }
    return g;
}

Integrand negative_part(const Integrand& f) {
    Integrand g;
    g.name = "negative_part(" + f.name + ")";
    Integrand base = f;
    g.formula = [base](double x) {
        double v = base.eval(x);
        if (std::isnan(v)) return v;
        return v < 0.0 ? v : 0.0;
    };
    g.singular_points = f.singular_points;
    g.nonneg = f.nonneg; // the zero function when f is nonnegative
    g.monotone_near_singular = f.monotone_near_singular;
    if (f.nonneg) {
        g.exact_integral = 0.0;
        g.level_measure = [](double t) { return t <= 0.0 ? 1.0 : 0.0; };
        g.partial_integral = [](double) { return 0.0; };
    }
    return g;
}

double level_set_measure(const Integrand& f, double t) {
    if (f.level_measure) return f.level_measure(t);
    if (!(f.nonneg && f.monotone_near_singular))
        throw std::invalid_argument("level_set_measure: '" + f.name +
                                    "' has no analytic level measure and no monotonicity "
                                    "metadata for the numeric scan");
    // Composite midpoint scan. A non-finite midpoint value sits against a
    // declared monotone blow-up, so the whole cell lies in {f >= t}.
    const std::size_t cells = 1'000'000;
    const double width = 1.0 / static_cast<double>(cells);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < cells; ++i) {
        double m = (static_cast<double>(i) + 0.5) * width;
        double v = f.eval(m);
        if (!std::isfinite(v) || v >= t) ++hits;
    }
    return static_cast<double>(hits) * width;
}

double partial_integral_below(const Integrand& f, double t) {
    if (!f.nonneg)
        throw std::invalid_argument(
            "partial_integral_below: stated for nonnegative integrands; split signed ones first");
    if (t <= 0.0) return 0.0; // {f < t} is null for nonneg f
    if (f.partial_integral) return f.partial_integral(t);
    Integrand base = f;
    auto clipped = [base, t](double x) {
        double v = base.eval(x);
        if (!std::isfinite(v)) return 0.0; // blow-up region lies in {f >= t}
        return v < t ? v : 0.0;
    };
    return integrate_singular(clipped, 0.0, 1.0, f.singular_points);
}

} // namespace udint
