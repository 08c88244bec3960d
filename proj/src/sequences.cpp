#include "udint/sequences.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace udint {

namespace {

struct TwoDouble {
    double hi;
    double lo;
};

// error-free transformation of a + b
inline TwoDouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

Point01 checked_point(double v, const char* who) {
    if (!(v > 0.0 && v < 1.0))
        throw std::runtime_error(std::string(who) +
                                 ": emitted a boundary value; this is a generator bug");
    return Point01(v);
}

inline double uniform_open01(std::mt19937_64& rng) {
    for (;;) {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u != 0.0) return u; // exact zero is redrawn; 1.0 is unreachable
    }
}

} // namespace

double named_alpha(const std::string& name) {
    if (name == "sqrt2") return std::numbers::sqrt2;
    if (name == "pi") return std::numbers::pi;
    if (name == "phi") return std::numbers::phi;
    throw std::invalid_argument("named_alpha: unknown constant '" + name +
                                "' (expected sqrt2|pi|phi)");
}

bool passes_irrationality_heuristic(double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0) return false;
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, alpha);
    double x = alpha;
    // convergent recursion p_k = a_k p_{k-1} + p_{k-2}, same for q
    double p_prev = 1.0, q_prev = 0.0;
    double p_cur = std::floor(alpha), q_cur = 1.0;
    for (int it = 0; it < 64; ++it) {
        if (q_cur > 1e6) return true; // no small-denominator match
        if (std::abs(alpha - p_cur / q_cur) <= tol) return false;
        double frac = x - std::floor(x);
        if (frac < 1e-18) return true; // expansion terminated past the check above
        x = 1.0 / frac;
        double a = std::floor(x);
        double p_next = a * p_cur + p_prev;
        double q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    return true;
}

SequenceSpec SequenceSpec::kronecker(double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0)
        throw std::invalid_argument("SequenceSpec: kronecker alpha must be positive and finite");
    if (!passes_irrationality_heuristic(alpha))
        throw std::invalid_argument(
            "SequenceSpec: alpha coincides with p/q for some q <= 1e6; refusing a "
            "(near-)rational multiplier");
    return SequenceSpec{KroneckerSpec{alpha}};
}

SequenceSpec SequenceSpec::kronecker_named(const std::string& constant) {
    return kronecker(named_alpha(constant));
}

SequenceSpec SequenceSpec::hybrid_pi() { return SequenceSpec{HybridPiSpec{}}; }

SequenceSpec SequenceSpec::van_der_corput(std::uint32_t base) {
    if (base < 2) throw std::invalid_argument("SequenceSpec: van_der_corput base must be >= 2");
    return SequenceSpec{VanDerCorputSpec{base}};
}

SequenceSpec SequenceSpec::prng(std::uint64_t seed) { return SequenceSpec{PrngSpec{seed}}; }

std::string SequenceSpec::kind_name() const {
    struct Visitor {
        std::string operator()(const KroneckerSpec&) const { return "kronecker"; }
        std::string operator()(const HybridPiSpec&) const { return "hybrid_pi"; }
        std::string operator()(const VanDerCorputSpec&) const { return "van_der_corput"; }
        std::string operator()(const PrngSpec&) const { return "prng"; }
    };
    return std::visit(Visitor{}, kind);
}

void to_json(nlohmann::json& j, const SequenceSpec& spec) {
    std::visit(
        [&j](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, KroneckerSpec>) {
                j = nlohmann::json{{"kind", "kronecker"}};
                if (k.alpha == std::numbers::sqrt2)
                    j["alpha"] = "sqrt2";
                else if (k.alpha == std::numbers::pi)
                    j["alpha"] = "pi";
                else if (k.alpha == std::numbers::phi)
                    j["alpha"] = "phi";
                else
                    j["alpha"] = k.alpha;
            } else if constexpr (std::is_same_v<T, HybridPiSpec>) {
                j = nlohmann::json{{"kind", "hybrid_pi"}};
            } else if constexpr (std::is_same_v<T, VanDerCorputSpec>) {
                j = nlohmann::json{{"kind", "van_der_corput"}, {"base", k.base}};
            } else {
                j = nlohmann::json{{"kind", "prng"}, {"seed", k.seed}};
            }
        },
        spec.kind);
}

void from_json(const nlohmann::json& j, SequenceSpec& spec) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "kronecker") {
        const auto& a = j.at("alpha");
        double alpha = a.is_string() ? named_alpha(a.get<std::string>()) : a.get<double>();
        spec = SequenceSpec::kronecker(alpha);
    } else if (kind == "hybrid_pi") {
        spec = SequenceSpec::hybrid_pi();
    } else if (kind == "van_der_corput" || kind == "vdc") {
        spec = SequenceSpec::van_der_corput(j.at("base").get<std::uint32_t>());
    } else if (kind == "prng") {
        spec = SequenceSpec::prng(j.at("seed").get<std::uint64_t>());
    } else {
        throw std::invalid_argument("SequenceSpec: unknown kind '" + kind + "'");
    }
}

Point01 kronecker(double alpha, std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("kronecker: n starts at 1; the leading 0 term is excluded");
    if (n > (std::uint64_t{1} << 53))
        throw std::invalid_argument("kronecker: n exceeds 2^53, the index would lose precision");
    if (!passes_irrationality_heuristic(alpha))
        throw std::invalid_argument("kronecker: alpha fails the irrationality screen");
    const double nd = static_cast<double>(n);
    const double hi = nd * alpha;
    const double lo = std::fma(nd, alpha, -hi); // exact residual of the product
    const double frac = hi - std::floor(hi);    // exact: the fraction bits sit in hi's mantissa
    TwoDouble s = two_sum(frac, lo);
    if (s.hi + s.lo >= 1.0)
        s = two_sum(s.hi - 1.0, s.lo);
    else if (s.hi + s.lo < 0.0)
        s = two_sum(s.hi + 1.0, s.lo);
    return checked_point(s.hi + s.lo, "kronecker");
}

Point01 hybrid_pi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("hybrid_pi: n starts at 1");
    if (n == 1) return Point01(0.5); // {(1 + 1/2) * pi^0} = {3/2}
    return kronecker(std::numbers::pi, n);
}

Point01 van_der_corput(std::uint64_t n, std::uint32_t base) {
    if (base < 2) throw std::invalid_argument("van_der_corput: base must be >= 2");
    if (n == 0) throw std::invalid_argument("van_der_corput: n starts at 1");
    const double inv_base = 1.0 / static_cast<double>(base);
    double weight = inv_base;
    double value = 0.0;
    while (n > 0) {
        value += static_cast<double>(n % base) * weight;
        n /= base;
        weight *= inv_base;
    }
    return checked_point(value, "van_der_corput");
}

std::vector<Point01> prng_stream(std::uint64_t seed, std::uint64_t count) {
    if (count == 0) throw std::invalid_argument("prng_stream: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Point01> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(Point01(uniform_open01(rng)));
    return out;
}

SequenceStream::SequenceStream(const SequenceSpec& spec) : spec_(spec) {
    std::visit(
        [this](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, KroneckerSpec>) {
                if (!passes_irrationality_heuristic(k.alpha))
                    throw std::invalid_argument(
                        "SequenceStream: alpha fails the irrationality screen");
                step_ = k.alpha - std::floor(k.alpha); // exact at these magnitudes
            } else if constexpr (std::is_same_v<T, HybridPiSpec>) {
                step_ = std::numbers::pi - 3.0;
            } else if constexpr (std::is_same_v<T, VanDerCorputSpec>) {
                if (k.base < 2)
                    throw std::invalid_argument("SequenceStream: van_der_corput base must be >= 2");
                base_ = k.base;
            } else {
                rng_.seed(k.seed);
            }
        },
        spec.kind);
}

double SequenceStream::next_mod_one() {
    if (n_ == 1) {
        acc_hi_ = step_;
        acc_lo_ = 0.0;
    } else {
        TwoDouble s = two_sum(acc_hi_, step_);
        TwoDouble r = two_sum(s.hi, acc_lo_ + s.lo);
        acc_hi_ = r.hi;
        acc_lo_ = r.lo;
    }
    if (acc_hi_ + acc_lo_ >= 1.0) {
        // hi in [1,2), so hi - 1 is exact
        TwoDouble r = two_sum(acc_hi_ - 1.0, acc_lo_);
        acc_hi_ = r.hi;
        acc_lo_ = r.lo;
    }
    return acc_hi_ + acc_lo_;
}

Point01 SequenceStream::next() {
    ++n_;
    return std::visit(
        [this](const auto& k) -> Point01 {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, KroneckerSpec>) {
                return checked_point(next_mod_one(), "kronecker stream");
            } else if constexpr (std::is_same_v<T, HybridPiSpec>) {
                // advance the {n*pi} accumulator even for the overridden n = 1
                // term, so the tail stays bit-identical to a kronecker(pi) stream
                double v = next_mod_one();
                if (n_ == 1) return Point01(0.5);
                return checked_point(v, "hybrid_pi stream");
            } else if constexpr (std::is_same_v<T, VanDerCorputSpec>) {
                return van_der_corput(n_, base_);
            } else {
                (void)k;
                return Point01(uniform_open01(rng_));
            }
        },
        spec_.kind);
}

std::vector<Point01> generate(const SequenceSpec& spec, std::uint64_t count) {
    if (count == 0) throw std::invalid_argument("generate: count must be >= 1");
    SequenceStream stream(spec);
    std::vector<Point01> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(stream.next());
    return out;
}

} // namespace udint
