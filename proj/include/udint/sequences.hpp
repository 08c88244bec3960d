#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "udint/point.hpp"

namespace udint {

/// Resolve a named constant ("sqrt2" | "pi" | "phi") at full machine precision.
double named_alpha(const std::string& name);

// Continued-fraction screen. A machine real is always rational, so the best
// we can do is reject values that coincide with some p/q, q <= 1e6, to within
// a few ulps. sqrt2/pi/phi pass; 0.5 or 355/113 do not.
bool passes_irrationality_heuristic(double alpha);

struct KroneckerSpec {
    double alpha = 0.0;
    bool operator==(const KroneckerSpec&) const = default;
};

struct HybridPiSpec {
    bool operator==(const HybridPiSpec&) const = default;
};

struct VanDerCorputSpec {
    std::uint32_t base = 2;
    bool operator==(const VanDerCorputSpec&) const = default;
};

struct PrngSpec {
    std::uint64_t seed = 0;
    bool operator==(const PrngSpec&) const = default;
};

// Reproducible description of an infinite point sequence in (0,1).
// Identical specs produce bit-identical streams.
struct SequenceSpec {
    std::variant<KroneckerSpec, HybridPiSpec, VanDerCorputSpec, PrngSpec> kind;

    static SequenceSpec kronecker(double alpha);
    static SequenceSpec kronecker_named(const std::string& constant);
    static SequenceSpec hybrid_pi();
    static SequenceSpec van_der_corput(std::uint32_t base);
    static SequenceSpec prng(std::uint64_t seed);

    std::string kind_name() const;

    bool operator==(const SequenceSpec&) const = default;
};

// JSON form: {"kind":"kronecker","alpha":"sqrt2"|<number>},
// {"kind":"hybrid_pi"}, {"kind":"van_der_corput","base":2},
// {"kind":"prng","seed":42}. Named alpha constants are expanded at full
// machine precision on load.
void to_json(nlohmann::json& j, const SequenceSpec& spec);
void from_json(const nlohmann::json& j, SequenceSpec& spec);

// ---------------------------------------------------------------------------
// direct (random-access) generators, 1-indexed
// ---------------------------------------------------------------------------

// {n*alpha}. The product n*alpha is formed exactly as a hi/lo pair via fma,
// so the result is the correctly rounded fractional part of the machine
// product for any n up to 2^53.
Point01 kronecker(double alpha, std::uint64_t n);

// n = 1 -> {3/2} = 1/2; n >= 2 -> {n*pi}. Uniformly distributed but not of
// the form {n*alpha} for any single alpha.
Point01 hybrid_pi(std::uint64_t n);

/// Radical inverse of n in the given base (base >= 2).
Point01 van_der_corput(std::uint64_t n, std::uint32_t base);

// `count` values from mt19937_64(seed) mapped to (0,1) as (x >> 11) * 2^-53;
// exact zeros are rejected and redrawn (1.0 is unreachable under this map).
std::vector<Point01> prng_stream(std::uint64_t seed, std::uint64_t count);

// Streaming generator. Kronecker-type streams advance a compensated
// double-double accumulator, so drift against the direct evaluation stays far
// below 1e-9 through n = 1e7. Streams carry private state: one consumer each.
class SequenceStream {
  public:
    explicit SequenceStream(const SequenceSpec& spec);

    Point01 next();
    std::uint64_t emitted() const { return n_; }

  private:
    SequenceSpec spec_;
    std::uint64_t n_ = 0;
    double step_ = 0.0; // {alpha} for kronecker-type kinds
    double acc_hi_ = 0.0;
    double acc_lo_ = 0.0;
    std::uint32_t base_ = 2;
    std::mt19937_64 rng_;

    double next_mod_one();
};

std::vector<Point01> generate(const SequenceSpec& spec, std::uint64_t count);

} // namespace udint
