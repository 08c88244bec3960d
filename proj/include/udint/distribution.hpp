#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "udint/estimators.hpp"
#include "udint/point.hpp"
#include "udint/sequences.hpp"

namespace udint {

struct Jump {
    double location = 0.0;
    double mass = 0.0;
};

// A distribution function represented as a continuous part plus finitely
// many jumps (c_k, d_k). The composite CDF is
//   F(y) = continuous_cdf(y) + sum of masses at locations <= y,
// nondecreasing and right-continuous with limits 0 and 1.
struct DistributionFunction {
    std::string name;
    std::vector<Jump> jumps; // strictly increasing locations, masses > 0
    std::function<double(double)> continuous_cdf;
    std::optional<double> mean;
    // optional analytic sup-inverse for the continuous region
    std::function<double(double)> continuous_inverse;

    double cdf(double y) const;
    double cdf_left(double y) const; // left limit: jumps strictly below y
};

// Validates jump ordering, positive masses and total mass <= 1.
DistributionFunction make_distribution(std::string name, std::vector<Jump> jumps,
                                       std::function<double(double)> continuous_cdf,
                                       std::optional<double> mean,
                                       std::function<double(double)> continuous_inverse = {});

namespace dists {

DistributionFunction bernoulli(double p);
DistributionFunction point_mass(double location);
DistributionFunction uniform01();
DistributionFunction exponential(double rate);
// weight * point mass at `atom` + (1-weight) * Uniform(0,1)
DistributionFunction mixed_atom_uniform(double atom, double weight);

} // namespace dists

// JSON specs: {"dist":"bernoulli","p":0.3}, {"dist":"point_mass","location":c},
// {"dist":"uniform"}, {"dist":"exponential","rate":1.0},
// {"dist":"mixed_atom_uniform","atom":0.0,"weight":0.5}.
DistributionFunction distribution_from_json(const nlohmann::json& j);

// Jump-aware generalized inverse: u falling in the probability interval
// [F(c_k) - d_k, F(c_k)) of a jump maps to c_k; otherwise the result is
// sup{y : F(y) = u}, analytic when the distribution carries an inverse and
// bisected to 1e-12 in y otherwise. A u that matches neither branch means
// the distribution is malformed (an undeclared jump) and raises an error.
// The jump intervals are taken half-open so the map is total and
// single-valued; flat stretches of F resolve to their right endpoint.
double quantile(const DistributionFunction& F, double u);
double quantile(const DistributionFunction& F, const Point01& u);

// Running mean of quantile(F, u_k) along the sequence; the final mean should
// approach F.mean, which must be present. Deterministic sequence kinds are
// accepted but fall outside the i.i.d. sampling model the simulation mimics.
Trajectory slln_trajectory(const DistributionFunction& F, const SequenceSpec& spec,
                           std::uint64_t n_max, std::vector<std::uint64_t> checkpoints = {});

// Kolmogorov-Smirnov distance between the empirical CDF of n pushforward
// samples quantile(F, u_k) and F itself.
double pushforward_ks(const DistributionFunction& F, const SequenceSpec& spec, std::uint64_t n);
double pushforward_ks(const DistributionFunction& F, std::span<const Point01> u);

} // namespace udint
