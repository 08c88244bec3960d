#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "udint/integrand.hpp"
#include "udint/point.hpp"
#include "udint/sequences.hpp"

namespace udint {

// Partial means of a running average, sampled at an increasing checkpoint
// schedule, plus the per-checkpoint tail term f(x_N)/N.
struct Trajectory {
    std::vector<std::uint64_t> checkpoints;
    std::vector<double> means;
    std::vector<double> tail_terms;
};

struct ConditionTolerances {
    double tail = 1e-2;
    double oscillation = 1e-2;
    double integral_gap = 1e-2;
};

// Finite-prefix diagnostics for the three convergence conditions: vanishing
// tail term, settled running mean, running mean equal to the integral. All
// three are surrogates evaluated on the final decade of the run, not
// asymptotic statements; reports carry note() verbatim.
struct ConditionReport {
    double cond1_sup_tail = 0.0;     // max |f(x_n)/n| over n in [n_max/10, n_max]
    double cond2_oscillation = 0.0;  // max mean spread over checkpoints in that decade
    std::optional<double> cond3_gap; // |S_{n_max} - integral|; absent without an exact integral

    bool verdict1 = false;
    bool verdict2 = false;
    std::optional<bool> verdict3;

    ConditionTolerances tolerances;

    static const char* note();
};

// Geometric schedule 100, 316, 1000, 3162, ... ending exactly at n_max
// (just {n_max} when n_max <= 100); half-decade spacing keeps log-log
// convergence slopes readable.
std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t n_max);

// Running mean of f along the sequence. Signed integrands are accumulated
// directly; splitting into positive/negative parts and summing the two
// trajectories must agree to 1e-12. Empty checkpoint list means the
// geometric schedule; an explicit list must be strictly increasing and
// bounded by n_max.
Trajectory cesaro_mean(const Integrand& f, const SequenceSpec& spec, std::uint64_t n_max,
                       std::vector<std::uint64_t> checkpoints = {});

// Running mean of the truncated summands f(x_k) * 1{f(x_k) < k*eps}.
// Stated for nonnegative f only; signed integrands are rejected, the sign
// split is the caller's explicit step.
Trajectory truncated_mean(const Integrand& f, const SequenceSpec& spec, std::uint64_t n_max,
                          double eps, std::vector<std::uint64_t> checkpoints = {});

// [ (1/N) sum_k ( f(x_k) 1{f(x_k) < k eps} - integral of f over {f < k eps} ) ]^2.
// Requires partial_integral metadata on f.
double truncated_deviation_sq(const Integrand& f, std::span<const Point01> points, double eps);

// (sum a_j x_j) / (sum a_j) for nonnegative weights with positive total.
double toeplitz_average(std::span<const double> weights, std::span<const double> values);

ConditionReport check_conditions(const Integrand& f, const SequenceSpec& spec,
                                 std::uint64_t n_max, ConditionTolerances tol = {});

// Independent prng replicas of truncated_deviation_sq, seeds base_seed,
// base_seed+1, ... Replicas are evaluated concurrently; results are ordered
// by seed so the output never depends on scheduling.
struct ReplicaDeviation {
    std::vector<double> per_replica;
    double mean = 0.0;
    double std_error = 0.0;
};

ReplicaDeviation replica_deviation_sq(const Integrand& f, double eps, std::uint64_t n,
                                      std::uint64_t replicas, std::uint64_t base_seed);

} // namespace udint
