#include "udint/estimators.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "udint/compensated.hpp"

namespace udint {

namespace {

std::vector<std::uint64_t> resolve_checkpoints(std::uint64_t n_max,
                                               std::vector<std::uint64_t> checkpoints) {
    if (n_max == 0) throw std::invalid_argument("estimator: n_max must be positive");
    if (checkpoints.empty()) return geometric_checkpoints(n_max);
    std::uint64_t prev = 0;
    for (std::uint64_t c : checkpoints) {
        if (c <= prev)
            throw std::invalid_argument(
                "estimator: checkpoints must be positive and strictly increasing");
        if (c > n_max) throw std::invalid_argument("estimator: checkpoint exceeds n_max");
        prev = c;
    }
    return checkpoints;
}

double safe_eval(const Integrand& f, const Point01& p, std::uint64_t n) {
    double v = f(p);
    if (!std::isfinite(v)) throw SingularEvaluationError(n, p.value());
    return v;
}

} // namespace

const char* ConditionReport::note() {
    return "finite-prefix surrogates over the final decade of the run; not asymptotic limits";
}

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t n_max) {
    if (n_max == 0) throw std::invalid_argument("geometric_checkpoints: n_max must be positive");
    std::vector<std::uint64_t> cks;
    for (int k = 4;; ++k) { // 10^(k/2): 100, 316, 1000, ...
        double v = std::pow(10.0, 0.5 * static_cast<double>(k));
        auto n = static_cast<std::uint64_t>(std::llround(v));
        if (n >= n_max) break;
        cks.push_back(n);
    }
    cks.push_back(n_max);
    return cks;
}

Trajectory cesaro_mean(const Integrand& f, const SequenceSpec& spec, std::uint64_t n_max,
                       std::vector<std::uint64_t> checkpoints) {
    auto cks = resolve_checkpoints(n_max, std::move(checkpoints));
    SequenceStream stream(spec);
    CompensatedSum sum;
    Trajectory traj;
    traj.checkpoints = cks;
    traj.means.reserve(cks.size());
    traj.tail_terms.reserve(cks.size());
    std::size_t ci = 0;
    const std::uint64_t last = cks.back();
    for (std::uint64_t n = 1; n <= last; ++n) {
        Point01 p = stream.next();
        double v = safe_eval(f, p, n);
        sum.add(v);
        if (n == cks[ci]) {
            double dn = static_cast<double>(n);
            traj.means.push_back(sum.value() / dn);
            traj.tail_terms.push_back(v / dn);
            ++ci;
        }
    }
    return traj;
}

Trajectory truncated_mean(const Integrand& f, const SequenceSpec& spec, std::uint64_t n_max,
                          double eps, std::vector<std::uint64_t> checkpoints) {
    if (!f.nonneg)
        throw std::invalid_argument(
            "truncated_mean: stated for nonnegative integrands; split signed ones first");
    if (!(eps > 0.0)) throw std::invalid_argument("truncated_mean: eps must be positive");
    auto cks = resolve_checkpoints(n_max, std::move(checkpoints));
    SequenceStream stream(spec);
    CompensatedSum sum;
    Trajectory traj;
    traj.checkpoints = cks;
    traj.means.reserve(cks.size());
    traj.tail_terms.reserve(cks.size());
    std::size_t ci = 0;
    const std::uint64_t last = cks.back();
    for (std::uint64_t n = 1; n <= last; ++n) {
        Point01 p = stream.next();
        double v = safe_eval(f, p, n);
        double level = static_cast<double>(n) * eps;
        sum.add(v < level ? v : 0.0);
        if (n == cks[ci]) {
            double dn = static_cast<double>(n);
            traj.means.push_back(sum.value() / dn);
            traj.tail_terms.push_back(v / dn);
            ++ci;
        }
    }
    return traj;
}

double truncated_deviation_sq(const Integrand& f, std::span<const Point01> points, double eps) {
    if (points.empty()) throw std::invalid_argument("truncated_deviation_sq: empty point set");
    if (!f.nonneg)
        throw std::invalid_argument("truncated_deviation_sq: stated for nonnegative integrands");
    if (!(eps > 0.0)) throw std::invalid_argument("truncated_deviation_sq: eps must be positive");
    if (!f.partial_integral)
        throw std::invalid_argument(
            "truncated_deviation_sq: integrand '" + f.name +
            "' lacks partial_integral metadata; attach an analytic form or oracle");
    CompensatedSum sum;
    std::uint64_t k = 0;
    for (const Point01& p : points) {
        ++k;
        double v = safe_eval(f, p, k);
        double level = static_cast<double>(k) * eps;
        double kept = v < level ? v : 0.0;
        sum.add(kept - partial_integral_below(f, level));
    }
    double mean = sum.value() / static_cast<double>(points.size());
    return mean * mean;
}

double toeplitz_average(std::span<const double> weights, std::span<const double> values) {
    if (weights.empty() || weights.size() != values.size())
        throw std::invalid_argument(
            "toeplitz_average: weight and value lists must be nonempty and of equal length");
    CompensatedSum wsum;
    CompensatedSum acc;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0))
            throw std::invalid_argument("toeplitz_average: weights must be nonnegative");
        wsum.add(weights[i]);
        acc.add(weights[i] * values[i]);
    }
    double b = wsum.value();
    if (!(b > 0.0)) throw std::invalid_argument("toeplitz_average: weights sum to zero");
    return acc.value() / b;
}

ConditionReport check_conditions(const Integrand& f, const SequenceSpec& spec,
                                 std::uint64_t n_max, ConditionTolerances tol) {
    auto cks = geometric_checkpoints(n_max);
    SequenceStream stream(spec);
    CompensatedSum sum;
    const std::uint64_t decade_start = (n_max + 9) / 10;
    double sup_tail = 0.0;
    double dec_min = std::numeric_limits<double>::infinity();
    double dec_max = -std::numeric_limits<double>::infinity();
    double final_mean = 0.0;
    std::size_t ci = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        Point01 p = stream.next();
        double v = safe_eval(f, p, n);
        sum.add(v);
        if (n >= decade_start)
            sup_tail = std::max(sup_tail, std::abs(v) / static_cast<double>(n));
        if (ci < cks.size() && n == cks[ci]) {
            double mean = sum.value() / static_cast<double>(n);
            if (n >= decade_start) {
                dec_min = std::min(dec_min, mean);
                dec_max = std::max(dec_max, mean);
            }
            if (n == n_max) final_mean = mean;
            ++ci;
        }
    }
    ConditionReport report;
    report.cond1_sup_tail = sup_tail;
    report.cond2_oscillation = dec_max >= dec_min ? dec_max - dec_min : 0.0;
    report.verdict1 = report.cond1_sup_tail <= tol.tail;
    report.verdict2 = report.cond2_oscillation <= tol.oscillation;
    if (f.exact_integral) {
        double gap = std::abs(final_mean - *f.exact_integral);
        report.cond3_gap = gap;
        report.verdict3 = gap <= tol.integral_gap;
    }
    report.tolerances = tol;
    return report;
}

ReplicaDeviation replica_deviation_sq(const Integrand& f, double eps, std::uint64_t n,
                                      std::uint64_t replicas, std::uint64_t base_seed) {
    if (replicas == 0) throw std::invalid_argument("replica_deviation_sq: need >= 1 replica");
    // Each replica writes its own slot, so results are ordered by seed no
    // matter how the workers are scheduled.
    std::vector<double> values(replicas, 0.0);
    std::atomic<std::uint64_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::uint64_t r = cursor.fetch_add(1);
            if (r >= replicas) return;
            try {
                auto points = prng_stream(base_seed + r, n);
                values[r] = truncated_deviation_sq(f, points, eps);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    const std::uint64_t workers =
        std::min<std::uint64_t>(replicas, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    ReplicaDeviation out;
    out.per_replica = std::move(values);
    CompensatedSum sum;
    for (double v : out.per_replica) sum.add(v);
    out.mean = sum.value() / static_cast<double>(replicas);
    if (replicas > 1) {
        CompensatedSum sq;
        for (double v : out.per_replica) sq.add((v - out.mean) * (v - out.mean));
        double sd = std::sqrt(sq.value() / static_cast<double>(replicas - 1));
        out.std_error = sd / std::sqrt(static_cast<double>(replicas));
    }
    return out;
}

} // namespace udint
