#include "udint/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "udint/compensated.hpp"

namespace udint {

double DistributionFunction::cdf(double y) const {
    double v = continuous_cdf ? continuous_cdf(y) : 0.0;
    for (const Jump& j : jumps) {
        if (j.location <= y)
            v += j.mass;
        else
            break; // locations sorted
    }
    return v;
}

double DistributionFunction::cdf_left(double y) const {
    double v = continuous_cdf ? continuous_cdf(y) : 0.0;
    for (const Jump& j : jumps) {
        if (j.location < y)
            v += j.mass;
        else
            break;
    }
    return v;
}

DistributionFunction make_distribution(std::string name, std::vector<Jump> jumps,
                                       std::function<double(double)> continuous_cdf,
                                       std::optional<double> mean,
                                       std::function<double(double)> continuous_inverse) {
    double total = 0.0;
    double prev = -std::numeric_limits<double>::infinity();
    for (const Jump& j : jumps) {
        if (!(j.location > prev))
            throw std::invalid_argument("make_distribution: jump locations must be strictly increasing");
        if (!(j.mass > 0.0)) throw std::invalid_argument("make_distribution: jump masses must be positive");
        prev = j.location;
        total += j.mass;
    }
    if (total > 1.0 + 1e-12)
        throw std::invalid_argument("make_distribution: total jump mass exceeds 1");
    DistributionFunction F;
    F.name = std::move(name);
    F.jumps = std::move(jumps);
    F.continuous_cdf = std::move(continuous_cdf);
    F.mean = mean;
    F.continuous_inverse = std::move(continuous_inverse);
    return F;
}

namespace dists {

namespace {
double clamp01(double y) { return y < 0.0 ? 0.0 : (y > 1.0 ? 1.0 : y); }
} // namespace

DistributionFunction bernoulli(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("bernoulli: p must lie strictly inside (0,1)");
    return make_distribution("bernoulli", {{0.0, 1.0 - p}, {1.0, p}},
                             [](double) { return 0.0; }, p);
}

DistributionFunction point_mass(double location) {
    return make_distribution("point_mass", {{location, 1.0}}, [](double) { return 0.0; },
                             location);
}

DistributionFunction uniform01() {
    return make_distribution("uniform", {}, [](double y) { return clamp01(y); }, 0.5,
                             [](double u) { return u; });
}

DistributionFunction exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
    return make_distribution(
        "exponential", {},
        [rate](double y) { return y <= 0.0 ? 0.0 : 1.0 - std::exp(-rate * y); }, 1.0 / rate,
        [rate](double u) { return -std::log1p(-u) / rate; });
}

DistributionFunction mixed_atom_uniform(double atom, double weight) {
    if (!(weight > 0.0 && weight < 1.0))
        throw std::invalid_argument("mixed_atom_uniform: weight must lie strictly inside (0,1)");
    const double w = weight;
    const double mass_below_atom = (1.0 - w) * clamp01(atom);
    return make_distribution(
        "mixed_atom_uniform", {{atom, w}},
        [w](double y) { return (1.0 - w) * clamp01(y); },
        w * atom + (1.0 - w) * 0.5,
        [w, mass_below_atom](double u) {
            // the jump branch never reaches here with u inside the atom's interval
            if (u < mass_below_atom) return u / (1.0 - w);
            return (u - w) / (1.0 - w);
        });
}

} // namespace dists

DistributionFunction distribution_from_json(const nlohmann::json& j) {
    const std::string dist = j.at("dist").get<std::string>();
    auto expect_keys = [&j, &dist](std::initializer_list<const char*> allowed) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() == "dist") continue;
            bool ok = false;
            for (const char* k : allowed)
                if (it.key() == k) ok = true;
            if (!ok)
                throw std::invalid_argument("distribution '" + dist + "': unexpected field '" +
                                            it.key() + "'");
        }
    };
    if (dist == "bernoulli") {
        expect_keys({"p"});
        return dists::bernoulli(j.at("p").get<double>());
    }
    if (dist == "point_mass") {
        expect_keys({"location"});
        return dists::point_mass(j.at("location").get<double>());
    }
    if (dist == "uniform") {
        expect_keys({});
        return dists::uniform01();
    }
    if (dist == "exponential") {
        expect_keys({"rate"});
        return dists::exponential(j.at("rate").get<double>());
    }
    if (dist == "mixed_atom_uniform") {
        expect_keys({"atom", "weight"});
        return dists::mixed_atom_uniform(j.at("atom").get<double>(),
                                         j.at("weight").get<double>());
    }
    throw std::invalid_argument(
        "unknown distribution '" + dist +
        "' (expected bernoulli|point_mass|uniform|exponential|mixed_atom_uniform)");
}

double quantile(const DistributionFunction& F, double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("quantile: u must lie strictly inside (0,1)");
    // jump branch: u inside the half-open probability interval of an atom
    for (const Jump& j : F.jumps) {
        double fc = F.cdf(j.location);
        if (u >= fc - j.mass && u < fc) return j.location;
    }
    if (F.continuous_inverse) return F.continuous_inverse(u);

    // bisect for sup{y : F(y) <= u}; flat stretches resolve to the right end
    double lo = -1.0;
    double hi = 1.0;
    int guard = 0;
    while (F.cdf(lo) > u) {
        lo *= 2.0;
        if (++guard > 1100)
            throw std::runtime_error("quantile: lower bracket not found; distribution malformed");
    }
    guard = 0;
    while (F.cdf(hi) <= u) {
        hi *= 2.0;
        if (++guard > 1100)
            throw std::runtime_error("quantile: upper bracket not found; distribution malformed");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (F.cdf(mid) <= u)
            lo = mid;
        else
            hi = mid;
    }
    if (std::abs(F.cdf(lo) - u) > 1e-6)
        throw std::runtime_error(
            "quantile: no y with F(y) = u outside the declared jumps; distribution malformed "
            "(undeclared jump?)");
    return lo;
}

double quantile(const DistributionFunction& F, const Point01& u) { return quantile(F, u.value()); }

Trajectory slln_trajectory(const DistributionFunction& F, const SequenceSpec& spec,
                           std::uint64_t n_max, std::vector<std::uint64_t> checkpoints) {
    if (!F.mean)
        throw std::invalid_argument("slln_trajectory: distribution '" + F.name +
                                    "' carries no mean; supply the oracle value");
    auto cks = checkpoints.empty() ? geometric_checkpoints(n_max) : std::move(checkpoints);
    {
        std::uint64_t prev = 0;
        for (std::uint64_t c : cks) {
            if (c <= prev || c > n_max)
                throw std::invalid_argument("slln_trajectory: bad checkpoint list");
            prev = c;
        }
    }
    SequenceStream stream(spec);
    CompensatedSum sum;
    Trajectory traj;
    traj.checkpoints = cks;
    std::size_t ci = 0;
    const std::uint64_t last = cks.back();
    for (std::uint64_t n = 1; n <= last; ++n) {
        double xi = quantile(F, stream.next());
        sum.add(xi);
        if (n == cks[ci]) {
            double dn = static_cast<double>(n);
            traj.means.push_back(sum.value() / dn);
            traj.tail_terms.push_back(xi / dn);
            ++ci;
        }
    }
    return traj;
}

double pushforward_ks(const DistributionFunction& F, const SequenceSpec& spec, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("pushforward_ks: need n >= 1");
    SequenceStream stream(spec);
    std::vector<Point01> u;
    u.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) u.push_back(stream.next());
    return pushforward_ks(F, u);
}

double pushforward_ks(const DistributionFunction& F, std::span<const Point01> u) {
    if (u.empty()) throw std::invalid_argument("pushforward_ks: empty sample");
    const std::uint64_t n = u.size();
    std::vector<double> xs;
    xs.reserve(n);
    for (const Point01& p : u) xs.push_back(quantile(F, p));
    std::sort(xs.begin(), xs.end());

    std::vector<double> cands = xs;
    for (const Jump& j : F.jumps) cands.push_back(j.location);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    const double dn = static_cast<double>(n);
    double dist = 0.0;
    for (double c : cands) {
        auto le = static_cast<double>(std::upper_bound(xs.begin(), xs.end(), c) - xs.begin());
        auto lt = static_cast<double>(std::lower_bound(xs.begin(), xs.end(), c) - xs.begin());
        dist = std::max(dist, std::abs(le / dn - F.cdf(c)));
        dist = std::max(dist, std::abs(lt / dn - F.cdf_left(c)));
    }
    return dist;
}

} // namespace udint
