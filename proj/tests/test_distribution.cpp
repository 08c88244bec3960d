#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "udint/distribution.hpp"
#include "udint/sequences.hpp"

using namespace udint;

namespace {

double clamp01(double y) { return y < 0.0 ? 0.0 : (y > 1.0 ? 1.0 : y); }

// mean of F as the integral of its quantile over (0,1): midpoint panels with
// the unbounded upper tail handled by the analytic inverse
double mean_by_quantile_quadrature(const DistributionFunction& F, bool unbounded_tail) {
    const std::size_t panels = 1000000;
    const double upper = unbounded_tail ? 1.0 - 1e-4 : 1.0;
    const double width = upper / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        double u = (static_cast<double>(i) + 0.5) * width;
        sum += quantile(F, u);
    }
    double total = sum * width;
    if (unbounded_tail) {
        // exponential tail: integral of -ln(1-u)/rate over (1-delta, 1)
        double delta = 1.0 - upper;
        total += delta * (1.0 - std::log(delta));
    }
    return total;
}

} // namespace

TEST_CASE("quantile on a two-jump distribution") {
    auto F = dists::bernoulli(0.3);
    CHECK(quantile(F, 0.5) == 0.0);
    CHECK(quantile(F, 0.85) == 1.0);
    CHECK(quantile(F, 0.69999) == 0.0);
    CHECK(quantile(F, 0.7) == 1.0); // left endpoint of the second jump interval
    CHECK_THROWS_AS(quantile(F, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(quantile(F, 1.0), std::invalid_argument);
}

TEST_CASE("quantile of continuous catalog distributions") {
    auto E = dists::exponential(1.0);
    CHECK(quantile(E, 1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    auto U = dists::uniform01();
    for (double u : {0.1, 0.25, 0.5, 0.9}) CHECK(quantile(U, u) == u);
    auto P = dists::point_mass(-3.25);
    for (double u : {0.001, 0.5, 0.999}) CHECK(quantile(P, u) == -3.25);
    auto M = dists::mixed_atom_uniform(0.0, 0.5);
    CHECK(quantile(M, 0.3) == 0.0);
    CHECK(quantile(M, 0.75) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bisection fallback matches the analytic inverse") {
    for (auto F : {dists::exponential(1.0), dists::exponential(2.5),
                   dists::mixed_atom_uniform(0.0, 0.5), dists::uniform01()}) {
        DistributionFunction blind = F;
        blind.continuous_inverse = nullptr;
        for (int i = 1; i < 100; ++i) {
            double u = static_cast<double>(i) / 100.0;
            REQUIRE(std::abs(quantile(blind, u) - quantile(F, u)) < 1e-10);
        }
    }
}

TEST_CASE("an undeclared jump is detected as a malformed distribution") {
    // the evaluator hides a step of height 0.3 at y = 0
    auto F = make_distribution(
        "lying", {}, [](double y) { return y < 0.0 ? 0.0 : 0.3 + 0.7 * clamp01(y); },
        std::nullopt);
    CHECK_THROWS_AS(quantile(F, 0.15), std::runtime_error);
    CHECK(quantile(F, 0.65) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("jump probability intervals are disjoint with the declared lengths") {
    auto F = make_distribution("three_atoms", {{-1.0, 0.2}, {0.5, 0.3}, {2.0, 0.1}},
                               [](double y) { return 0.4 * clamp01(y); }, std::nullopt);
    std::vector<std::pair<double, double>> intervals;
    for (const Jump& j : F.jumps) {
        double hi = F.cdf(j.location);
        intervals.emplace_back(hi - j.mass, hi);
        CHECK(hi - j.mass >= -1e-15);
        CHECK(hi <= 1.0 + 1e-15);
    }
    for (std::size_t a = 0; a < intervals.size(); ++a) {
        CHECK(intervals[a].second - intervals[a].first ==
              doctest::Approx(F.jumps[a].mass).epsilon(1e-12));
        for (std::size_t b = a + 1; b < intervals.size(); ++b) {
            bool disjoint = intervals[a].second <= intervals[b].first ||
                            intervals[b].second <= intervals[a].first;
            CHECK(disjoint);
        }
    }
    // every u in a jump interval maps to that atom
    CHECK(quantile(F, 0.05) == -1.0);
    CHECK(quantile(F, 0.45) == 0.5);
    CHECK(quantile(F, 0.95) == 2.0);
}

TEST_CASE("quantile is nondecreasing on a fine grid") {
    for (auto F : {dists::bernoulli(0.3), dists::exponential(1.0),
                   dists::mixed_atom_uniform(0.0, 0.5), dists::point_mass(1.5)}) {
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 10000; ++i) {
            double q = quantile(F, static_cast<double>(i) / 10001.0);
            REQUIRE(q >= prev);
            prev = q;
        }
    }
}

TEST_CASE("continuous catalog round trip F(quantile(u)) = u") {
    for (auto F : {dists::uniform01(), dists::exponential(1.0), dists::exponential(0.25)}) {
        for (int i = 1; i < 1000; ++i) {
            double u = static_cast<double>(i) / 1000.0;
            REQUIRE(std::abs(F.cdf(quantile(F, u)) - u) <= 1e-10);
        }
    }
}

TEST_CASE("quantile quadrature reproduces the declared means") {
    CHECK(std::abs(mean_by_quantile_quadrature(dists::uniform01(), false) - 0.5) < 1e-4);
    CHECK(std::abs(mean_by_quantile_quadrature(dists::bernoulli(0.3), false) - 0.3) < 1e-4);
    CHECK(std::abs(mean_by_quantile_quadrature(dists::mixed_atom_uniform(0.0, 0.5), false) -
                   0.25) < 1e-4);
    CHECK(std::abs(mean_by_quantile_quadrature(dists::exponential(1.0), true) - 1.0) < 1e-4);
}

TEST_CASE("composite CDF is a distribution function on a probe grid") {
    for (auto F : {dists::bernoulli(0.3), dists::uniform01(), dists::exponential(1.0),
                   dists::mixed_atom_uniform(0.0, 0.5), dists::point_mass(2.0)}) {
        CHECK(F.cdf(-1e9) == doctest::Approx(0.0));
        CHECK(F.cdf(1e9) == doctest::Approx(1.0));
        double prev = 0.0;
        for (int i = -400; i <= 400; ++i) {
            double v = F.cdf(static_cast<double>(i) / 100.0);
            REQUIRE(v >= prev - 1e-15);
            REQUIRE(v <= 1.0 + 1e-15);
            prev = v;
        }
        // right-continuity at the atoms: the jump belongs to cdf, not cdf_left
        for (const Jump& j : F.jumps)
            CHECK(F.cdf(j.location) - F.cdf_left(j.location) ==
                  doctest::Approx(j.mass).epsilon(1e-12));
    }
}

TEST_CASE("distribution construction is validated") {
    CHECK_THROWS_AS(make_distribution("bad", {{0.5, 0.3}, {0.5, 0.3}}, nullptr, std::nullopt),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_distribution("bad", {{0.0, 0.0}}, nullptr, std::nullopt),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_distribution("bad", {{0.0, 0.7}, {1.0, 0.7}}, nullptr, std::nullopt),
                    std::invalid_argument);
    CHECK_THROWS_AS(dists::bernoulli(0.0), std::invalid_argument);
    CHECK_THROWS_AS(dists::exponential(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(dists::mixed_atom_uniform(0.0, 1.5), std::invalid_argument);
}

TEST_CASE("distribution JSON specs") {
    auto B = distribution_from_json({{"dist", "bernoulli"}, {"p", 0.3}});
    CHECK(B.jumps.size() == 2);
    CHECK(*B.mean == doctest::Approx(0.3));
    auto M = distribution_from_json(
        {{"dist", "mixed_atom_uniform"}, {"atom", 0.0}, {"weight", 0.5}});
    CHECK(*M.mean == doctest::Approx(0.25));
    CHECK_THROWS_AS(distribution_from_json({{"dist", "nope"}}), std::invalid_argument);
    CHECK_THROWS_AS(distribution_from_json({{"dist", "bernoulli"}, {"rate", 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("sample means approach the declared mean") {
    auto bern = slln_trajectory(dists::bernoulli(0.3), SequenceSpec::prng(11), 100000);
    CHECK(std::abs(bern.means.back() - 0.3) <= 3.0 * std::sqrt(0.21 / 100000.0));
    auto expo = slln_trajectory(dists::exponential(1.0), SequenceSpec::prng(11), 100000);
    CHECK(std::abs(expo.means.back() - 1.0) <= 0.01);
    auto mixed =
        slln_trajectory(dists::mixed_atom_uniform(0.0, 0.5), SequenceSpec::prng(11), 100000);
    CHECK(std::abs(mixed.means.back() - 0.25) <= 0.01);
}

TEST_CASE("a point mass averages to its location exactly") {
    auto traj = slln_trajectory(dists::point_mass(2.5), SequenceSpec::prng(11), 3162);
    for (double m : traj.means) CHECK(m == 2.5);
}

TEST_CASE("slln demands a declared mean") {
    auto F = dists::uniform01();
    F.mean.reset();
    CHECK_THROWS_AS(slln_trajectory(F, SequenceSpec::prng(11), 100), std::invalid_argument);
}

TEST_CASE("deterministic sequences are accepted by the simulator") {
    auto traj = slln_trajectory(dists::uniform01(), SequenceSpec::van_der_corput(2), 10000);
    CHECK(std::abs(traj.means.back() - 0.5) < 1e-3);
}

TEST_CASE("identity pushforward reduces KS to the midpoint discrepancy") {
    std::vector<Point01> midpoints;
    for (int i = 0; i < 10; ++i) midpoints.push_back(Point01((2.0 * i + 1.0) / 20.0));
    CHECK(pushforward_ks(dists::uniform01(), midpoints) == doctest::Approx(0.05).epsilon(1e-12));
    std::vector<Point01> one{Point01(0.5)};
    CHECK(pushforward_ks(dists::uniform01(), one) == doctest::Approx(0.5));
}

TEST_CASE("pushforward samples match the target distribution") {
    for (auto F : {dists::bernoulli(0.3), dists::point_mass(1.0), dists::uniform01(),
                   dists::exponential(1.0), dists::mixed_atom_uniform(0.0, 0.5)}) {
        double ks = pushforward_ks(F, SequenceSpec::prng(5), 10000);
        REQUIRE(ks < 0.03);
    }
    CHECK(pushforward_ks(dists::point_mass(1.0), SequenceSpec::prng(5), 100) == 0.0);
}
