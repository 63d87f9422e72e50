#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "gnt/threshold.hpp"

using namespace gnt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("binomials are exact integers up to n = 64") {
    REQUIRE(binomial_exact(10, 2) == 45);
    REQUIRE(binomial_exact(9, 5) == 126);
    REQUIRE(binomial_exact(64, 32) == 1832624140942590534ULL);
    REQUIRE(binomial(100, 3) == Catch::Approx(161700.0).epsilon(1e-10));
}

TEST_CASE("level reduction") {
    // fixed point: eps = eps0 at every level
    const auto fixed = level_reduce(1e-3, 1e-3, 2, 6);
    for (double v : fixed.per_level) REQUIRE(v == 1e-3);

    // eps = eps0/2, s = 2, k = 3: eps0/256 exactly in log2 arithmetic
    const double eps0 = 0.8;
    const auto halved = level_reduce(eps0 / 2.0, eps0, 2, 3);
    REQUIRE(halved.per_level[3] == eps0 / 256.0);
    REQUIRE(halved.per_level[0] == eps0 / 2.0);

    // zero noise: zero at every level
    const auto silent = level_reduce(0.0, 1e-3, 2, 4);
    for (double v : silent.per_level) REQUIRE(v == 0.0);

    // strictly decreasing below threshold
    const auto below = level_reduce(5e-4, 1e-3, 3, 5);
    for (std::size_t k = 1; k < below.per_level.size(); ++k)
        REQUIRE(below.per_level[k] < below.per_level[k - 1]);

    REQUIRE_THROWS_AS(level_reduce(-1e-3, 1e-3, 2, 3), std::domain_error);
    REQUIRE_THROWS_AS(level_reduce(1e-3, 0.0, 2, 3), std::domain_error);
    REQUIRE_THROWS_AS(level_reduce(1e-3, 1e-3, 1, 3), std::domain_error);
}

TEST_CASE("log-space levels agree with direct exponentiation") {
    const double eps = 3e-4, eps0 = 1.1e-3;
    const auto trace = level_reduce(eps, eps0, 2, 6);
    for (int k = 0; k <= 6; ++k) {
        const double direct = eps0 * std::pow(eps / eps0, std::pow(2.0, k));
        if (direct > 0.0)
            REQUIRE_THAT(trace.per_level[static_cast<std::size_t>(k)], WithinRel(direct, 1e-12));
    }
}

TEST_CASE("overhead factor") {
    // L/delta = eps0/eps, c = 1 -> 1
    REQUIRE_THAT(overhead_factor(100.0, 0.1, 1e-4, 1e-1, 1.0), WithinRel(1.0, 1e-12));
    // log10(1e9)/log10(10) = 9, cubed
    REQUIRE_THAT(overhead_factor(1e6, 1e-3, 1e-4, 1e-3, 3.0), WithinRel(729.0, 1e-10));
    // vanishing numerator
    REQUIRE(overhead_factor(1.0 + 1e-12, 0.9999999, 1e-4, 1e-3, 2.0) < 1e-10);
    REQUIRE_THROWS_AS(overhead_factor(10.0, 0.1, 1e-3, 1e-3, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(overhead_factor(10.0, 0.1, 2e-3, 1e-3, 1.0), std::domain_error);
}

TEST_CASE("diagram bound values") {
    const auto b = diagram_bound(0.1, 1);
    REQUIRE_THAT(b.partial_sum, WithinAbs(0.24, 1e-14));
    REQUIRE_THAT(b.closed_bound, WithinRel(0.5436563656918091, 1e-13));

    const auto zero = diagram_bound(0.0, 3);
    REQUIRE(zero.partial_sum == 0.0);
    REQUIRE(zero.closed_bound == 0.0);

    REQUIRE_THROWS_AS(diagram_bound(0.51, 2), std::domain_error);
    REQUIRE_THROWS_AS(diagram_bound(0.1, 0), std::domain_error);
}

TEST_CASE("partial diagram sums never exceed the closed bound") {
    for (double E = 0.01; E <= 0.5 + 1e-12; E += 0.01) {
        for (int r = 1; r <= 10; ++r) {
            const auto b = diagram_bound(E, r);
            REQUIRE(b.partial_sum <= b.closed_bound);
        }
    }
}

TEST_CASE("single-marked-location refinement: E + 4E^2 <= 3E for E <= 1/2") {
    for (double E = 0.01; E <= 0.5 + 1e-12; E += 0.01) {
        REQUIRE(E + 4.0 * E * E <= 3.0 * E + 1e-15);
    }
    REQUIRE_THAT(0.1 + 4.0 * 0.01, WithinAbs(0.14, 1e-15));
}

TEST_CASE("s-fault bound") {
    REQUIRE_THAT(s_fault_bound(10, 2, 0.01), WithinRel(0.004874791804537314, 1e-12));
    REQUIRE_THAT(s_fault_bound(7, 7, 0.3), WithinRel(std::pow(0.3, 7), 1e-13));  // zeta = 1
    REQUIRE(s_fault_bound(10, 2, 0.0) == 0.0);
    REQUIRE_THROWS_AS(s_fault_bound(3, 4, 0.1), std::domain_error);
}

TEST_CASE("s-fault bound dominates the exact truncated tail") {
    // sum_{l=s}^{A} C(l-1, s-1) C(A, l) eps^l <= e^{(A-s)eps} C(A,s) eps^s
    for (int A = 2; A <= 20; ++A) {
        for (int s = 1; s <= A; ++s) {
            for (double eps : {0.01, 0.05, 0.1}) {
                double exact = 0.0;
                for (int l = s; l <= A; ++l)
                    exact += binomial(l - 1, s - 1) * binomial(A, l) * std::pow(eps, l);
                REQUIRE(exact <= s_fault_bound(A, s, eps) * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("inclusion-exclusion coefficient identity") {
    REQUIRE(inclusion_exclusion_coefficient(3, 2) == 1);
    REQUIRE(inclusion_exclusion_coefficient(1, 2) == 0);
    REQUIRE(inclusion_exclusion_coefficient(5, 5) == 1);
    for (int f = 0; f <= 12; ++f)
        for (int s = 1; s <= 12; ++s)
            REQUIRE(inclusion_exclusion_coefficient(f, s) == (f >= s ? 1 : 0));
}

TEST_CASE("inclusion-exclusion coefficient against subset enumeration") {
    // For a fault pattern with f faulty locations, the expansion assigns
    // sum over subsets T of the faulty set with |T| >= s of
    // (-1)^{|T|-s} C(|T|-1, s-1); enumerate all 2^f subsets of up to 12 labels.
    for (int f = 0; f <= 12; ++f) {
        for (int s = 1; s <= f + 2; ++s) {
            long long counted = 0;
            for (unsigned mask = 0; mask < (1u << f); ++mask) {
                const int size = __builtin_popcount(mask);
                if (size < s) continue;
                const long long weight = static_cast<long long>(binomial_exact(size - 1, s - 1));
                counted += ((size - s) % 2 == 0) ? weight : -weight;
            }
            REQUIRE(counted == inclusion_exclusion_coefficient(f, s));
        }
    }
}

TEST_CASE("combinatoric threshold estimate") {
    REQUIRE_THAT(threshold_from_counts(100, 2, 1.0), WithinRel(1.0 / 4950.0, 1e-13));
    REQUIRE(threshold_from_counts(5, 5, 1.0) == 1.0);
    REQUIRE_THAT(threshold_from_counts(100, 2, 1.1), WithinRel(1.8365472910927456e-4, 1e-12));
    REQUIRE_THROWS_AS(threshold_from_counts(10, 1, 1.0), std::domain_error);
    REQUIRE_THAT(tight_zeta(10, 2, 0.01), WithinRel(std::exp(0.08), 1e-14));
}

TEST_CASE("malignant-pair threshold") {
    REQUIRE(malignant_threshold(250.0, 0.0) == 1.0 / 250.0);
    REQUIRE_THAT(malignant_threshold(1e4, 1e6), WithinRel(9.901951359278482e-5, 1e-12));
    REQUIRE_THROWS_AS(malignant_threshold(0.0, 10.0), std::domain_error);

    const double eps0 = malignant_threshold(137.0, 4200.0);
    const double residual = 137.0 * eps0 * eps0 + 4200.0 * eps0 * eps0 * eps0 - eps0;
    REQUIRE(std::abs(residual) < 1e-12 * eps0);
}

TEST_CASE("postselection threshold") {
    const auto p = postselect_threshold(100.0, 10.0, 0.0);
    REQUIRE_THAT(p.epsilon0, WithinRel(1.0 / 110.0, 1e-13));
    // defining property: the conditional bound at eps0 equals eps0
    REQUIRE_THAT(p.conditional(p.epsilon0), WithinRel(p.epsilon0, 1e-12));

    // C = 0, D = 0 reduces to the malignant-pair result 1/B exactly
    REQUIRE(postselect_threshold(40.0, 0.0, 0.0).epsilon0 == malignant_threshold(40.0, 0.0));

    REQUIRE_THROWS_AS(p.conditional(0.2), std::domain_error);  // eps >= 1/C
    REQUIRE_THROWS_AS(postselect_threshold(0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("postselection closed form agrees with bracketed bisection") {
    // independent root finder on (B eps^2 + D eps^3)/(1 - C eps) = eps
    auto bisect = [](double B, double C, double D) {
        auto g = [&](double e) { return (B * e * e + D * e * e * e) / (1.0 - C * e) - e; };
        double lo = 0.0;
        double hi = 1.0 / (B + C);
        if (C > 0.0) hi = std::min(hi, (1.0 - 1e-12) / C);
        // widen hi until the sign flips (g(0+) < 0)
        while (g(hi) < 0.0) hi *= 1.0 + 1e-9;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    std::mt19937 rng(987654321u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double B = std::pow(10.0, 1.0 + 4.0 * u(rng));
        const double C = u(rng) < 0.2 ? 0.0 : std::pow(10.0, 4.0 * u(rng));
        const double D = u(rng) < 0.2 ? 0.0 : std::pow(10.0, 6.0 * u(rng));
        const auto closed = postselect_threshold(B, C, D);
        const double root = bisect(B, C, D);
        REQUIRE_THAT(closed.epsilon0, WithinRel(root, 1e-10));
        REQUIRE_THAT(closed.conditional(closed.epsilon0), WithinRel(closed.epsilon0, 1e-12));
    }
}

TEST_CASE("postselection failure scenarios") {
    // explicit scenario sum: sum_{m=1}^{n} P_reject^{m-1} P_joint + P_reject^n
    auto scenario_sum = [](double pj, double pa, int n) {
        const double pr = 1.0 - pa;
        double acc = std::pow(pr, n);
        for (int m = 1; m <= n; ++m) acc += std::pow(pr, m - 1) * pj;
        return acc;
    };

    REQUIRE_THAT(postselect_fail(0.01, 0.9, 2), WithinAbs(0.021, 1e-15));
    for (int n : {1, 2, 3, 7, 20})
        REQUIRE_THAT(postselect_fail(0.01, 0.9, n), WithinRel(scenario_sum(0.01, 0.9, n), 1e-13));

    // n -> infinity limit recovers the conditional estimate P_joint/P_accept
    REQUIRE_THAT(postselect_fail(0.01, 0.9, 200), WithinRel(0.01 / 0.9, 1e-12));

    // no joint failures: only the all-rejected scenario remains
    REQUIRE_THAT(postselect_fail(0.0, 0.7, 5), WithinRel(std::pow(0.3, 5), 1e-13));

    REQUIRE_THROWS_AS(postselect_fail(0.1, 0.0, 2), std::domain_error);
    REQUIRE_THROWS_AS(postselect_fail(0.5, 0.4, 2), std::domain_error);
    REQUIRE_THROWS_AS(postselect_fail(0.1, 0.9, 0), std::domain_error);
}

TEST_CASE("gadget count validation") {
    GadgetCounts ok{100, 2, 50.0, 10.0, 1000.0, 1.0};
    REQUIRE_NOTHROW(ok.validate());
    GadgetCounts bad_order{1, 2, 0.0, 0.0, 0.0, 1.0};
    REQUIRE_THROWS_AS(bad_order.validate(), std::invalid_argument);
    GadgetCounts bad_zeta{10, 2, 0.0, 0.0, 0.0, 0.5};
    REQUIRE_THROWS_AS(bad_zeta.validate(), std::invalid_argument);
}
