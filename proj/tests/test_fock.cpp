#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "gnt/correlation.hpp"
#include "gnt/dephasing.hpp"
#include "gnt/fock.hpp"
#include "gnt/verify.hpp"
#include "gnt/wick.hpp"

using namespace gnt;
using namespace gnt::fock;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const std::complex<double> kZero(0.0, 0.0);
std::complex<double> c(double re, double im = 0.0) { return {re, im}; }
} // namespace

TEST_CASE("pairing counts") {
    REQUIRE(pairing_count(0) == 1);
    REQUIRE(pairing_count(1) == 1);
    REQUIRE(pairing_count(2) == 3);
    REQUIRE(pairing_count(4) == 105);
    REQUIRE_THROWS_AS(pairing_count(-1), std::domain_error);
    REQUIRE_THROWS_AS(pairing_count(17), std::overflow_error);
}

TEST_CASE("wick moment structure") {
    std::mt19937 rng(13u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_matrix = [&](int n) {
        Eigen::MatrixXcd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = c(u(rng), u(rng));
        return m;
    };

    // two labels: the single contraction
    const auto d2 = random_matrix(2);
    REQUIRE(wick_moment(d2).value == d2(0, 1));

    // four labels: the three pairings
    const auto d4 = random_matrix(4);
    const auto expected =
        d4(0, 1) * d4(2, 3) + d4(0, 2) * d4(1, 3) + d4(0, 3) * d4(1, 2);
    REQUIRE(std::abs(wick_moment(d4).value - expected) < 1e-14);

    // odd strings vanish with a flag
    const auto odd = wick_moment(random_matrix(3));
    REQUIRE(odd.odd);
    REQUIRE(odd.value == kZero);

    // the pairing count shows up for unit contractions
    for (int n : {1, 2, 3, 4}) {
        const Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(2 * n, 2 * n);
        REQUIRE_THAT(wick_moment(ones).value.real(),
                     WithinRel(static_cast<double>(pairing_count(n)), 1e-12));
    }
}

TEST_CASE("vacuum fourth moment of a unit-coupling field is 3") {
    FockWorkspace ws{1, 8, false};
    const FieldOp phi{{c(1.0)}, 0.0};
    const auto m4 = fock_moment(GaussianStateSpec::vacuum(), {phi, phi, phi, phi}, {2.0}, ws);
    REQUIRE_THAT(m4.real(), WithinAbs(3.0, 1e-12));
    REQUIRE_THAT(m4.imag(), WithinAbs(0.0, 1e-12));
}

TEST_CASE("vacuum two-point function is a pure phase") {
    const double w = 2.0;
    for (double t : {0.0, 0.4, 1.3}) {
        const FieldOp phi_t{{c(1.0)}, t};
        const FieldOp phi_0{{c(1.0)}, 0.0};
        const auto d = fock_moment_converged(GaussianStateSpec::vacuum(), {phi_t, phi_0}, {w});
        REQUIRE(std::abs(d - std::polar(1.0, -w * t)) < 1e-12);
    }
}

TEST_CASE("thermal occupation at beta*omega = ln 2 is one") {
    const auto state = GaussianStateSpec::thermal(std::log(2.0), {1.0});
    // Delta(0) = 2 n-bar + 1 = 3 for unit coupling
    const FieldOp phi{{c(1.0), kZero}, 0.0};
    const auto d0 = fock_moment_converged(state, {phi, phi}, {1.0, 1.0});
    REQUIRE_THAT(d0.real(), WithinAbs(3.0, 1e-8));

    // direct occupation from the state amplitudes at a converged cutoff
    FockWorkspace ws{2, 40, false};
    const auto psi = build_gaussian_state(state, ws);
    double n_bath = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i)
        n_bath += static_cast<double>(static_cast<std::size_t>(i) % static_cast<std::size_t>(ws.levels())) *
                  std::norm(psi[i]);
    REQUIRE_THAT(n_bath, WithinAbs(1.0, 1e-9));
}

TEST_CASE("two-mode squeezed state with gamma^2 = 1/2") {
    const double gamma = std::sqrt(0.5);
    const double r = std::atanh(gamma);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2, 2), N = Eigen::MatrixXcd::Zero(2, 2);
    M(0, 0) = M(1, 1) = std::cosh(r);
    N(0, 1) = N(1, 0) = std::sinh(r);
    const auto spec = GaussianStateSpec::bogoliubov(M, N);

    FockWorkspace ws{2, 20, false};
    const auto psi = build_gaussian_state(spec, ws);
    REQUIRE_THAT(psi.norm(), WithinAbs(1.0, 1e-5));

    double occupation = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i)
        occupation += static_cast<double>(static_cast<std::size_t>(i) % static_cast<std::size_t>(ws.levels())) *
                      std::norm(psi[i]);
    REQUIRE_THAT(occupation, WithinAbs(1.0, 1e-5));
}

TEST_CASE("vanishing squeezing recovers the vacuum") {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd N = Eigen::MatrixXcd::Zero(2, 2);
    const auto spec = GaussianStateSpec::bogoliubov(M, N);
    FockWorkspace ws{2, 4, false};
    const auto psi = build_gaussian_state(spec, ws);
    REQUIRE(psi[0] == c(1.0));
    REQUIRE_THAT(psi.norm(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("Bogoliubov constraint and support checks") {
    // commutation-violating matrices are rejected outright
    Eigen::MatrixXcd M = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd N = Eigen::MatrixXcd::Zero(2, 2);
    REQUIRE_THROWS_AS(GaussianStateSpec::bogoliubov(M, N), std::invalid_argument);

    // valid but non-diagonal transforms are an explicit unsupported feature
    const double r = 0.4;
    Eigen::MatrixXcd Ms(2, 2), Ns(2, 2);
    // single-mode squeezing on each mode: M = cosh r * I, N = sinh r * I
    Ms = std::cosh(r) * Eigen::MatrixXcd::Identity(2, 2);
    Ns = std::sinh(r) * Eigen::MatrixXcd::Identity(2, 2);
    const auto spec = GaussianStateSpec::bogoliubov(Ms, Ns);
    FockWorkspace ws{2, 4, false};
    REQUIRE_THROWS_AS(build_gaussian_state(spec, ws), unsupported_error);
}

TEST_CASE("odd moments vanish for every supported state") {
    const std::vector<GaussianStateSpec> states = {
        GaussianStateSpec::vacuum(),
        GaussianStateSpec::thermal(1.0, {1.3}),
    };
    for (const auto& state : states) {
        const int modes = state.kind == GaussianStateSpec::Kind::Vacuum ? 1 : 2;
        std::vector<double> omega(static_cast<std::size_t>(modes), 1.3);
        std::vector<std::complex<double>> g(static_cast<std::size_t>(modes), kZero);
        g[0] = c(0.5, 0.2);
        const FieldOp phi{g, 0.7};
        FockWorkspace ws{modes, 12, false};
        REQUIRE(std::abs(fock_moment(state, {phi}, omega, ws)) < 1e-10);
        REQUIRE(std::abs(fock_moment(state, {phi, phi, phi}, omega, ws)) < 1e-10);
    }
}

TEST_CASE("cutoff convergence is monotone for a thermal moment") {
    const auto state = GaussianStateSpec::thermal(1.0, {1.0});
    const FieldOp phi{{c(0.8), kZero}, 0.0};
    const std::vector<double> omega = {1.0, 1.0};
    auto moment_at = [&](int cutoff) {
        FockWorkspace ws{2, cutoff, false};
        return fock_moment(state, {phi, phi, phi, phi}, omega, ws);
    };
    const auto m6 = moment_at(6), m8 = moment_at(8), m10 = moment_at(10);
    REQUIRE(std::abs(m10 - m8) < std::abs(m8 - m6));
}

TEST_CASE("non-convergent moment raises a convergence error") {
    // coupling far too strong for the capped workspace
    const auto state = GaussianStateSpec::thermal(0.05, {0.4});
    const FieldOp phi{{c(6.0), kZero}, 0.0};
    MomentOptions opts;
    opts.initial_cutoff = 2;
    opts.rel_tol = 1e-14;
    REQUIRE_THROWS_AS(
        fock_moment_converged(state, {phi, phi, phi, phi, phi, phi}, {0.4, 0.4}, opts),
        convergence_error);
}

TEST_CASE("wick sum equals the fock expectation on a four-field thermal string") {
    const auto state = GaussianStateSpec::thermal(1.0, {1.1});
    const std::vector<double> omega = {1.1, 1.1};
    std::vector<FieldOp> fields;
    for (int j = 0; j < 4; ++j)
        fields.push_back({{c(0.4 + 0.05 * j, 0.1 * j), kZero}, 0.3 * j});

    Eigen::MatrixXcd delta = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            delta(i, j) = fock_moment_converged(state, {fields[static_cast<std::size_t>(i)],
                                                        fields[static_cast<std::size_t>(j)]},
                                                omega);
    const auto full = fock_moment_converged(state, fields, omega);
    REQUIRE(std::abs(wick_moment(delta).value - full) <= 1e-8 * std::max(1.0, std::abs(full)));
}

TEST_CASE("dephasing simulation basics") {
    REQUIRE(simulate_dephasing({}, std::nullopt, 3.0) == 0.0);

    // one mode g = 0.1, w = 1, T = pi: D = 0.04, P = e^{-D} sinh D
    const double p = simulate_dephasing({{c(0.1), 1.0}}, std::nullopt, std::numbers::pi);
    REQUIRE_THAT(p, WithinAbs(0.03844182680668211, 1e-6));

    // recoherence at w T = 2 pi
    const double pr = simulate_dephasing({{c(0.1), 1.0}}, std::nullopt, 2.0 * std::numbers::pi);
    REQUIRE(pr < 1e-8);
}

TEST_CASE("two-mode vacuum dephasing matches the additive exponent") {
    const std::vector<BathMode> modes = {{c(0.12), 0.9}, {c(0.07), 1.7}};
    const double T = 2.3;
    double D = 0.0;
    for (const auto& m : modes) {
        const double s = std::sin(0.5 * m.frequency * T);
        D += std::norm(m.coupling) * 4.0 * s * s / (m.frequency * m.frequency);
    }
    const double p = simulate_dephasing(modes, std::nullopt, T);
    REQUIRE_THAT(p, WithinAbs(flip_probabilities(D).first, 1e-6));
}

TEST_CASE("thermal dephasing matches the coth-weighted exponent") {
    const double beta = 1.0, w = 1.0, g = 0.12, T = 2.0;
    SimulateOptions opts;
    opts.tol = 3e-7;
    const double p = simulate_dephasing({{c(g), w}}, beta, T, opts);
    const double s = std::sin(0.5 * w * T);
    const double D = g * g * (4.0 * s * s / (w * w)) * coth(0.5 * beta * w);
    REQUIRE_THAT(p, WithinAbs(flip_probabilities(D).first, 1e-6));
}

TEST_CASE("dense and matrix-free evolution agree") {
    const std::vector<BathMode> modes = {{c(0.2, 0.1), 1.1}};
    SimulateOptions dense;
    SimulateOptions matfree;
    matfree.dense_dim_max = 0;
    const double a = simulate_dephasing(modes, std::nullopt, 2.7, dense);
    const double b = simulate_dephasing(modes, std::nullopt, 2.7, matfree);
    REQUIRE_THAT(a, WithinAbs(b, 1e-10));
}

TEST_CASE("workspace validation") {
    FockWorkspace too_small{1, 0, false};
    REQUIRE_THROWS_AS(too_small.validate(), std::invalid_argument);
    FockWorkspace too_big{8, 16, false};
    REQUIRE_THROWS_AS(too_big.validate(), std::invalid_argument);
    FockWorkspace ok{2, 3, true};
    REQUIRE(ok.dim() == 32);
    REQUIRE(ok.stride(1) == 4);
}
