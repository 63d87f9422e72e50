#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "gnt/correlation.hpp"
#include "gnt/spectral.hpp"

using namespace gnt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent fixed-step Simpson oracle for int_a^b f, kept free of the
// library quadrature.
template <class F>
std::complex<double> simpson_oracle(F f, double a, double b, int n /* even */) {
    const double h = (b - a) / n;
    std::complex<double> acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

} // namespace

TEST_CASE("ohmic correlation closed form") {
    // Delta(0) = A/tau_c^2, frozen against the quadrature oracle below.
    const auto d0 = ohmic_correlation(1.0, 1.0, 0.0);
    REQUIRE_THAT(d0.real(), WithinAbs(1.0, 1e-14));
    REQUIRE_THAT(d0.imag(), WithinAbs(0.0, 1e-14));

    REQUIRE(ohmic_correlation(0.0, 1.0, 5.0) == std::complex<double>(0.0, 0.0));

    // |Delta| = A/(t^2 + tau_c^2): 0.5 at A = tau_c = t = 1
    REQUIRE_THAT(std::abs(ohmic_correlation(1.0, 1.0, 1.0)), WithinAbs(0.5, 1e-14));

    REQUIRE_THROWS_AS(ohmic_correlation(1.0, 0.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(ohmic_correlation(1.0, -2.0, 1.0), std::domain_error);
}

TEST_CASE("ohmic correlation against an independent Simpson oracle") {
    // int dw/(2pi) 2pi A w e^{-w tau_c} e^{-iwt}
    for (double t : {0.0, 0.7, 2.5}) {
        auto f = [t](double w) {
            return w * std::exp(-w) * std::exp(std::complex<double>(0.0, -w * t));
        };
        const auto oracle = simpson_oracle(f, 0.0, 40.0, 200000);
        const auto closed = ohmic_correlation(1.0, 1.0, t);
        REQUIRE(std::abs(oracle - closed) < 1e-10);
    }
}

TEST_CASE("correlation from spectrum matches the Ohmic closed form") {
    const auto spec = SpectralDensity::ohmic(1.0, 1.0);
    for (double t : {0.0, 0.1, 1.0, 10.0, 100.0}) {
        const auto numeric = correlation_from_spectrum(spec, t);
        const auto closed = ohmic_correlation(1.0, 1.0, t);
        REQUIRE(std::abs(numeric - closed) <= 1e-6 * std::abs(closed));
    }
}

TEST_CASE("single discrete mode gives a pure phase") {
    const auto spec = SpectralDensity::modes({{std::complex<double>(1.0, 0.0), 2.0}});
    for (double t : {0.0, 0.3, 1.9}) {
        const auto d = correlation_from_spectrum(spec, t);
        REQUIRE_THAT(d.real(), WithinAbs(std::cos(2.0 * t), 1e-14));
        REQUIRE_THAT(d.imag(), WithinAbs(-std::sin(2.0 * t), 1e-14));
    }
}

TEST_CASE("thermal discrete modes follow the coth formula") {
    const double beta = 0.8;
    const std::complex<double> g(0.6, 0.3);
    const double w = 1.7;
    const auto spec = SpectralDensity::modes({{g, w}}, beta);
    for (double t : {0.0, 0.5, 2.2}) {
        const double c = 1.0 / std::tanh(0.5 * beta * w);
        const std::complex<double> expected =
            0.5 * std::norm(g) *
            (std::polar(1.0, -w * t) * (c + 1.0) + std::polar(1.0, w * t) * (c - 1.0));
        const auto d = correlation_from_spectrum(spec, t);
        REQUIRE(std::abs(d - expected) < 1e-13);
    }
}

TEST_CASE("equal-time correlation is a nonnegative real number") {
    const auto specs = {
        SpectralDensity::ohmic(0.3, 2.0),
        SpectralDensity::ohmic(0.3, 2.0, 1.5),
        SpectralDensity::modes({{std::complex<double>(0.5, 0.2), 1.0}}, 2.0),
        SpectralDensity::tabulated({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 0.5, 0.0}),
    };
    for (const auto& spec : specs) {
        const auto d0 = correlation_from_spectrum(spec, 0.0);
        REQUIRE(d0.real() >= 0.0);
        REQUIRE(std::abs(d0.imag()) < 1e-8 * std::max(1e-300, std::abs(d0)));
    }
}

TEST_CASE("time reversal conjugates the correlation function") {
    const auto specs = {
        SpectralDensity::ohmic(1.2, 0.7),
        SpectralDensity::ohmic(1.2, 0.7, 2.0),
        SpectralDensity::modes({{std::complex<double>(0.4, 0.1), 1.3},
                                {std::complex<double>(0.2, 0.0), 2.9}},
                               1.1),
        SpectralDensity::tabulated({-1.0, 0.0, 1.5, 4.0}, {0.2, 0.8, 0.3, 0.0}),
    };
    for (const auto& spec : specs) {
        for (double t : {0.15, 0.9, 3.4}) {
            const auto fwd = correlation_from_spectrum(spec, t);
            const auto bwd = correlation_from_spectrum(spec, -t);
            REQUIRE(std::abs(bwd - std::conj(fwd)) <= 1e-10 * std::max(1.0, std::abs(fwd)));
        }
    }
}

TEST_CASE("tabulated spectrum transforms against the Simpson oracle") {
    const auto spec = SpectralDensity::tabulated({0.0, 1.0, 2.0, 4.0}, {0.0, 2.0, 1.0, 0.0});
    auto interp = [&spec](double w) { return spectrum_at(spec, w); };
    for (double t : {0.0, 0.8, 2.0}) {
        auto f = [&interp, t](double w) {
            return interp(w) * std::exp(std::complex<double>(0.0, -w * t)) /
                   (2.0 * std::numbers::pi);
        };
        const auto oracle = simpson_oracle(f, 0.0, 4.0, 80000);
        const auto val = correlation_from_spectrum(spec, t);
        REQUIRE(std::abs(val - oracle) < 1e-8);
    }
}

TEST_CASE("thermal spectrum limits") {
    auto J = [](double w) { return 2.0 * w * std::exp(-w); };

    // beta -> infinity: coth -> 1, so 2*pi*J above and 0 below
    const double big_beta = 1e3;
    REQUIRE_THAT(thermal_spectrum(J, big_beta, 1.0),
                 WithinRel(2.0 * std::numbers::pi * J(1.0), 1e-12));
    REQUIRE_THAT(thermal_spectrum(J, big_beta, -1.0), WithinAbs(0.0, 1e-200));

    // beta*omega = 2: pi J (coth(1) + 1), coth(1) = 1.3130352854993315
    const double beta = 2.0, w = 1.0;
    REQUIRE_THAT(thermal_spectrum(J, beta, w),
                 WithinRel(std::numbers::pi * J(w) * 2.3130352854993315, 1e-12));

    // w = 0 symmetric limit: (2 pi / beta) * lim J(w)/w = 4 pi / beta here
    REQUIRE_THAT(thermal_spectrum(J, beta, 0.0),
                 WithinRel(4.0 * std::numbers::pi / beta, 1e-4));

    // J ~ sqrt(w) decays slower than w: the limit diverges
    auto J_sub = [](double w) { return std::sqrt(w); };
    REQUIRE_THROWS_AS(thermal_spectrum(J_sub, beta, 0.0), std::domain_error);

    REQUIRE_THROWS_AS(thermal_spectrum(J, -1.0, 1.0), std::domain_error);
}

TEST_CASE("detailed balance of the thermal Ohmic spectrum") {
    const auto spec = SpectralDensity::ohmic(0.5, 1.0, 2.0);
    for (double w : {0.3, 1.0, 2.7}) {
        REQUIRE(spectrum_at(spec, w) >= 0.0);
        REQUIRE(spectrum_at(spec, -w) >= 0.0);
        REQUIRE_THAT(spectrum_at(spec, -w),
                     WithinRel(std::exp(-2.0 * w) * spectrum_at(spec, w), 1e-10));
    }
}

TEST_CASE("modulus bar aggregates polarization pairs") {
    const auto spec = SpectralDensity::ohmic(1.0, 1.0);

    const auto uncorr = CorrelationFunction::from_spectrum(spec, SpatialStructure::Uncorrelated, 1);
    REQUIRE(modulus_bar(uncorr, {0, 0.0}, {1, 0.0}) == 0.0);
    REQUIRE_THAT(modulus_bar(uncorr, {0, 1.0}, {0, 1.0}), WithinAbs(1.0, 1e-14));

    const auto three = CorrelationFunction::from_spectrum(spec, SpatialStructure::Shared, 3);
    REQUIRE_THAT(modulus_bar(three, {0, 2.0}, {4, 2.0}), WithinAbs(9.0, 1e-13));
}

TEST_CASE("closed-form |Delta| integral matches quadrature fallback") {
    const auto spec = SpectralDensity::ohmic(0.8, 0.5);
    const auto closed = CorrelationFunction::from_spectrum(spec);
    CorrelationChannel numeric_ch;
    numeric_ch.value = [](double t) { return ohmic_correlation(0.8, 0.5, t); };
    const CorrelationFunction numeric(SpatialStructure::Uncorrelated, 1, {numeric_ch});
    for (auto [a, b] : {std::pair{-1.0, 1.0}, std::pair{0.0, 3.0}, std::pair{-7.0, -2.0}}) {
        REQUIRE_THAT(numeric.abs_bar_integral(a, b),
                     WithinRel(closed.abs_bar_integral(a, b), 1e-8));
    }
}

TEST_CASE("spectral density validation") {
    REQUIRE_THROWS_AS(SpectralDensity::ohmic(1.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(SpectralDensity::ohmic(-1.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(SpectralDensity::ohmic(1.0, 1.0, -2.0), std::invalid_argument);
    REQUIRE_THROWS_AS(SpectralDensity::modes({{std::complex<double>(1.0, 0.0), 0.0}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(SpectralDensity::tabulated({0.0, 1.0}, {0.5, -0.1}), std::invalid_argument);
    REQUIRE_THROWS_AS(SpectralDensity::tabulated({1.0, 0.0}, {0.5, 0.1}), std::invalid_argument);
    REQUIRE_THROWS_AS(SpectralDensity::tabulated({0.0}, {0.5}), std::invalid_argument);
}

TEST_CASE("spectral density JSON round trip") {
    const auto specs = {
        SpectralDensity::ohmic(1e-3, 0.01, 2.0),
        SpectralDensity::modes({{std::complex<double>(0.3, 0.0), 1.0}}),
        SpectralDensity::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}),
    };
    for (const auto& spec : specs) {
        const auto back = spectral_density_from_json(to_json(spec));
        for (double t : {0.0, 0.4, 1.7}) {
            const auto a = correlation_from_spectrum(spec, t);
            const auto b = correlation_from_spectrum(back, t);
            REQUIRE(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
    REQUIRE_THROWS_AS(spectral_density_from_json(nlohmann::json{{"kind", "ohmic"}, {"A", 1.0}}),
                      config_error);
    REQUIRE_THROWS_AS(spectral_density_from_json(nlohmann::json{
                          {"kind", "ohmic"}, {"A", 1.0}, {"tau_c", 1.0}, {"extra", 1}}),
                      config_error);
}
