// correlation.hpp — bath two-point functions: Ohmic closed form, oscillatory
// Fourier transform of a spectrum, and the polarization/spatial aggregate

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "gnt/errors.hpp"
#include "gnt/quadrature.hpp"
#include "gnt/spectral.hpp"

namespace gnt {

// Zero-temperature Ohmic correlation function, Delta(t) = -A/(t - i*tau_c)^2.
// Its modulus is A/(t^2 + tau_c^2).
inline std::complex<double> ohmic_correlation(double amplitude, double cutoff_time, double t) {
    if (!(cutoff_time > 0.0))
        throw std::domain_error("ohmic_correlation: cutoff time must be positive");
    const std::complex<double> z(t, -cutoff_time);
    return -amplitude / (z * z);
}

// Delta(t) = Integral dw/(2*pi) e^{-i*w*t} spectrum(w). Discrete modes are
// summed in closed form (with coth factors at finite temperature); the other
// kinds go through oscillatory quadrature with the phase factor written out.
inline std::complex<double> correlation_from_spectrum(const SpectralDensity& spec, double t,
                                                      double rel_tol = 1e-8) {
    using namespace std::complex_literals;

    if (const auto* dm = std::get_if<DiscreteModes>(&spec.kind())) {
        std::complex<double> acc = 0.0;
        for (const auto& m : dm->modes) {
            const double g2 = std::norm(m.coupling);
            if (spec.zero_temperature()) {
                acc += g2 * std::polar(1.0, -m.frequency * t);
            } else {
                const double c = coth(0.5 * *spec.beta() * m.frequency);
                acc += 0.5 * g2 * (std::polar(1.0, -m.frequency * t) * (c + 1.0) +
                                   std::polar(1.0, m.frequency * t) * (c - 1.0));
            }
        }
        return acc;
    }

    const auto [lo, hi] = spectrum_support(spec);
    const double inv2pi = 1.0 / (2.0 * std::numbers::pi);
    auto f = [&spec, t, inv2pi](double w) {
        return spectrum_at(spec, w) * std::exp(std::complex<double>(0.0, -w * t)) * inv2pi;
    };
    auto r = quad::integrate_rel(f, lo, hi, rel_tol);
    if (!r.converged)
        throw numeric_failure("correlation_from_spectrum: quadrature did not converge",
                              std::abs(r.value), r.error);
    return r.value;
}

// ------------------------ polarization/space aggregate -----------------------

enum class SpatialStructure {
    Uncorrelated,  // delta_{x1 x2}: each qubit sees its own bath
    Shared         // one bath field shared by every qubit
};

// One scalar two-point function. `abs_integral(a, b)` evaluates
// Integral_a^b |Delta(u)| du in closed form when available; when absent the
// aggregate falls back to adaptive quadrature on |value|.
struct CorrelationChannel {
    std::function<std::complex<double>(double)> value;
    std::function<double(double, double)> abs_integral;
};

class CorrelationFunction {
public:
    // Either one channel shared by all polarization pairs, or n_pol^2
    // independent channels in row-major (alpha1, alpha2) order.
    CorrelationFunction(SpatialStructure structure, int n_pol,
                        std::vector<CorrelationChannel> channels)
        : structure_(structure), n_pol_(n_pol), channels_(std::move(channels)) {
        if (n_pol_ != 1 && n_pol_ != 3)
            throw std::invalid_argument("CorrelationFunction: n_pol must be 1 or 3");
        const std::size_t np2 = static_cast<std::size_t>(n_pol_) * n_pol_;
        if (channels_.size() != 1 && channels_.size() != np2)
            throw std::invalid_argument("CorrelationFunction: need 1 or n_pol^2 channels");
        for (const auto& ch : channels_)
            if (!ch.value) throw std::invalid_argument("CorrelationFunction: channel has no evaluator");
    }

    static CorrelationFunction from_spectrum(const SpectralDensity& spec,
                                             SpatialStructure structure = SpatialStructure::Uncorrelated,
                                             int n_pol = 1) {
        CorrelationChannel ch;
        if (const auto* oh = std::get_if<OhmicSpectrum>(&spec.kind());
            oh && spec.zero_temperature()) {
            const double A = oh->amplitude, tc = oh->cutoff_time;
            ch.value = [A, tc](double t) { return ohmic_correlation(A, tc, t); };
            // |Delta(u)| = A/(u^2 + tc^2) has the arctangent antiderivative.
            ch.abs_integral = [A, tc](double a, double b) {
                return (A / tc) * (std::atan(b / tc) - std::atan(a / tc));
            };
        } else {
            ch.value = [spec](double t) { return correlation_from_spectrum(spec, t); };
        }
        return CorrelationFunction(structure, n_pol, {std::move(ch)});
    }

    SpatialStructure structure() const noexcept { return structure_; }
    int n_pol() const noexcept { return n_pol_; }

    // Channel-0 value (the only channel in the shared representation).
    std::complex<double> value(double t) const { return channels_.front().value(t); }

    // |Delta-bar|(dt): sum of |Delta| over the n_pol^2 polarization pairs.
    double abs_bar(double dt) const {
        if (channels_.size() == 1)
            return static_cast<double>(n_pol_ * n_pol_) * std::abs(channels_.front().value(dt));
        double acc = 0.0;
        for (const auto& ch : channels_) acc += std::abs(ch.value(dt));
        return acc;
    }

    // Integral_a^b |Delta-bar|(u) du.
    double abs_bar_integral(double a, double b, double rel_tol = 1e-9) const {
        double acc = 0.0;
        for (const auto& ch : channels_) acc += channel_abs_integral(ch, a, b, rel_tol);
        if (channels_.size() == 1) acc *= static_cast<double>(n_pol_ * n_pol_);
        return acc;
    }

private:
    static double channel_abs_integral(const CorrelationChannel& ch, double a, double b,
                                       double rel_tol) {
        if (ch.abs_integral) return ch.abs_integral(a, b);
        auto f = [&ch](double u) { return std::abs(ch.value(u)); };
        auto r = quad::integrate_rel(f, a, b, rel_tol);
        if (!r.converged)
            throw numeric_failure("CorrelationFunction: |Delta| quadrature did not converge",
                                  r.value.real(), r.error);
        return r.value.real();
    }

    SpatialStructure structure_;
    int n_pol_;
    std::vector<CorrelationChannel> channels_;
};

struct SpacetimePoint {
    int qubit = 0;
    double t = 0.0;
};

// |Delta-bar(1,2)|; zero across distinct qubits for uncorrelated structure.
inline double modulus_bar(const CorrelationFunction& corr, const SpacetimePoint& p1,
                          const SpacetimePoint& p2) {
    if (corr.structure() == SpatialStructure::Uncorrelated && p1.qubit != p2.qubit) return 0.0;
    return corr.abs_bar(p1.t - p2.t);
}

} // namespace gnt
