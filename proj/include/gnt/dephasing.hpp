// dephasing.hpp — the exactly solvable pure-dephasing channel: exponent D(T),
// flip probabilities, and the repetition-code CNOT gadget bound

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <variant>

#include "gnt/correlation.hpp"
#include "gnt/errors.hpp"
#include "gnt/quadrature.hpp"
#include "gnt/spectral.hpp"
#include "gnt/threshold.hpp"

namespace gnt {

struct DephasingResult {
    double D_exp = 0.0;
    double P_bad = 0.0;
    double P_good = 1.0;
    double T_elapsed = 0.0;
};

namespace detail {

// 4 sin^2(w T / 2) / w^2 with the removable w -> 0 singularity (limit T^2).
inline double dephasing_kernel(double omega, double T) {
    const double x = 0.5 * omega * T;
    if (std::abs(x) < 1e-5) {
        const double x2 = x * x;
        return T * T * (1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 45.0);
    }
    const double s = std::sin(x);
    return 4.0 * s * s / (omega * omega);
}

} // namespace detail

// D = int dw/(2*pi) spectrum(w) * 4 sin^2(w T/2)/w^2. Discrete modes sum in
// closed form (coth factor at finite temperature); Ohmic and tabulated kinds
// go through quadrature. Zero-temperature Ohmic has the closed form
// A ln((T^2 + tau_c^2)/tau_c^2), which the quadrature must reproduce.
inline double dephasing_exponent(const SpectralDensity& spec, double T, double rel_tol = 1e-9) {
    if (!(T >= 0.0)) throw std::domain_error("dephasing_exponent: elapsed time must be nonnegative");
    if (T == 0.0) return 0.0;

    if (const auto* dm = std::get_if<DiscreteModes>(&spec.kind())) {
        double acc = 0.0;
        for (const auto& m : dm->modes) {
            double term = std::norm(m.coupling) * detail::dephasing_kernel(m.frequency, T);
            if (!spec.zero_temperature()) term *= coth(0.5 * *spec.beta() * m.frequency);
            acc += term;
        }
        return acc;
    }

    const auto [lo, hi] = spectrum_support(spec);
    const double inv2pi = 1.0 / (2.0 * std::numbers::pi);
    auto f = [&spec, T, inv2pi](double w) {
        return spectrum_at(spec, w) * detail::dephasing_kernel(w, T) * inv2pi;
    };
    auto r = quad::integrate_rel(f, lo, hi, rel_tol);
    if (!r.converged)
        throw numeric_failure("dephasing_exponent: quadrature did not converge",
                              r.value.real(), r.error);
    return r.value.real();
}

// P_bad = e^{-D} sinh D, P_good = e^{-D} cosh D, via expm1 so small D stays
// accurate; the pair sums to 1 exactly.
inline std::pair<double, double> flip_probabilities(double D_exp) {
    if (!(D_exp >= 0.0) || !std::isfinite(D_exp))
        throw std::domain_error("flip_probabilities: dephasing exponent must be finite and nonnegative");
    const double p_bad = -0.5 * std::expm1(-2.0 * D_exp);
    return {p_bad, 1.0 - p_bad};
}

struct CnotBound {
    double eps_cnot = 0.0;
    double D_exp = 0.0;
    bool valid = true;  // the bound P_bad <= D is vacuous once D >= 1
};

// Encoded-error bound for the teleported CNOT gadget over an n-qubit
// repetition code: eps = 4 C(n,(n+1)/2) D^{(n+1)/2} with
// D = 2A ln((3n+2) t0 / tau_c). Out-of-regime D >= 1 is flagged, not clamped.
inline CnotBound cnot_error_bound(int n, double A, double t0, double tau_c) {
    if (n < 3 || n % 2 == 0)
        throw std::domain_error("cnot_error_bound: repetition length must be odd and >= 3");
    if (!(A >= 0.0) || !(t0 > 0.0) || !(tau_c > 0.0))
        throw std::domain_error("cnot_error_bound: need A >= 0 and positive t0, tau_c");
    if (A == 0.0) return {0.0, 0.0, true};
    if (!((3.0 * n + 2.0) * t0 > tau_c))
        throw std::domain_error("cnot_error_bound: cutoff time exceeds the gadget duration");
    const double D = 2.0 * A * std::log((3.0 * n + 2.0) * t0 / tau_c);
    const int m = (n + 1) / 2;
    const double eps = 4.0 * binomial(n, m) * std::pow(D, m);
    return {eps, D, D < 1.0};
}

struct ConnectedDiagrams {
    std::complex<double> C_U{0.0, 0.0};
    std::complex<double> C_L{0.0, 0.0};
    double D_exp = 0.0;
};

// The three connected diagrams over [0, T]^2: C_U = -int_{t>s} Delta(t-s),
// C_L = -int_{t<s} Delta(t-s), plus the cross-branch exponent D from the
// frequency route. Normalization demands C_U + C_L + D = 0.
inline ConnectedDiagrams connected_diagrams(const SpectralDensity& spec, double T,
                                            double rel_tol = 1e-9) {
    if (!(T >= 0.0)) throw std::domain_error("connected_diagrams: elapsed time must be nonnegative");
    ConnectedDiagrams out;
    if (T == 0.0) return out;

    // Closed-form evaluator where available; otherwise per-point transform.
    std::function<std::complex<double>(double)> delta;
    if (const auto* oh = std::get_if<OhmicSpectrum>(&spec.kind());
        oh && spec.zero_temperature()) {
        const double A = oh->amplitude, tc = oh->cutoff_time;
        delta = [A, tc](double u) { return ohmic_correlation(A, tc, u); };
    } else {
        delta = [&spec](double u) { return correlation_from_spectrum(spec, u); };
    }

    // int_{t>s, [0,T]^2} Delta(t-s) dt ds = int_0^T (T-u) Delta(u) du; the two
    // branches are evaluated independently so Hermiticity stays a real check.
    auto upper = [&delta, T](double u) { return (T - u) * delta(u); };
    auto lower = [&delta, T](double u) { return (T - u) * delta(-u); };
    auto ru = quad::integrate_rel(upper, 0.0, T, rel_tol);
    auto rl = quad::integrate_rel(lower, 0.0, T, rel_tol);
    if (!ru.converged || !rl.converged)
        throw numeric_failure("connected_diagrams: time quadrature did not converge",
                              std::abs(ru.value), std::max(ru.error, rl.error));
    out.C_U = -ru.value;
    out.C_L = -rl.value;
    out.D_exp = dephasing_exponent(spec, T, rel_tol);
    return out;
}

inline DephasingResult dephasing_result(const SpectralDensity& spec, double T,
                                        double rel_tol = 1e-9) {
    DephasingResult r;
    r.T_elapsed = T;
    r.D_exp = dephasing_exponent(spec, T, rel_tol);
    std::tie(r.P_bad, r.P_good) = flip_probabilities(r.D_exp);
    return r;
}

} // namespace gnt
