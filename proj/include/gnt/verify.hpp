// verify.hpp — oracle cross-check suite: Wick sums against truncated-Fock
// expectations, exact dephasing against the closed form, and the Gaussian
// state constructions against their defining series

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "gnt/correlation.hpp"
#include "gnt/dephasing.hpp"
#include "gnt/fock.hpp"
#include "gnt/spectral.hpp"
#include "gnt/wick.hpp"

namespace gnt::fock {

struct OracleCheck {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct OracleReport {
    std::vector<OracleCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

struct WickInstance {
    std::string label;
    GaussianStateSpec state;
    std::vector<double> omega;                       // workspace frequencies
    std::vector<std::complex<double>> base_coupling; // per workspace mode
};

// Deterministic field string: insertion j couples with a j-dependent complex
// twist of the base coupling and sits at time t_j.
inline std::vector<FieldOp> make_string(const WickInstance& inst, int length) {
    std::vector<FieldOp> fields;
    for (int j = 0; j < length; ++j) {
        FieldOp op;
        op.t = 0.35 * j - 0.2;
        op.g.resize(inst.omega.size());
        const std::complex<double> twist =
            std::polar(1.0 + 0.1 * j, 0.3 * j);
        for (std::size_t k = 0; k < inst.omega.size(); ++k)
            op.g[k] = inst.base_coupling[k] * twist;
        fields.push_back(std::move(op));
    }
    return fields;
}

inline std::vector<WickInstance> wick_instances() {
    std::vector<WickInstance> out;
    const double ln2 = std::log(2.0);

    out.push_back({"vacuum_1mode", GaussianStateSpec::vacuum(), {2.0}, {{0.6, 0.1}}});
    out.push_back({"vacuum_2mode", GaussianStateSpec::vacuum(), {2.0, 3.1}, {{0.5, 0.0}, {0.3, 0.2}}});
    // thermal with beta*omega = ln 2 and = 1
    out.push_back({"thermal_ln2_1mode", GaussianStateSpec::thermal(ln2, {1.0}),
                   {1.0, 1.0}, {{0.5, 0.1}, {0.0, 0.0}}});
    out.push_back({"thermal_bw1_1mode", GaussianStateSpec::thermal(1.0, {1.0}),
                   {1.0, 1.0}, {{0.6, 0.0}, {0.0, 0.0}}});
    out.push_back({"thermal_2mode", GaussianStateSpec::thermal(1.0, {ln2, 1.0}),
                   {ln2, 1.0, ln2, 1.0}, {{0.4, 0.0}, {0.3, 0.1}, {0.0, 0.0}, {0.0, 0.0}}});
    // two-mode squeezed with gamma^2 = 1/2
    {
        const double gamma = std::sqrt(0.5);
        const double r = std::atanh(gamma);
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2, 2), N = Eigen::MatrixXcd::Zero(2, 2);
        M(0, 0) = M(1, 1) = std::cosh(r);
        N(0, 1) = N(1, 0) = std::sinh(r);
        out.push_back({"tms_half", GaussianStateSpec::bogoliubov(M, N),
                       {1.3, 0.9}, {{0.45, 0.0}, {0.25, 0.15}}});
    }
    return out;
}

} // namespace detail

// Wick sum (pairwise two-point functions computed by the Fock oracle itself)
// versus the direct truncated-Fock expectation, for even strings of 2, 4, 6
// fields. Relative deviation against max(1, |moment|).
inline OracleCheck check_wick_fock_even(double tolerance = 1e-8) {
    OracleCheck out{"wick_fock_even", 0.0, tolerance, false};
    MomentOptions opts;
    opts.rel_tol = 5e-9;  // the beta*omega = ln 2 pair converges right at the dimension cap
    for (const auto& inst : detail::wick_instances()) {
        for (int length : {2, 4, 6}) {
            const auto fields = detail::make_string(inst, length);
            Eigen::MatrixXcd delta(length, length);
            delta.setZero();
            for (int i = 0; i < length; ++i)
                for (int j = i + 1; j < length; ++j)
                    delta(i, j) = fock_moment_converged(inst.state, {fields[static_cast<std::size_t>(i)],
                                                                     fields[static_cast<std::size_t>(j)]},
                                                        inst.omega, opts);
            const auto wick = wick_moment(delta);
            const auto full = fock_moment_converged(inst.state, fields, inst.omega, opts);
            const double dev = std::abs(wick.value - full) / std::max(1.0, std::abs(full));
            out.max_deviation = std::max(out.max_deviation, dev);
        }
    }
    out.pass = out.max_deviation <= tolerance;
    return out;
}

// Odd strings must vanish for every supported (mean-zero Gaussian) state.
inline OracleCheck check_wick_fock_odd(double tolerance = 1e-10) {
    OracleCheck out{"wick_fock_odd", 0.0, tolerance, false};
    for (const auto& inst : detail::wick_instances()) {
        for (int length : {1, 3, 5}) {
            const auto fields = detail::make_string(inst, length);
            const auto full = fock_moment_converged(inst.state, fields, inst.omega);
            out.max_deviation = std::max(out.max_deviation, std::abs(full));
        }
    }
    out.pass = out.max_deviation <= tolerance;
    return out;
}

// Exact simulation versus P_bad = e^{-D} sinh D with
// D = |g|^2 4 sin^2(w T/2)/w^2, on a 27-point (g, w, T) grid whose middle T
// is the recoherence point w T = 2 pi.
inline OracleCheck check_dephasing_grid(double tolerance = 1e-6) {
    OracleCheck out{"dephasing_closed_form", 0.0, tolerance, false};
    const double two_pi = 2.0 * std::numbers::pi;
    for (double g : {0.05, 0.1, 0.2}) {
        for (double w : {0.7, 1.0, 1.3}) {
            for (double tf : {0.6, 1.0, 1.4}) {
                const double T = tf * two_pi / w;
                const double s = std::sin(0.5 * w * T);
                const double D = g * g * 4.0 * s * s / (w * w);
                const double expected = flip_probabilities(D).first;
                const double simulated =
                    simulate_dephasing({{std::complex<double>(g, 0.0), w}}, std::nullopt, T);
                out.max_deviation = std::max(out.max_deviation, std::abs(simulated - expected));
            }
        }
    }
    out.pass = out.max_deviation <= tolerance;
    return out;
}

// Thermal dephasing: the exact simulation against e^{-D} sinh D with the
// coth-weighted exponent, for one and two modes.
inline OracleCheck check_dephasing_thermal(double tolerance = 1e-6) {
    OracleCheck out{"dephasing_thermal", 0.0, tolerance, false};
    auto kernel = [](double w, double T) {
        const double s = std::sin(0.5 * w * T);
        return 4.0 * s * s / (w * w);
    };
    SimulateOptions opts;
    opts.tol = 3e-7;
    {
        const double beta = 1.0, w = 1.0, g = 0.12, T = 2.0;
        const double D = g * g * kernel(w, T) * coth(0.5 * beta * w);
        const double expected = flip_probabilities(D).first;
        const double simulated = simulate_dephasing({{std::complex<double>(g, 0.0), w}}, beta, T, opts);
        out.max_deviation = std::max(out.max_deviation, std::abs(simulated - expected));
    }
    {
        const double beta = 1.0, T = 1.7;
        const std::vector<BathMode> modes = {{std::complex<double>(0.12, 0.0), 1.0},
                                             {std::complex<double>(0.08, 0.0), 1.3}};
        double D = 0.0;
        for (const auto& m : modes)
            D += std::norm(m.coupling) * kernel(m.frequency, T) * coth(0.5 * beta * m.frequency);
        const double expected = flip_probabilities(D).first;
        const double simulated = simulate_dephasing(modes, beta, T, opts);
        out.max_deviation = std::max(out.max_deviation, std::abs(simulated - expected));
    }
    out.pass = out.max_deviation <= tolerance;
    return out;
}

// Discrete-mode correlation function (coth formula) against the oracle's
// two-point expectation in the purified thermal state.
inline OracleCheck check_mode_correlation(double tolerance = 1e-8) {
    OracleCheck out{"mode_correlation_vs_oracle", 0.0, tolerance, false};
    const double ln2 = std::log(2.0);
    const auto spec = SpectralDensity::modes({{std::complex<double>(0.7, 0.2), 1.0},
                                              {std::complex<double>(0.4, 0.0), 2.3}},
                                             ln2);
    const auto state = GaussianStateSpec::thermal(ln2, {1.0, 2.3});
    const std::vector<double> omega = {1.0, 2.3, 1.0, 2.3};
    MomentOptions opts;
    opts.rel_tol = 5e-9;
    for (double t : {0.0, 0.4, 1.1, 3.0}) {
        FieldOp phi_t{{std::complex<double>(0.7, 0.2), std::complex<double>(0.4, 0.0),
                       std::complex<double>(0.0, 0.0), std::complex<double>(0.0, 0.0)},
                      t};
        FieldOp phi_0 = phi_t;
        phi_0.t = 0.0;
        const auto oracle = fock_moment_converged(state, {phi_t, phi_0}, omega, opts);
        const auto formula = correlation_from_spectrum(spec, t);
        out.max_deviation =
            std::max(out.max_deviation, std::abs(oracle - formula) / std::max(1.0, std::abs(formula)));
    }
    out.pass = out.max_deviation <= tolerance;
    return out;
}

// Norm and bath occupation of the purification/squeezed constructions:
// gamma^2 = 1/2 gives <n_B> = 1; thermal beta*omega = ln 2 gives <a^dag a> = 1
// (read off the two-point function at t = 0: 2 n-bar + 1 = 3).
inline OracleCheck check_gaussian_states(double tolerance = 1e-5) {
    OracleCheck out{"gaussian_state_constructions", 0.0, tolerance, false};
    const double gamma = std::sqrt(0.5);
    const double r = std::atanh(gamma);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2, 2), N = Eigen::MatrixXcd::Zero(2, 2);
    M(0, 0) = M(1, 1) = std::cosh(r);
    N(0, 1) = N(1, 0) = std::sinh(r);
    const auto spec = GaussianStateSpec::bogoliubov(M, N);
    FockWorkspace ws{2, 24, false};
    const auto psi = build_gaussian_state(spec, ws);
    out.max_deviation = std::max(out.max_deviation, std::abs(psi.norm() - 1.0));
    // <n_0> via sum over amplitudes
    double occupation = 0.0;
    const std::size_t stride = ws.stride(0);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        const int n0 = static_cast<int>((static_cast<std::size_t>(i) / stride) %
                                        static_cast<std::size_t>(ws.levels()));
        occupation += n0 * std::norm(psi[i]);
    }
    out.max_deviation = std::max(out.max_deviation, std::abs(occupation - 1.0));

    // thermal beta*omega = ln 2: Delta(0) = |g|^2 (2 n-bar + 1) = 3 for g = 1
    const auto thermal = GaussianStateSpec::thermal(std::log(2.0), {1.0});
    FieldOp phi{{std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 0.0)}, 0.0};
    const auto d0 = fock_moment_converged(thermal, {phi, phi}, {1.0, 1.0});
    out.max_deviation = std::max(out.max_deviation, std::abs(d0 - std::complex<double>(3.0, 0.0)));

    out.pass = out.max_deviation <= tolerance;
    return out;
}

// Dense eigensolver path against the matrix-free Taylor stepping path on a
// small instance.
inline OracleCheck check_evolution_paths(double tolerance = 1e-10) {
    OracleCheck out{"evolution_paths", 0.0, tolerance, false};
    const std::vector<BathMode> modes = {{std::complex<double>(0.2, 0.1), 1.1}};
    SimulateOptions dense, matfree;
    matfree.dense_dim_max = 0;
    const double a = simulate_dephasing(modes, std::nullopt, 2.7, dense);
    const double b = simulate_dephasing(modes, std::nullopt, 2.7, matfree);
    out.max_deviation = std::abs(a - b);
    out.pass = out.max_deviation <= tolerance;
    return out;
}

// The full oracle suite behind the `verify` subcommand.
inline OracleReport run_oracle_suite() {
    OracleReport report;
    report.checks.push_back(check_wick_fock_even());
    report.checks.push_back(check_wick_fock_odd());
    report.checks.push_back(check_dephasing_grid());
    report.checks.push_back(check_dephasing_thermal());
    report.checks.push_back(check_mode_correlation());
    report.checks.push_back(check_gaussian_states());
    report.checks.push_back(check_evolution_paths());
    return report;
}

} // namespace gnt::fock
