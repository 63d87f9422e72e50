// strength.hpp — noise strength estimates: the Gaussian double integral E and
// eps = sqrt(2eE), operator-norm estimates, and the infrared criterion

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "gnt/correlation.hpp"
#include "gnt/errors.hpp"
#include "gnt/geometry.hpp"
#include "gnt/quadrature.hpp"

namespace gnt {

inline constexpr double kNoiseConstant = 2.0 * std::numbers::e;  // C = 2e ~ (2.34)^2

enum class NoiseModel { Gaussian, ShortRange, LongRange, AlmostMarkovian, OhmicClosed };

struct StrengthReport {
    double E = 0.0;
    double epsilon = 0.0;
    NoiseModel model = NoiseModel::Gaussian;
    bool valid = true;          // 2E <= 1, equivalently eps^2 <= e
    int argmax_location = -1;
};

// E = max over locations of sum_{x1 in Loc} int_Loc dt1 sum_{x2} int_0^T dt2
// |Delta-bar(1,2)|. Uncorrelated structure collapses the x2 sum onto x1;
// shared structure multiplies by the full qubit count. The t2 integral runs
// over the schedule's [0, T_total].
inline std::pair<double, int> gaussian_E(const Schedule& s, const CorrelationFunction& corr,
                                         double rel_tol = 1e-7) {
    if (s.locations().empty()) throw std::invalid_argument("gaussian_E: empty schedule");
    const double T = s.total_duration();
    double best = -1.0;
    int best_id = -1;
    for (const auto& loc : s.locations()) {
        const double spatial =
            corr.structure() == SpatialStructure::Uncorrelated
                ? static_cast<double>(loc.qubits.size())
                : static_cast<double>(loc.qubits.size()) * s.num_qubits();
        // int_0^T |Delta-bar(t1 - t2)| dt2 = int_{t1-T}^{t1} |Delta-bar(u)| du
        auto inner = [&corr, T](double t1) { return corr.abs_bar_integral(t1 - T, t1); };
        auto r = quad::integrate_rel(inner, loc.start, loc.end, rel_tol);
        if (!r.converged)
            throw numeric_failure("gaussian_E: outer quadrature did not converge",
                                  r.value.real(), r.error);
        const double e_loc = spatial * r.value.real();
        if (e_loc > best) {
            best = e_loc;
            best_id = loc.id;
        }
    }
    return {best, best_id};
}

// eps = sqrt(2e E); the derivation assumes 2E <= 1 (i.e. eps^2 <= e), flagged
// in `valid` rather than clamped.
inline StrengthReport gaussian_epsilon(double E) {
    if (!(E >= 0.0)) throw std::domain_error("gaussian_epsilon: E must be nonnegative");
    StrengthReport r;
    r.E = E;
    r.model = NoiseModel::Gaussian;
    r.epsilon = std::sqrt(kNoiseConstant * E);
    r.valid = 2.0 * E <= 1.0;
    return r;
}

// eps = max ||H_SB|| * t0 (short-range coupling).
inline double short_range_epsilon(double norm_max, double t0) {
    if (!(norm_max >= 0.0)) throw std::domain_error("short_range_epsilon: norm must be nonnegative");
    return norm_max * t0;
}

// eps = sqrt(2e * max_i sum_j ||H_<ij>|| * t0) (pairwise long-range coupling).
inline double long_range_epsilon(double row_sum_norm, double t0) {
    if (!(row_sum_norm >= 0.0))
        throw std::domain_error("long_range_epsilon: norm must be nonnegative");
    return std::sqrt(kNoiseConstant * row_sum_norm * t0);
}

struct IrCriterion {
    bool convergent = false;
    double exponent = 0.0;  // D + z - 2*delta; the integral scales as R^exponent
};

// Infrared convergence of the E integral for critical baths: requires the
// strict inequality D + z < 2*delta. The marginal case counts as
// non-convergent.
inline IrCriterion ir_criterion(int D_spatial, double z, double delta_scale) {
    const double expo = static_cast<double>(D_spatial) + z - 2.0 * delta_scale;
    return {expo < 0.0, expo};
}

// Whether the operator-norm threshold condition sqrt(A)*(t0/tau_c) < eps0
// holds for Ohmic noise (the linearly cutoff-divergent criterion).
inline bool linear_divergence_check(double A, double t0, double tau_c, double eps0) {
    if (!(A >= 0.0) || !(t0 > 0.0) || !(tau_c > 0.0) || !(eps0 > 0.0))
        throw std::domain_error("linear_divergence_check: needs A >= 0 and positive t0, tau_c, eps0");
    return std::sqrt(A) * (t0 / tau_c) < eps0;
}

// Convenience: full Gaussian evaluation of a schedule + correlation pair.
inline StrengthReport evaluate_gaussian(const Schedule& s, const CorrelationFunction& corr,
                                        double rel_tol = 1e-7) {
    auto [E, id] = gaussian_E(s, corr, rel_tol);
    StrengthReport r = gaussian_epsilon(E);
    r.argmax_location = id;
    return r;
}

} // namespace gnt
