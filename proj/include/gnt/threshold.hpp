// threshold.hpp — level reduction, overhead, diagram-bound calculus, and the
// combinatoric/postselection threshold algebra

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gnt/errors.hpp"

namespace gnt {

// Exact binomial coefficient; safe for n <= 64 (C(64,32) fits in 64 bits,
// intermediates widened to 128).
inline std::uint64_t binomial_exact(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    if (n > 64) throw std::invalid_argument("binomial_exact: supported up to n = 64");
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    return static_cast<std::uint64_t>(acc);
}

// Binomial coefficient as a double; exact integer arithmetic up to n = 64,
// log-gamma beyond.
inline double binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0.0;
    if (n <= 64) return static_cast<double>(binomial_exact(n, k));
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// ------------------------------- level reduction ----------------------------

struct LevelTrace {
    double epsilon = 0.0;
    double epsilon0 = 0.0;
    int s = 2;
    int k_max = 0;
    std::vector<double> per_level;  // per_level[k] = eps0 * (eps/eps0)^(s^k)
};

// eps^(k) = eps0 * (eps/eps0)^(s^k), evaluated in log space so deep levels do
// not underflow prematurely. Power-of-two ratios stay bit-exact (log2/exp2).
inline LevelTrace level_reduce(double eps, double eps0, int s, int k) {
    if (!(eps >= 0.0)) throw std::domain_error("level_reduce: negative noise strength");
    if (!(eps0 > 0.0)) throw std::domain_error("level_reduce: threshold must be positive");
    if (s < 2) throw std::domain_error("level_reduce: fault order s must be >= 2");
    if (k < 0) throw std::domain_error("level_reduce: level count must be nonnegative");

    LevelTrace tr{eps, eps0, s, k, {}};
    tr.per_level.reserve(static_cast<std::size_t>(k) + 1);
    const double log2_ratio = eps > 0.0 ? std::log2(eps / eps0) : 0.0;
    for (int j = 0; j <= k; ++j) {
        if (j == 0) {
            tr.per_level.push_back(eps);
        } else if (eps == 0.0) {
            tr.per_level.push_back(0.0);
        } else {
            tr.per_level.push_back(eps0 * std::exp2(std::pow(static_cast<double>(s), j) * log2_ratio));
        }
    }
    return tr;
}

// Order-of-magnitude overhead factor (log(L/delta)/log(eps0/eps))^c — an
// estimate of the blowup inside O(.), not a bound.
inline double overhead_factor(double L, double delta_target, double eps, double eps0, double c) {
    if (!(L >= 1.0)) throw std::domain_error("overhead_factor: need L >= 1");
    if (!(delta_target > 0.0) || !(delta_target < 1.0))
        throw std::domain_error("overhead_factor: need 0 < delta < 1");
    if (!(c > 0.0)) throw std::domain_error("overhead_factor: need c > 0");
    if (!(eps > 0.0) || !(eps < eps0))
        throw std::domain_error("overhead_factor: no threshold margin (need 0 < eps < eps0)");
    return std::pow(std::log(L / delta_target) / std::log(eps0 / eps), c);
}

// ------------------------------ diagram bounds ------------------------------

struct DiagramBound {
    double partial_sum = 0.0;   // sum_{k=0}^{r} (r^k/k!) (2E)^{2r-k}
    double closed_bound = 0.0;  // (2eE)^r
};

// Bound on the norm-squared of the r-marked-location fault sum; the partial
// sum never exceeds the closed form (the tail completion only adds
// nonnegative terms). Proven only for 2E <= 1.
inline DiagramBound diagram_bound(double E, int r) {
    if (!(E >= 0.0) || 2.0 * E > 1.0)
        throw std::domain_error("diagram_bound: requires 0 <= 2E <= 1");
    if (r < 1) throw std::domain_error("diagram_bound: need r >= 1");
    double partial = 0.0;
    double rk_over_kfact = 1.0;  // r^k / k!
    for (int k = 0; k <= r; ++k) {
        partial += rk_over_kfact * std::pow(2.0 * E, 2 * r - k);
        rk_over_kfact *= static_cast<double>(r) / (k + 1);
    }
    return {partial, std::pow(2.0 * std::numbers::e * E, r)};
}

// zeta * C(A,s) * eps^s with the tight choice zeta = e^{(A-s) eps}: bound on
// the amplitude of >= s faults among A locations.
inline double s_fault_bound(int A_loc, int s, double eps) {
    if (s < 1 || s > A_loc) throw std::domain_error("s_fault_bound: need 1 <= s <= A");
    if (!(eps >= 0.0)) throw std::domain_error("s_fault_bound: eps must be nonnegative");
    return std::exp((A_loc - s) * eps) * binomial(A_loc, s) * std::pow(eps, s);
}

// sum_{l=s}^{f} (-1)^{l-s} C(l-1, s-1) C(f, l): the weight a fault path with
// exactly f faulty locations receives in the >= s-fault expansion. Equals 1
// for f >= s and 0 otherwise, so each path is counted once.
inline long long inclusion_exclusion_coefficient(int f, int s) {
    if (f < 0 || s < 1) throw std::domain_error("inclusion_exclusion_coefficient: need f >= 0, s >= 1");
    if (f > 60) throw std::invalid_argument("inclusion_exclusion_coefficient: exact arithmetic supported up to f = 60");
    __int128 acc = 0;
    for (int l = s; l <= f; ++l) {
        const __int128 term = static_cast<__int128>(binomial_exact(l - 1, s - 1)) *
                              static_cast<__int128>(binomial_exact(f, l));
        acc += ((l - s) % 2 == 0) ? term : -term;
    }
    return static_cast<long long>(acc);
}

// ------------------------------ threshold algebra ---------------------------

struct GadgetCounts {
    int A_loc = 0;      // locations per 1-gadget
    int s = 2;          // faults needed to fail
    double B_mal = 0;   // malignant pairs
    double C_prep = 0;  // software preparation/verification locations
    double D_trip = 0;  // three-location sets
    double zeta = 1.0;  // >= e^{(A-s) eps}

    void validate() const {
        if (s < 1 || A_loc < s) throw std::invalid_argument("GadgetCounts: need A_loc >= s >= 1");
        if (B_mal < 0 || C_prep < 0 || D_trip < 0)
            throw std::invalid_argument("GadgetCounts: counts must be nonnegative");
        if (!(zeta >= 1.0)) throw std::invalid_argument("GadgetCounts: zeta must be >= 1");
    }
};

inline double tight_zeta(int A_loc, int s, double eps) {
    if (s > A_loc || !(eps >= 0.0)) throw std::domain_error("tight_zeta: need s <= A and eps >= 0");
    return std::exp((A_loc - s) * eps);
}

// eps0 = (zeta * C(A,s))^(-1/(s-1)).
inline double threshold_from_counts(int A_loc, int s, double zeta) {
    if (s < 2) throw std::domain_error("threshold_from_counts: exponent undefined for s < 2");
    if (A_loc < s) throw std::domain_error("threshold_from_counts: need A >= s");
    if (!(zeta >= 1.0)) throw std::domain_error("threshold_from_counts: zeta must be >= 1");
    return std::pow(zeta * binomial(A_loc, s), -1.0 / (s - 1));
}

// Root of B*eps0^2 + D*eps0^3 = eps0: eps0 = [B/2 (1 + sqrt(1 + 4D/B^2))]^-1.
inline double malignant_threshold(double B_mal, double D_trip) {
    if (!(B_mal > 0.0)) throw std::domain_error("malignant_threshold: need at least one malignant pair");
    if (!(D_trip >= 0.0)) throw std::domain_error("malignant_threshold: triple count must be nonnegative");
    const double eps0 = 1.0 / (0.5 * B_mal * (1.0 + std::sqrt(1.0 + 4.0 * D_trip / (B_mal * B_mal))));
    const double residual = std::abs(B_mal * eps0 * eps0 + D_trip * eps0 * eps0 * eps0 - eps0);
    if (residual > 1e-12 * eps0)
        throw numeric_failure("malignant_threshold: defining equation residual too large", eps0, residual);
    return eps0;
}

struct PostselectThreshold {
    double epsilon0 = 0.0;
    double B = 0.0, C = 0.0, D = 0.0;

    // Conditional failure bound eps -> (B eps^2 + D eps^3)/(1 - C eps).
    double conditional(double eps) const {
        const double denom = 1.0 - C * eps;
        if (!(denom > 0.0))
            throw std::domain_error("PostselectThreshold: conditional bound needs eps < 1/C");
        return (B * eps * eps + D * eps * eps * eps) / denom;
    }
};

// Root of (B eps0^2 + D eps0^3)/(1 - C eps0) = eps0:
// eps0 = [ (B+C)/2 (1 + sqrt(1 + 4D/(B+C)^2)) ]^-1.
inline PostselectThreshold postselect_threshold(double B_mal, double C_prep, double D_trip) {
    if (!(B_mal > 0.0)) throw std::domain_error("postselect_threshold: need at least one malignant pair");
    if (!(C_prep >= 0.0) || !(D_trip >= 0.0))
        throw std::domain_error("postselect_threshold: counts must be nonnegative");
    const double bc = B_mal + C_prep;
    const double eps0 = 1.0 / (0.5 * bc * (1.0 + std::sqrt(1.0 + 4.0 * D_trip / (bc * bc))));
    PostselectThreshold out{eps0, B_mal, C_prep, D_trip};
    const double residual = std::abs(out.conditional(eps0) - eps0);
    if (residual > 1e-12 * eps0)
        throw numeric_failure("postselect_threshold: defining equation residual too large", eps0, residual);
    return out;
}

// P_fail for n parallel preparation attempts:
// P_joint/P_accept + P_reject^n (1 - P_joint/P_accept); the n -> infinity
// limit recovers the conditional estimate P_joint/P_accept.
inline double postselect_fail(double P_joint, double P_accept, int n) {
    if (!(P_accept > 0.0) || P_accept > 1.0)
        throw std::domain_error("postselect_fail: need 0 < P_accept <= 1");
    if (!(P_joint >= 0.0) || P_joint > P_accept)
        throw std::domain_error("postselect_fail: need 0 <= P_joint <= P_accept");
    if (n < 1) throw std::domain_error("postselect_fail: need n >= 1");
    const double ratio = P_joint / P_accept;
    const double rn = std::pow(1.0 - P_accept, n);
    return ratio + rn * (1.0 - ratio);
}

} // namespace gnt
