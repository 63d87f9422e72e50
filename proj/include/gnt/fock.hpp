// fock.hpp — brute-force verification layer: truncated multi-mode Fock
// spaces, Gaussian state construction (vacuum / thermal purification /
// diagonal Bogoliubov), field-string moments, and exact dephasing simulation

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "gnt/errors.hpp"
#include "gnt/spectral.hpp"

namespace gnt::fock {

// Hard ceiling on workspace dimension (occupation levels ^ modes, times 2
// when the qubit is included).
inline constexpr std::size_t kMaxDim = std::size_t(1) << 20;

// Truncated product space. Occupation of mode k advances with stride
// (cutoff+1)^k; when a qubit is included, its bit is the slowest index.
struct FockWorkspace {
    int num_modes = 1;
    int cutoff = 16;  // max occupation per mode
    bool includes_qubit = false;

    int levels() const noexcept { return cutoff + 1; }

    std::size_t osc_dim() const {
        std::size_t acc = 1;
        for (int k = 0; k < num_modes; ++k) {
            acc *= static_cast<std::size_t>(levels());
            if (acc > kMaxDim) throw std::invalid_argument("FockWorkspace: dimension exceeds 2^20");
        }
        return acc;
    }

    std::size_t dim() const {
        const std::size_t d = osc_dim() * (includes_qubit ? 2 : 1);
        if (d > kMaxDim) throw std::invalid_argument("FockWorkspace: dimension exceeds 2^20");
        return d;
    }

    std::size_t stride(int mode) const {
        std::size_t acc = 1;
        for (int k = 0; k < mode; ++k) acc *= static_cast<std::size_t>(levels());
        return acc;
    }

    void validate() const {
        if (num_modes < 1) throw std::invalid_argument("FockWorkspace: need at least one mode");
        if (cutoff < 1) throw std::invalid_argument("FockWorkspace: cutoff must be >= 1");
        (void)dim();
    }
};

namespace detail {

inline bool dim_fits(int levels, int num_modes, bool qubit, std::size_t cap = kMaxDim) {
    std::size_t acc = qubit ? 2 : 1;
    for (int k = 0; k < num_modes; ++k) {
        if (acc > cap / static_cast<std::size_t>(levels)) return false;
        acc *= static_cast<std::size_t>(levels);
    }
    return acc <= cap;
}

// Largest cutoff c whose comparison partner c+2 (i.e. c+3 levels) still fits.
inline int max_comparison_cutoff(int num_modes, bool qubit, std::size_t cap = kMaxDim) {
    int lv = 2;
    while (dim_fits(lv + 1, num_modes, qubit, cap)) ++lv;
    return lv - 3;
}

} // namespace detail

// ------------------------------ Gaussian states ------------------------------

struct GaussianStateSpec {
    enum class Kind { Vacuum, ThermalPurification, Bogoliubov };

    Kind kind = Kind::Vacuum;
    double beta = 0.0;                  // ThermalPurification
    std::vector<double> frequencies;    // ThermalPurification: bath mode freqs
    Eigen::MatrixXcd M, N;              // Bogoliubov, over all workspace modes

    static GaussianStateSpec vacuum() { return {}; }

    // Thermal state of the listed bath modes, purified against one reference
    // mode each: the workspace holds 2m modes, bath first, references after.
    static GaussianStateSpec thermal(double beta, std::vector<double> frequencies) {
        if (!(beta > 0.0)) throw std::invalid_argument("GaussianStateSpec: beta must be positive");
        if (frequencies.empty())
            throw std::invalid_argument("GaussianStateSpec: thermal purification needs modes");
        for (double w : frequencies)
            if (!(w > 0.0)) throw std::invalid_argument("GaussianStateSpec: frequencies must be positive");
        GaussianStateSpec s;
        s.kind = Kind::ThermalPurification;
        s.beta = beta;
        s.frequencies = std::move(frequencies);
        return s;
    }

    // V^-1 a_k V = sum_j M_kj a_j + N_kj a_j^dag. The matrices must preserve
    // the commutation relations: M M^dag - N N^dag = 1 and M N^T symmetric,
    // both checked to 1e-10.
    static GaussianStateSpec bogoliubov(Eigen::MatrixXcd M, Eigen::MatrixXcd N) {
        if (M.rows() != M.cols() || N.rows() != N.cols() || M.rows() != N.rows())
            throw std::invalid_argument("GaussianStateSpec: M and N must be square with equal size");
        const auto I = Eigen::MatrixXcd::Identity(M.rows(), M.cols());
        const double scale = std::max(1.0, M.norm() * M.norm());
        if ((M * M.adjoint() - N * N.adjoint() - I).norm() > 1e-10 * scale)
            throw std::invalid_argument("GaussianStateSpec: M M^dag - N N^dag != 1");
        const Eigen::MatrixXcd S = M * N.transpose();
        if ((S - S.transpose()).norm() > 1e-10 * std::max(1.0, S.norm()))
            throw std::invalid_argument("GaussianStateSpec: M N^T is not symmetric");
        GaussianStateSpec s;
        s.kind = Kind::Bogoliubov;
        s.M = std::move(M);
        s.N = std::move(N);
        return s;
    }

    int required_modes() const {
        switch (kind) {
            case Kind::Vacuum: return 0;  // any workspace size
            case Kind::ThermalPurification: return 2 * static_cast<int>(frequencies.size());
            case Kind::Bogoliubov: return static_cast<int>(M.rows());
        }
        return 0;
    }
};

namespace detail {

// Product of two-mode-squeezed factors: for each (i, j, gamma), the modes i
// and j carry sqrt(1-|g|^2) sum_n g^n |n,n>; all other modes stay in |0>.
inline Eigen::VectorXcd build_pair_state(
    const std::vector<std::tuple<int, int, std::complex<double>>>& pairs,
    const FockWorkspace& ws) {
    const std::size_t dim = ws.osc_dim();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    const int L = ws.levels();
    std::size_t combos = 1;
    for (std::size_t p = 0; p < pairs.size(); ++p) combos *= static_cast<std::size_t>(L);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rem = c;
        std::size_t idx = 0;
        std::complex<double> amp = 1.0;
        for (const auto& [i, j, g] : pairs) {
            const int n = static_cast<int>(rem % static_cast<std::size_t>(L));
            rem /= static_cast<std::size_t>(L);
            idx += static_cast<std::size_t>(n) * (ws.stride(i) + ws.stride(j));
            amp *= std::sqrt(1.0 - std::norm(g)) * std::pow(g, n);
        }
        psi[static_cast<Eigen::Index>(idx)] = amp;
    }
    return psi;
}

} // namespace detail

// Construct the state vector over the oscillator part of the workspace.
// Bogoliubov support covers diagonal two-mode squeezing only: M diagonal with
// real entries >= 1 and N a symmetric perfect matching; anything else is an
// explicit unsupported-feature error.
inline Eigen::VectorXcd build_gaussian_state(const GaussianStateSpec& spec,
                                             const FockWorkspace& ws) {
    ws.validate();
    using Kind = GaussianStateSpec::Kind;

    if (spec.kind == Kind::Vacuum) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ws.osc_dim()));
        psi[0] = 1.0;
        return psi;
    }

    if (spec.kind == Kind::ThermalPurification) {
        const int m = static_cast<int>(spec.frequencies.size());
        if (ws.num_modes != 2 * m)
            throw std::invalid_argument("build_gaussian_state: purification needs 2x modes (bath then reference)");
        std::vector<std::tuple<int, int, std::complex<double>>> pairs;
        for (int k = 0; k < m; ++k) {
            const double gamma = std::exp(-0.5 * spec.beta * spec.frequencies[k]);
            pairs.emplace_back(k, m + k, std::complex<double>(gamma, 0.0));
        }
        return detail::build_pair_state(pairs, ws);
    }

    // Bogoliubov
    const auto& M = spec.M;
    const auto& N = spec.N;
    const int m = static_cast<int>(M.rows());
    if (ws.num_modes != m)
        throw std::invalid_argument("build_gaussian_state: workspace modes must match Bogoliubov size");
    const double tol = 1e-12 * std::max(1.0, N.norm() + M.norm());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && std::abs(M(i, j)) > tol)
                throw unsupported_error("build_gaussian_state: only diagonal M is supported");
    for (int i = 0; i < m; ++i)
        if (std::abs(M(i, i).imag()) > tol || M(i, i).real() < 1.0 - 1e-10)
            throw unsupported_error("build_gaussian_state: M must have real diagonal entries >= 1");

    std::vector<int> partner(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
        if (std::abs(N(i, i)) > tol)
            throw unsupported_error("build_gaussian_state: single-mode squeezing is not supported");
        for (int j = i + 1; j < m; ++j) {
            if (std::abs(N(i, j)) <= tol) continue;
            if (partner[i] != -1 || partner[j] != -1)
                throw unsupported_error("build_gaussian_state: N must pair each mode at most once");
            partner[i] = j;
            partner[j] = i;
        }
    }
    std::vector<std::tuple<int, int, std::complex<double>>> pairs;
    for (int i = 0; i < m; ++i) {
        if (partner[i] > i) {
            const std::complex<double> gamma = N(i, partner[i]) / M(i, i);
            pairs.emplace_back(i, partner[i], gamma);
        } else if (partner[i] == -1 && M(i, i).real() > 1.0 + 1e-10) {
            throw unsupported_error("build_gaussian_state: stretched mode without a squeezing partner");
        }
    }
    return detail::build_pair_state(pairs, ws);
}

// ------------------------------- field strings -------------------------------

// One interaction-picture field insertion:
//   phi(t) = sum_k ( g_k e^{-i w_k t} a_k + g_k^* e^{+i w_k t} a_k^dag ).
struct FieldOp {
    std::vector<std::complex<double>> g;  // one entry per workspace mode
    double t = 0.0;
};

namespace detail {

// out += (c_lower * a_k + c_raise * a_k^dag) applied to `in` on the
// oscillator block starting at `base`.
inline void accumulate_ladder(const FockWorkspace& ws, int mode, std::complex<double> c_lower,
                              std::complex<double> c_raise, const std::vector<double>& sq,
                              const Eigen::VectorXcd& in, std::size_t base, Eigen::VectorXcd& out) {
    const std::size_t osc = ws.osc_dim();
    const std::size_t stride = ws.stride(mode);
    const int L = ws.levels();
    for (std::size_t idx = 0; idx < osc; ++idx) {
        const int nk = static_cast<int>((idx / stride) % static_cast<std::size_t>(L));
        std::complex<double> acc(0.0, 0.0);
        if (nk < ws.cutoff) acc += c_lower * sq[static_cast<std::size_t>(nk) + 1] *
                                   in[static_cast<Eigen::Index>(base + idx + stride)];
        if (nk > 0) acc += c_raise * sq[static_cast<std::size_t>(nk)] *
                           in[static_cast<Eigen::Index>(base + idx - stride)];
        out[static_cast<Eigen::Index>(base + idx)] += acc;
    }
}

inline std::vector<double> sqrt_table(int levels) {
    std::vector<double> sq(static_cast<std::size_t>(levels) + 1);
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::sqrt(static_cast<double>(i));
    return sq;
}

} // namespace detail

// out = phi(in) on an oscillator-only vector.
inline void apply_field(const FieldOp& op, const std::vector<double>& omega,
                        const FockWorkspace& ws, const Eigen::VectorXcd& in,
                        Eigen::VectorXcd& out) {
    if (static_cast<int>(op.g.size()) != ws.num_modes ||
        static_cast<int>(omega.size()) != ws.num_modes)
        throw std::invalid_argument("apply_field: coupling/frequency lists must match the workspace");
    out.setZero(in.size());
    const auto sq = detail::sqrt_table(ws.levels());
    for (int k = 0; k < ws.num_modes; ++k) {
        if (op.g[static_cast<std::size_t>(k)] == std::complex<double>(0.0, 0.0)) continue;
        const std::complex<double> g = op.g[static_cast<std::size_t>(k)];
        const std::complex<double> c_lower = g * std::polar(1.0, -omega[static_cast<std::size_t>(k)] * op.t);
        const std::complex<double> c_raise = std::conj(c_lower);
        detail::accumulate_ladder(ws, k, c_lower, c_raise, sq, in, 0, out);
    }
}

// <psi| phi(1) phi(2) ... phi(m) |psi> in string order (rightmost acts first).
inline std::complex<double> fock_moment(const GaussianStateSpec& state,
                                        const std::vector<FieldOp>& fields,
                                        const std::vector<double>& omega,
                                        const FockWorkspace& ws) {
    if (ws.includes_qubit)
        throw std::invalid_argument("fock_moment: use an oscillator-only workspace");
    if (state.required_modes() != 0 && state.required_modes() != ws.num_modes)
        throw std::invalid_argument("fock_moment: state and workspace mode counts differ");
    const Eigen::VectorXcd psi = build_gaussian_state(state, ws);
    Eigen::VectorXcd v = psi;
    Eigen::VectorXcd tmp(v.size());
    for (auto it = fields.rbegin(); it != fields.rend(); ++it) {
        apply_field(*it, omega, ws, v, tmp);
        v.swap(tmp);
    }
    return psi.dot(v);
}

struct MomentOptions {
    int initial_cutoff = 16;
    double rel_tol = 1e-9;  // accepted shift between cutoff c and c+2,
                            // relative to max(1, |moment|)
};

// Escalates the cutoff (doubling, capped by the 2^20 dimension limit) until
// the moment stops moving between cutoff c and c+2.
inline std::complex<double> fock_moment_converged(const GaussianStateSpec& state,
                                                  const std::vector<FieldOp>& fields,
                                                  const std::vector<double>& omega,
                                                  const MomentOptions& opts = {}) {
    const int num_modes = static_cast<int>(omega.size());
    const int cmax = detail::max_comparison_cutoff(num_modes, false);
    if (cmax < 1) throw convergence_error("fock_moment_converged: workspace cannot fit this mode count");
    int c = std::min(opts.initial_cutoff, cmax);
    for (;;) {
        FockWorkspace ws1{num_modes, c, false};
        FockWorkspace ws2{num_modes, c + 2, false};
        const auto m1 = fock_moment(state, fields, omega, ws1);
        const auto m2 = fock_moment(state, fields, omega, ws2);
        if (std::abs(m1 - m2) <= opts.rel_tol * std::max(1.0, std::abs(m2))) return m2;
        if (c >= cmax)
            throw convergence_error("fock_moment_converged: cutoff " + std::to_string(c) +
                                    " still shifting at the dimension cap");
        c = std::min(2 * c, cmax);
    }
}

// --------------------------- dephasing simulation ----------------------------

struct SimulateOptions {
    int initial_cutoff = 16;
    double tol = 1e-8;        // accepted P shift between cutoff c and c+2
    int dense_dim_max = 1024; // above this, evolve matrix-free
};

namespace detail {

// H = sum_k w_k n_k + sigma_z (x) sum_k (g_k a_k + g_k^* a_k^dag), qubit bit
// slowest; basis state |q=0> carries sigma_z = +1.
struct DephasingHamiltonian {
    FockWorkspace ws;
    std::vector<double> omega;
    std::vector<std::complex<double>> g;
    std::vector<double> energy;  // oscillator index -> sum_k w_k n_k
    std::vector<double> sq;

    DephasingHamiltonian(FockWorkspace w, std::vector<double> om,
                         std::vector<std::complex<double>> gg)
        : ws(w), omega(std::move(om)), g(std::move(gg)), sq(sqrt_table(ws.levels())) {
        const std::size_t osc = ws.osc_dim();
        energy.assign(osc, 0.0);
        for (int k = 0; k < ws.num_modes; ++k) {
            const std::size_t stride = ws.stride(k);
            const int L = ws.levels();
            for (std::size_t idx = 0; idx < osc; ++idx)
                energy[idx] += omega[static_cast<std::size_t>(k)] *
                               static_cast<double>((idx / stride) % static_cast<std::size_t>(L));
        }
    }

    void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
        const std::size_t osc = ws.osc_dim();
        out.resize(in.size());
        for (int q = 0; q < 2; ++q) {
            const std::size_t base = static_cast<std::size_t>(q) * osc;
            const double sign = (q == 0) ? 1.0 : -1.0;
            for (std::size_t idx = 0; idx < osc; ++idx)
                out[static_cast<Eigen::Index>(base + idx)] =
                    energy[idx] * in[static_cast<Eigen::Index>(base + idx)];
            for (int k = 0; k < ws.num_modes; ++k) {
                if (g[static_cast<std::size_t>(k)] == std::complex<double>(0.0, 0.0)) continue;
                accumulate_ladder(ws, k, sign * g[static_cast<std::size_t>(k)],
                                  sign * std::conj(g[static_cast<std::size_t>(k)]), sq, in, base, out);
            }
        }
    }

    double norm_bound() const {
        double diag = 0.0, coup = 0.0;
        for (int k = 0; k < ws.num_modes; ++k) {
            diag += omega[static_cast<std::size_t>(k)] * ws.cutoff;
            coup += 2.0 * std::abs(g[static_cast<std::size_t>(k)]) * sq[static_cast<std::size_t>(ws.levels())];
        }
        return diag + coup;
    }
};

// Time stepping with a Taylor series per step, the step count set so
// ||H|| dt <= 2 (each step is then the exponential to machine precision).
inline Eigen::VectorXcd evolve_taylor(const DephasingHamiltonian& H, Eigen::VectorXcd psi,
                                      double T, int steps) {
    const double dt = T / steps;
    Eigen::VectorXcd term = psi, tmp(psi.size());
    for (int s = 0; s < steps; ++s) {
        term = psi;
        for (int k = 1; k <= 400; ++k) {
            H.apply(term, tmp);
            term = tmp * (std::complex<double>(0.0, -dt) / static_cast<double>(k));
            psi += term;
            if (term.norm() <= 1e-16 * psi.norm()) break;
        }
    }
    return psi;
}

inline Eigen::VectorXcd evolve_state(const DephasingHamiltonian& H, const Eigen::VectorXcd& psi0,
                                     double T, int dense_dim_max) {
    const auto dim = psi0.size();
    if (dim <= dense_dim_max) {
        Eigen::MatrixXcd Hm(dim, dim);
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim), col(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            e[j] = 1.0;
            H.apply(e, col);
            Hm.col(j) = col;
            e[j] = 0.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hm);
        const Eigen::VectorXcd phases =
            (es.eigenvalues().array().cast<std::complex<double>>() * std::complex<double>(0.0, -T))
                .exp()
                .matrix();
        return es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi0));
    }
    int steps = std::max(1, static_cast<int>(std::ceil(H.norm_bound() * T / 2.0)));
    Eigen::VectorXcd a = evolve_taylor(H, psi0, T, steps);
    Eigen::VectorXcd b = evolve_taylor(H, psi0, T, 2 * steps);
    if ((a - b).norm() > 1e-10 * b.norm()) {
        a = evolve_taylor(H, psi0, T, 4 * steps);
        if ((a - b).norm() > 1e-10 * a.norm())
            throw convergence_error("evolve_state: time stepping did not converge");
        return a;
    }
    return b;
}

inline double dephasing_flip_probability(const std::vector<BathMode>& modes,
                                         std::optional<double> beta, double T, int cutoff,
                                         int dense_dim_max) {
    const int m = static_cast<int>(modes.size());
    const int ws_modes = beta ? 2 * m : m;
    FockWorkspace ws{ws_modes, cutoff, true};
    ws.validate();

    std::vector<double> omega(static_cast<std::size_t>(ws_modes));
    std::vector<std::complex<double>> g(static_cast<std::size_t>(ws_modes),
                                        std::complex<double>(0.0, 0.0));
    for (int k = 0; k < m; ++k) {
        omega[static_cast<std::size_t>(k)] = modes[static_cast<std::size_t>(k)].frequency;
        g[static_cast<std::size_t>(k)] = modes[static_cast<std::size_t>(k)].coupling;
        if (beta) omega[static_cast<std::size_t>(m + k)] = modes[static_cast<std::size_t>(k)].frequency;
    }

    GaussianStateSpec state = GaussianStateSpec::vacuum();
    if (beta) {
        std::vector<double> freqs(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) freqs[static_cast<std::size_t>(k)] = modes[static_cast<std::size_t>(k)].frequency;
        state = GaussianStateSpec::thermal(*beta, std::move(freqs));
    }

    FockWorkspace osc_ws{ws_modes, cutoff, false};
    const Eigen::VectorXcd chi = build_gaussian_state(state, osc_ws);
    const std::size_t osc = osc_ws.osc_dim();
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(2 * osc));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < osc; ++i) {
        psi0[static_cast<Eigen::Index>(i)] = inv_sqrt2 * chi[static_cast<Eigen::Index>(i)];
        psi0[static_cast<Eigen::Index>(osc + i)] = inv_sqrt2 * chi[static_cast<Eigen::Index>(i)];
    }

    const DephasingHamiltonian H(ws, std::move(omega), std::move(g));
    const Eigen::VectorXcd psiT = evolve_state(H, psi0, T, dense_dim_max);

    double p = 0.0;
    for (std::size_t i = 0; i < osc; ++i) {
        const std::complex<double> amp = psiT[static_cast<Eigen::Index>(i)] -
                                         psiT[static_cast<Eigen::Index>(osc + i)];
        p += 0.5 * std::norm(amp);
    }
    return p;
}

} // namespace detail

// Prepare the qubit in the +1 eigenstate of sigma_x against a vacuum (or
// purified thermal) bath, evolve exactly under
// H = H_B + sigma_z (x) sum_k (g_k a_k + g_k^* a_k^dag) for time T, and return
// the probability of finding sigma_x = -1. Escalates the cutoff until the
// probability stops moving between cutoff c and c+2.
inline double simulate_dephasing(const std::vector<BathMode>& modes, std::optional<double> beta,
                                 double T, const SimulateOptions& opts = {}) {
    if (!(T >= 0.0)) throw std::domain_error("simulate_dephasing: time must be nonnegative");
    if (modes.empty() || T == 0.0) return 0.0;
    const int ws_modes = beta ? 2 * static_cast<int>(modes.size()) : static_cast<int>(modes.size());
    const int cmax = detail::max_comparison_cutoff(ws_modes, true);
    if (cmax < 1) throw convergence_error("simulate_dephasing: workspace cannot fit this mode count");
    int c = std::min(opts.initial_cutoff, cmax);
    for (;;) {
        const double p1 = detail::dephasing_flip_probability(modes, beta, T, c, opts.dense_dim_max);
        const double p2 = detail::dephasing_flip_probability(modes, beta, T, c + 2, opts.dense_dim_max);
        if (std::abs(p1 - p2) <= opts.tol) return p2;
        if (c >= cmax)
            throw convergence_error("simulate_dephasing: cutoff " + std::to_string(c) +
                                    " still shifting at the dimension cap");
        c = std::min(2 * c, cmax);
    }
}

} // namespace gnt::fock
