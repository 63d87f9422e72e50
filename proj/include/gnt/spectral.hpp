// spectral.hpp — noise power spectra: Ohmic closed form, discrete oscillator
// modes, and tabulated grids, with optional inverse temperature

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "gnt/json_util.hpp"

namespace gnt {

// Ohmic spectrum: linear in frequency with exponential cutoff,
//   spectrum(w) = 2*pi*A*w*exp(-w*tau_c) for w >= 0, zero for w < 0,
// at zero temperature. With a finite beta the same J(w) = A*w*exp(-w*tau_c)
// enters through the thermal coth factors.
struct OhmicSpectrum {
    double amplitude = 0.0;    // A, dimensionless
    double cutoff_time = 1.0;  // tau_c > 0
};

struct BathMode {
    std::complex<double> coupling;  // g_k
    double frequency = 0.0;         // omega_k > 0
};

struct DiscreteModes {
    std::vector<BathMode> modes;
};

// Tabulated power spectrum on a strictly increasing grid; linearly
// interpolated, zero outside the grid.
struct TabulatedSpectrum {
    std::vector<double> omega;
    std::vector<double> value;
};

class SpectralDensity {
public:
    using Kind = std::variant<OhmicSpectrum, DiscreteModes, TabulatedSpectrum>;

    static SpectralDensity ohmic(double amplitude, double cutoff_time,
                                 std::optional<double> beta = std::nullopt) {
        if (!(cutoff_time > 0.0))
            throw std::invalid_argument("SpectralDensity: cutoff time must be positive");
        if (!(amplitude >= 0.0))
            throw std::invalid_argument("SpectralDensity: Ohmic amplitude must be nonnegative");
        return SpectralDensity(OhmicSpectrum{amplitude, cutoff_time}, beta);
    }

    static SpectralDensity modes(std::vector<BathMode> modes,
                                 std::optional<double> beta = std::nullopt) {
        for (const auto& m : modes)
            if (!(m.frequency > 0.0) || !std::isfinite(m.frequency))
                throw std::invalid_argument("SpectralDensity: mode frequencies must be positive");
        return SpectralDensity(DiscreteModes{std::move(modes)}, beta);
    }

    static SpectralDensity tabulated(std::vector<double> omega, std::vector<double> value) {
        if (omega.size() != value.size() || omega.size() < 2)
            throw std::invalid_argument("SpectralDensity: tabulated grid needs matching arrays of size >= 2");
        for (std::size_t i = 0; i + 1 < omega.size(); ++i)
            if (!(omega[i] < omega[i + 1]))
                throw std::invalid_argument("SpectralDensity: tabulated grid must be strictly increasing");
        for (double v : value)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("SpectralDensity: a power spectrum is nonnegative");
        return SpectralDensity(TabulatedSpectrum{std::move(omega), std::move(value)}, std::nullopt);
    }

    const Kind& kind() const noexcept { return kind_; }
    std::optional<double> beta() const noexcept { return beta_; }
    bool zero_temperature() const noexcept { return !beta_.has_value(); }

private:
    SpectralDensity(Kind kind, std::optional<double> beta)
        : kind_(std::move(kind)), beta_(beta) {
        if (beta_ && !(*beta_ > 0.0))
            throw std::invalid_argument("SpectralDensity: inverse temperature must be positive");
    }

    Kind kind_;
    std::optional<double> beta_;
};

inline double coth(double x) { return 1.0 / std::tanh(x); }

// Finite-temperature spectrum built from J(w) defined on w > 0:
//   pi*J(w)*(coth(beta*w/2)+1)   for w > 0,
//   pi*J(|w|)*(coth(beta*|w|/2)-1) for w < 0  (detailed balance),
// with the w = 0 symmetric limit (2*pi/beta)*lim J(w)/w probed numerically.
inline double thermal_spectrum(const std::function<double(double)>& J, double beta,
                               double omega) {
    if (!(beta > 0.0)) throw std::domain_error("thermal_spectrum: beta must be positive");
    const double pi = std::numbers::pi;
    if (omega > 0.0) return pi * J(omega) * (coth(0.5 * beta * omega) + 1.0);
    if (omega < 0.0) return pi * J(-omega) * (coth(-0.5 * beta * omega) - 1.0);

    const double eps = 1e-6 / beta;
    const double r1 = J(eps) / eps;
    const double r2 = J(0.5 * eps) / (0.5 * eps);
    const double r3 = J(0.25 * eps) / (0.25 * eps);
    if (!std::isfinite(r3) || (r2 > r1 * 1.02 && r3 > r2 * 1.02))
        throw std::domain_error("thermal_spectrum: J(0+) decays slower than omega; the zero-frequency limit diverges");
    return (2.0 * pi / beta) * r3;
}

inline double thermal_spectrum(const TabulatedSpectrum& J, double beta, double omega) {
    auto interp = [&J](double w) -> double {
        if (w <= J.omega.front() || w >= J.omega.back()) {
            if (w == J.omega.front()) return J.value.front();
            if (w == J.omega.back()) return J.value.back();
            return 0.0;
        }
        auto it = std::upper_bound(J.omega.begin(), J.omega.end(), w);
        const std::size_t i = static_cast<std::size_t>(it - J.omega.begin());
        const double f = (w - J.omega[i - 1]) / (J.omega[i] - J.omega[i - 1]);
        return J.value[i - 1] + f * (J.value[i] - J.value[i - 1]);
    };
    return thermal_spectrum(std::function<double(double)>(interp), beta, omega);
}

namespace detail {

inline double tabulated_at(const TabulatedSpectrum& t, double omega) {
    if (omega < t.omega.front() || omega > t.omega.back()) return 0.0;
    auto it = std::upper_bound(t.omega.begin(), t.omega.end(), omega);
    if (it == t.omega.end()) return t.value.back();
    if (it == t.omega.begin()) return t.value.front();
    const std::size_t i = static_cast<std::size_t>(it - t.omega.begin());
    const double f = (omega - t.omega[i - 1]) / (t.omega[i] - t.omega[i - 1]);
    return t.value[i - 1] + f * (t.value[i] - t.value[i - 1]);
}

} // namespace detail

// Pointwise spectrum value. Discrete modes are a sum of delta functions and
// have no pointwise value; they are handled in closed form by the callers.
inline double spectrum_at(const SpectralDensity& spec, double omega) {
    if (const auto* oh = std::get_if<OhmicSpectrum>(&spec.kind())) {
        if (spec.zero_temperature())
            return omega >= 0.0
                       ? 2.0 * std::numbers::pi * oh->amplitude * omega * std::exp(-omega * oh->cutoff_time)
                       : 0.0;
        const double A = oh->amplitude, tc = oh->cutoff_time;
        auto J = [A, tc](double w) { return A * w * std::exp(-w * tc); };
        return thermal_spectrum(std::function<double(double)>(J), *spec.beta(), omega);
    }
    if (const auto* tab = std::get_if<TabulatedSpectrum>(&spec.kind()))
        return detail::tabulated_at(*tab, omega);
    throw std::invalid_argument("spectrum_at: discrete modes have a singular spectrum");
}

// Frequency span [lo, hi] outside which the spectrum is negligible (Ohmic:
// the integrand is below 1e-15 of its peak past 40/tau_c).
inline std::pair<double, double> spectrum_support(const SpectralDensity& spec) {
    if (const auto* oh = std::get_if<OhmicSpectrum>(&spec.kind())) {
        const double hi = 40.0 / oh->cutoff_time;
        return {spec.zero_temperature() ? 0.0 : -hi, hi};
    }
    if (const auto* tab = std::get_if<TabulatedSpectrum>(&spec.kind()))
        return {tab->omega.front(), tab->omega.back()};
    throw std::invalid_argument("spectrum_support: discrete modes have a singular spectrum");
}

// A time scale for default output grids: the Ohmic cutoff time, the slowest
// mode period, or the inverse grid span.
inline double characteristic_time(const SpectralDensity& spec) {
    if (const auto* oh = std::get_if<OhmicSpectrum>(&spec.kind())) return oh->cutoff_time;
    if (const auto* dm = std::get_if<DiscreteModes>(&spec.kind())) {
        double wmin = 0.0;
        for (const auto& m : dm->modes)
            if (wmin == 0.0 || m.frequency < wmin) wmin = m.frequency;
        return wmin > 0.0 ? 2.0 * std::numbers::pi / wmin : 1.0;
    }
    const auto& tab = std::get<TabulatedSpectrum>(spec.kind());
    const double span = tab.omega.back() - tab.omega.front();
    return span > 0.0 ? 2.0 * std::numbers::pi / span : 1.0;
}

// ---------------------------- JSON interface --------------------------------
// {"kind":"ohmic","A":..,"tau_c":..,"beta":..?} |
// {"kind":"modes","modes":[[g,omega],...],"beta":..?} |
// {"kind":"table","omega":[...],"value":[...]}

inline SpectralDensity spectral_density_from_json(const nlohmann::json& j,
                                                  const std::string& ptr = "/spectrum") {
    using namespace jsonu;
    const std::string kind = get_string(j, "kind", ptr);
    if (kind == "ohmic") {
        reject_unknown_keys(j, {"kind", "A", "tau_c", "beta"}, ptr);
        std::optional<double> beta;
        if (j.contains("beta")) beta = get_number(j, "beta", ptr);
        return SpectralDensity::ohmic(get_number(j, "A", ptr), get_number(j, "tau_c", ptr), beta);
    }
    if (kind == "modes") {
        reject_unknown_keys(j, {"kind", "modes", "beta"}, ptr);
        const auto& arr = require_key(j, "modes", ptr);
        if (!arr.is_array()) throw config_error("\"modes\" must be an array of [g, omega] pairs", ptr + "/modes");
        std::vector<BathMode> modes;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto& m = arr[i];
            if (!m.is_array() || m.size() != 2 || !m[0].is_number() || !m[1].is_number())
                throw config_error("each mode must be a [g, omega] pair", ptr + "/modes/" + std::to_string(i));
            modes.push_back({std::complex<double>(m[0].get<double>(), 0.0), m[1].get<double>()});
        }
        std::optional<double> beta;
        if (j.contains("beta")) beta = get_number(j, "beta", ptr);
        return SpectralDensity::modes(std::move(modes), beta);
    }
    if (kind == "table") {
        reject_unknown_keys(j, {"kind", "omega", "value"}, ptr);
        const auto& w = require_key(j, "omega", ptr);
        const auto& v = require_key(j, "value", ptr);
        if (!w.is_array() || !v.is_array())
            throw config_error("\"omega\" and \"value\" must be arrays", ptr);
        return SpectralDensity::tabulated(w.get<std::vector<double>>(), v.get<std::vector<double>>());
    }
    throw config_error("unknown spectrum kind \"" + kind + "\"", ptr + "/kind");
}

inline nlohmann::json to_json(const SpectralDensity& spec) {
    nlohmann::json j;
    if (const auto* oh = std::get_if<OhmicSpectrum>(&spec.kind())) {
        j["kind"] = "ohmic";
        j["A"] = oh->amplitude;
        j["tau_c"] = oh->cutoff_time;
    } else if (const auto* dm = std::get_if<DiscreteModes>(&spec.kind())) {
        j["kind"] = "modes";
        auto arr = nlohmann::json::array();
        for (const auto& m : dm->modes) arr.push_back({m.coupling.real(), m.frequency});
        j["modes"] = std::move(arr);
    } else {
        const auto& tab = std::get<TabulatedSpectrum>(spec.kind());
        j["kind"] = "table";
        j["omega"] = tab.omega;
        j["value"] = tab.value;
    }
    if (spec.beta()) j["beta"] = *spec.beta();
    return j;
}

} // namespace gnt
