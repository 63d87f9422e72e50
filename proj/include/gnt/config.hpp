// config.hpp — batch-run configuration: strict JSON parsing (unknown keys
// rejected, errors carry JSON pointers) for the CLI subcommands

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gnt/correlation.hpp"
#include "gnt/geometry.hpp"
#include "gnt/json_util.hpp"
#include "gnt/spectral.hpp"
#include "gnt/strength.hpp"
#include "gnt/threshold.hpp"

namespace gnt {

struct CorrelationOptions {
    SpatialStructure structure = SpatialStructure::Uncorrelated;
    int n_pol = 1;
};

struct DephasingConfig {
    std::vector<int> n;                    // repetition-code lengths (odd)
    std::optional<double> t0_over_tauc;    // Ohmic gadget mode
    std::optional<double> T;               // plain exponent mode
};

struct LevelsConfig {
    std::optional<double> epsilon;
    std::optional<double> epsilon0;
    int s = 2;
    int k_max = 10;
};

struct OverheadConfig {
    double num_gates = 1.0;  // L
    double delta = 0.5;
    double c = 1.0;
};

struct GridConfig {
    std::optional<double> t_max;
    int points = 201;
};

struct OutputConfig {
    std::string path;
    std::string format;  // "csv" | "json"
};

struct RunConfig {
    std::optional<SpectralDensity> spectrum;
    std::optional<Schedule> schedule;
    CorrelationOptions correlation;
    NoiseModel model = NoiseModel::Gaussian;
    std::optional<GadgetCounts> gadget_counts;
    std::optional<DephasingConfig> dephasing;
    std::optional<LevelsConfig> levels;
    std::optional<OverheadConfig> overhead;
    GridConfig grid;
    std::optional<double> norm_max;       // short-range model input
    std::optional<double> row_sum_norm;   // long-range model input
    std::optional<double> epsilon;        // explicit noise strength (threshold/report)
    std::optional<OutputConfig> output;

    static RunConfig parse(const nlohmann::json& j, const std::string& subcommand);
};

namespace detail_config {

using nlohmann::json;

inline NoiseModel parse_model(const std::string& name, const std::string& ptr) {
    if (name == "gaussian") return NoiseModel::Gaussian;
    if (name == "short_range") return NoiseModel::ShortRange;
    if (name == "long_range") return NoiseModel::LongRange;
    if (name == "almost_markovian") return NoiseModel::AlmostMarkovian;
    if (name == "ohmic_closed") return NoiseModel::OhmicClosed;
    throw config_error("unknown model \"" + name + "\"", ptr);
}

inline std::string model_name(NoiseModel m) {
    switch (m) {
        case NoiseModel::Gaussian: return "gaussian";
        case NoiseModel::ShortRange: return "short_range";
        case NoiseModel::LongRange: return "long_range";
        case NoiseModel::AlmostMarkovian: return "almost_markovian";
        case NoiseModel::OhmicClosed: return "ohmic_closed";
    }
    return "gaussian";
}

inline CorrelationOptions parse_correlation(const json& j) {
    using namespace jsonu;
    const std::string ptr = "/correlation";
    reject_unknown_keys(j, {"structure", "n_pol"}, ptr);
    CorrelationOptions opts;
    if (j.contains("structure")) {
        const std::string s = get_string(j, "structure", ptr);
        if (s == "uncorrelated") opts.structure = SpatialStructure::Uncorrelated;
        else if (s == "shared") opts.structure = SpatialStructure::Shared;
        else throw config_error("structure must be \"uncorrelated\" or \"shared\"", ptr + "/structure");
    }
    if (j.contains("n_pol")) {
        opts.n_pol = static_cast<int>(get_integer(j, "n_pol", ptr));
        if (opts.n_pol != 1 && opts.n_pol != 3)
            throw config_error("n_pol must be 1 or 3", ptr + "/n_pol");
    }
    return opts;
}

inline GadgetCounts parse_counts(const json& j) {
    using namespace jsonu;
    const std::string ptr = "/gadget_counts";
    reject_unknown_keys(j, {"A_loc", "s", "B_mal", "C_prep", "D_trip", "zeta"}, ptr);
    GadgetCounts c;
    c.A_loc = static_cast<int>(get_integer(j, "A_loc", ptr));
    c.s = static_cast<int>(get_integer(j, "s", ptr));
    c.B_mal = get_number_or(j, "B_mal", 0.0, ptr);
    c.C_prep = get_number_or(j, "C_prep", 0.0, ptr);
    c.D_trip = get_number_or(j, "D_trip", 0.0, ptr);
    c.zeta = get_number_or(j, "zeta", 1.0, ptr);
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what(), ptr);
    }
    return c;
}

inline DephasingConfig parse_dephasing(const json& j) {
    using namespace jsonu;
    const std::string ptr = "/dephasing";
    reject_unknown_keys(j, {"n", "t0_over_tauc", "T"}, ptr);
    DephasingConfig d;
    if (j.contains("n")) {
        const json& n = j.at("n");
        if (n.is_number_integer()) d.n.push_back(n.get<int>());
        else if (n.is_array()) {
            for (const auto& v : n) {
                if (!v.is_number_integer()) throw config_error("n must hold integers", ptr + "/n");
                d.n.push_back(v.get<int>());
            }
        } else throw config_error("n must be an integer or an array of integers", ptr + "/n");
    }
    if (j.contains("t0_over_tauc")) d.t0_over_tauc = get_number(j, "t0_over_tauc", ptr);
    if (j.contains("T")) d.T = get_number(j, "T", ptr);
    if (d.t0_over_tauc.has_value() == d.T.has_value())
        throw config_error("give exactly one of t0_over_tauc or T", ptr);
    if (d.t0_over_tauc && d.n.empty())
        throw config_error("the gadget mode needs repetition lengths n", ptr);
    return d;
}

inline LevelsConfig parse_levels(const json& j, bool require_strengths) {
    using namespace jsonu;
    const std::string ptr = "/levels";
    reject_unknown_keys(j, {"epsilon", "epsilon0", "s", "k_max"}, ptr);
    LevelsConfig l;
    if (j.contains("epsilon")) l.epsilon = get_number(j, "epsilon", ptr);
    if (j.contains("epsilon0")) l.epsilon0 = get_number(j, "epsilon0", ptr);
    l.s = static_cast<int>(get_number_or(j, "s", 2.0, ptr));
    l.k_max = static_cast<int>(get_number_or(j, "k_max", 10.0, ptr));
    if (require_strengths && (!l.epsilon || !l.epsilon0))
        throw config_error("levels needs epsilon and epsilon0", ptr);
    return l;
}

inline OverheadConfig parse_overhead(const json& j) {
    using namespace jsonu;
    const std::string ptr = "/overhead";
    reject_unknown_keys(j, {"L", "delta", "c"}, ptr);
    OverheadConfig o;
    o.num_gates = get_number(j, "L", ptr);
    o.delta = get_number(j, "delta", ptr);
    o.c = get_number(j, "c", ptr);
    return o;
}

inline GridConfig parse_grid(const json& j) {
    using namespace jsonu;
    const std::string ptr = "/grid";
    reject_unknown_keys(j, {"t_max", "points"}, ptr);
    GridConfig g;
    if (j.contains("t_max")) g.t_max = get_number(j, "t_max", ptr);
    g.points = static_cast<int>(get_number_or(j, "points", 201.0, ptr));
    if (g.points < 2) throw config_error("grid needs at least 2 points", ptr + "/points");
    return g;
}

inline OutputConfig parse_output(const json& j) {
    using namespace jsonu;
    const std::string ptr = "/output";
    reject_unknown_keys(j, {"path", "format"}, ptr);
    OutputConfig o;
    o.path = get_string(j, "path", ptr);
    o.format = j.contains("format") ? get_string(j, "format", ptr) : "csv";
    if (o.format != "csv" && o.format != "json")
        throw config_error("format must be \"csv\" or \"json\"", ptr + "/format");
    return o;
}

} // namespace detail_config

inline RunConfig RunConfig::parse(const nlohmann::json& j, const std::string& subcommand) {
    using namespace jsonu;
    using namespace detail_config;

    RunConfig cfg;
    auto allow = [&j](std::initializer_list<const char*> keys) {
        reject_unknown_keys(j, keys, "");
    };

    if (subcommand == "spectrum") {
        allow({"spectrum", "grid", "output"});
    } else if (subcommand == "strength") {
        allow({"spectrum", "schedule", "correlation", "model", "norms", "output"});
    } else if (subcommand == "levels") {
        allow({"levels", "output"});
    } else if (subcommand == "threshold") {
        allow({"gadget_counts", "epsilon", "output"});
    } else if (subcommand == "dephasing") {
        allow({"spectrum", "dephasing", "output"});
    } else if (subcommand == "verify") {
        allow({"output"});
    } else if (subcommand == "report") {
        allow({"spectrum", "schedule", "correlation", "model", "norms", "gadget_counts",
               "levels", "overhead", "output"});
    } else {
        throw config_error("unknown subcommand \"" + subcommand + "\"", "");
    }

    if (j.contains("spectrum")) cfg.spectrum = spectral_density_from_json(j.at("spectrum"));
    if (j.contains("schedule")) cfg.schedule = schedule_from_json(j.at("schedule"));
    if (j.contains("correlation")) cfg.correlation = parse_correlation(j.at("correlation"));
    if (j.contains("model"))
        cfg.model = parse_model(get_string(j, "model", ""), "/model");
    if (j.contains("gadget_counts")) cfg.gadget_counts = parse_counts(j.at("gadget_counts"));
    if (j.contains("dephasing")) cfg.dephasing = parse_dephasing(j.at("dephasing"));
    if (j.contains("levels")) cfg.levels = parse_levels(j.at("levels"), subcommand == "levels");
    if (j.contains("overhead")) cfg.overhead = parse_overhead(j.at("overhead"));
    if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"));
    if (j.contains("epsilon")) cfg.epsilon = get_number(j, "epsilon", "");
    if (j.contains("norms")) {
        reject_unknown_keys(j.at("norms"), {"norm_max", "row_sum_norm"}, "/norms");
        if (j.at("norms").contains("norm_max"))
            cfg.norm_max = get_number(j.at("norms"), "norm_max", "/norms");
        if (j.at("norms").contains("row_sum_norm"))
            cfg.row_sum_norm = get_number(j.at("norms"), "row_sum_norm", "/norms");
    }
    if (j.contains("output")) cfg.output = parse_output(j.at("output"));

    // presence requirements per subcommand
    auto need = [&](bool ok, const char* what) {
        if (!ok) throw config_error(std::string("this subcommand needs ") + what, "");
    };
    if (subcommand == "spectrum") need(cfg.spectrum.has_value(), "a \"spectrum\" section");
    if (subcommand == "strength" || subcommand == "report") {
        need(cfg.schedule.has_value(), "a \"schedule\" section");
        if (cfg.model == NoiseModel::ShortRange) need(cfg.norm_max.has_value(), "norms.norm_max");
        else if (cfg.model == NoiseModel::LongRange) need(cfg.row_sum_norm.has_value(), "norms.row_sum_norm");
        else need(cfg.spectrum.has_value(), "a \"spectrum\" section");
    }
    if (subcommand == "levels") need(cfg.levels.has_value(), "a \"levels\" section");
    if (subcommand == "threshold") need(cfg.gadget_counts.has_value(), "a \"gadget_counts\" section");
    if (subcommand == "dephasing") {
        need(cfg.spectrum.has_value(), "a \"spectrum\" section");
        need(cfg.dephasing.has_value(), "a \"dephasing\" section");
    }
    return cfg;
}

} // namespace gnt
