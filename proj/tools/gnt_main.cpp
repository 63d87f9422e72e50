// gnt_main.cpp — batch CLI: loads a JSON config, dispatches to the library,
// and emits deterministic CSV/JSON reports plus optional SVG plots

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "gnt/gnt.hpp"

namespace {

using gnt::RunConfig;
using nlohmann::ordered_json;

// Exit codes: 0 success, 1 unexpected, 2 config, 3 domain, 4 numeric/convergence,
// 5 unsupported feature, 6 I/O.
enum ExitCode : int {
    kOk = 0,
    kUnexpected = 1,
    kConfig = 2,
    kDomain = 3,
    kNumeric = 4,
    kUnsupported = 5,
    kIo = 6
};

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string format;  // overrides config when set
    std::string plot_path;
    double tol = 0.0;
    bool logx = false;
    bool logy = false;
};

struct Emitted {
    std::string csv;
    ordered_json json;
    std::vector<gnt::plot::Series> series;
    gnt::plot::Options plot_options;
};

double rel_tol(const CommonArgs& args, double fallback) {
    return args.tol > 0.0 ? args.tol : fallback;
}

nlohmann::json load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw gnt::config_error("cannot open config file " + path, "");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw gnt::config_error(std::string("JSON parse error: ") + e.what(), "");
    }
    return j;
}

void emit(const Emitted& result, const RunConfig& cfg, const CommonArgs& args) {
    std::string out_path = args.out_path;
    std::string format = args.format;
    if (cfg.output) {
        if (out_path.empty()) out_path = cfg.output->path;
        if (format.empty()) format = cfg.output->format;
    }
    if (format.empty()) format = "csv";
    if (format != "csv" && format != "json")
        throw gnt::config_error("format must be \"csv\" or \"json\"", "/output/format");

    const std::string payload = format == "csv" ? result.csv : gnt::dump_json(result.json);
    if (out_path.empty())
        std::cout << payload;
    else
        gnt::write_text_file(out_path, payload);

    if (!args.plot_path.empty()) {
        if (result.series.empty())
            throw std::invalid_argument("this subcommand has nothing to plot");
        auto opts = result.plot_options;
        opts.logx = args.logx;
        opts.logy = args.logy;
        gnt::write_text_file(args.plot_path, gnt::plot::render_svg(result.series, opts));
    }
}

// --------------------------------- spectrum ---------------------------------

Emitted run_spectrum(const RunConfig& cfg, const CommonArgs& args) {
    const auto& spec = *cfg.spectrum;
    const double rel = rel_tol(args, 1e-8);
    const double t_max = cfg.grid.t_max.value_or(10.0 * gnt::characteristic_time(spec));
    const int points = cfg.grid.points;

    auto corr = gnt::CorrelationFunction::from_spectrum(spec);
    Emitted out;
    gnt::CsvWriter csv;
    csv.header({"t", "re_delta", "im_delta", "abs_delta"});
    auto samples = ordered_json::array();
    gnt::plot::Series s_re{"Re Delta(t)", {}, {}}, s_im{"Im Delta(t)", {}, {}},
        s_abs{"|Delta(t)|", {}, {}};
    for (int i = 0; i < points; ++i) {
        const double t = t_max * i / (points - 1);
        const std::complex<double> d = std::holds_alternative<gnt::OhmicSpectrum>(spec.kind()) &&
                                               spec.zero_temperature()
                                           ? corr.value(t)
                                           : gnt::correlation_from_spectrum(spec, t, rel);
        csv.row({gnt::format_sci(t), csv.cell(d.real()), csv.cell(d.imag()), csv.cell(std::abs(d))});
        samples.push_back({{"t", t}, {"re", d.real()}, {"im", d.imag()}, {"abs", std::abs(d)}});
        s_re.x.push_back(t);
        s_re.y.push_back(d.real());
        s_im.x.push_back(t);
        s_im.y.push_back(d.imag());
        s_abs.x.push_back(t);
        s_abs.y.push_back(std::abs(d));
    }
    out.csv = csv.str();
    out.json["spectrum"] = gnt::to_json(spec);
    out.json["samples"] = std::move(samples);
    out.series = {s_re, s_im, s_abs};
    out.plot_options.title = "bath correlation function";
    out.plot_options.xlabel = "t";
    return out;
}

// --------------------------------- strength ---------------------------------

gnt::StrengthReport compute_strength(const RunConfig& cfg, double rel) {
    using gnt::NoiseModel;
    const double t0 = cfg.schedule->gate_time();
    const int np2 = cfg.correlation.n_pol * cfg.correlation.n_pol;

    switch (cfg.model) {
        case NoiseModel::Gaussian: {
            auto corr = gnt::CorrelationFunction::from_spectrum(*cfg.spectrum,
                                                                cfg.correlation.structure,
                                                                cfg.correlation.n_pol);
            return gnt::evaluate_gaussian(*cfg.schedule, corr, rel);
        }
        case NoiseModel::OhmicClosed: {
            const auto* oh = std::get_if<gnt::OhmicSpectrum>(&cfg.spectrum->kind());
            if (!oh || !cfg.spectrum->zero_temperature())
                throw std::domain_error("ohmic_closed model needs a zero-temperature Ohmic spectrum");
            // single-location closed form: E = n_pol^2 * pi A t0 / tau_c
            gnt::StrengthReport r = gnt::gaussian_epsilon(
                np2 * std::numbers::pi * oh->amplitude * t0 / oh->cutoff_time);
            r.model = NoiseModel::OhmicClosed;
            return r;
        }
        case NoiseModel::AlmostMarkovian: {
            const auto* oh = std::get_if<gnt::OhmicSpectrum>(&cfg.spectrum->kind());
            if (!oh || !cfg.spectrum->zero_temperature())
                throw std::domain_error("almost_markovian rate needs an integrable |Delta|; "
                                        "only the zero-temperature Ohmic closed form is supported");
            const double gamma = np2 * std::numbers::pi * oh->amplitude / oh->cutoff_time;
            gnt::StrengthReport r;
            r.model = NoiseModel::AlmostMarkovian;
            r.E = gamma * t0;                 // error probability per gate
            r.epsilon = std::sqrt(r.E);       // the amplitude is its square root
            r.valid = r.epsilon * r.epsilon <= std::numbers::e;
            return r;
        }
        case NoiseModel::ShortRange: {
            gnt::StrengthReport r;
            r.model = NoiseModel::ShortRange;
            r.epsilon = gnt::short_range_epsilon(*cfg.norm_max, t0);
            r.valid = r.epsilon * r.epsilon <= std::numbers::e;
            return r;
        }
        case NoiseModel::LongRange: {
            gnt::StrengthReport r;
            r.model = NoiseModel::LongRange;
            r.epsilon = gnt::long_range_epsilon(*cfg.row_sum_norm, t0);
            r.valid = r.epsilon * r.epsilon <= std::numbers::e;
            return r;
        }
    }
    throw std::logic_error("unreachable model");
}

ordered_json strength_json(const gnt::StrengthReport& r) {
    ordered_json j;
    j["model"] = gnt::detail_config::model_name(r.model);
    j["E"] = r.E;
    j["epsilon"] = r.epsilon;
    j["valid"] = r.valid;
    j["argmax_location"] = r.argmax_location;
    return j;
}

Emitted run_strength(const RunConfig& cfg, const CommonArgs& args) {
    const auto r = compute_strength(cfg, rel_tol(args, 1e-7));
    Emitted out;
    gnt::CsvWriter csv;
    csv.header({"model", "E", "epsilon", "valid", "argmax_location"});
    csv.row({gnt::detail_config::model_name(r.model), csv.cell(r.E), csv.cell(r.epsilon),
             r.valid ? "true" : "false", std::to_string(r.argmax_location)});
    out.csv = csv.str();
    out.json = strength_json(r);
    return out;
}

// ---------------------------------- levels ----------------------------------

Emitted run_levels(const RunConfig& cfg, const CommonArgs&) {
    const auto& l = *cfg.levels;
    const auto trace = gnt::level_reduce(*l.epsilon, *l.epsilon0, l.s, l.k_max);
    Emitted out;
    gnt::CsvWriter csv;
    csv.header({"k", "epsilon_k"});
    gnt::plot::Series series{"epsilon^(k)", {}, {}};
    for (std::size_t k = 0; k < trace.per_level.size(); ++k) {
        csv.row({std::to_string(k), csv.cell(trace.per_level[k])});
        series.x.push_back(static_cast<double>(k));
        series.y.push_back(trace.per_level[k]);
    }
    out.csv = csv.str();
    out.json["epsilon"] = trace.epsilon;
    out.json["epsilon0"] = trace.epsilon0;
    out.json["s"] = trace.s;
    out.json["k_max"] = trace.k_max;
    out.json["per_level"] = trace.per_level;
    out.series = {series};
    out.plot_options.title = "level-reduced noise strength";
    out.plot_options.xlabel = "level k";
    out.plot_options.ylabel = "epsilon^(k)";
    return out;
}

// --------------------------------- threshold --------------------------------

struct ThresholdCandidates {
    double zeta_used = 1.0;
    std::optional<double> combinatoric;
    std::optional<double> malignant;
    std::optional<double> postselect;

    double selected() const {
        if (postselect && *postselect < malignant.value_or(1e300)) return *postselect;
        if (malignant) return *malignant;
        if (combinatoric) return *combinatoric;
        throw std::domain_error("no threshold candidate computable from the given counts");
    }
};

ThresholdCandidates compute_candidates(const gnt::GadgetCounts& counts,
                                       std::optional<double> epsilon) {
    ThresholdCandidates c;
    c.zeta_used = counts.zeta;
    if (c.zeta_used <= 1.0 && epsilon)
        c.zeta_used = gnt::tight_zeta(counts.A_loc, counts.s, *epsilon);
    if (counts.s >= 2)
        c.combinatoric = gnt::threshold_from_counts(counts.A_loc, counts.s, c.zeta_used);
    if (counts.B_mal > 0) {
        c.malignant = gnt::malignant_threshold(counts.B_mal, counts.D_trip);
        c.postselect = gnt::postselect_threshold(counts.B_mal, counts.C_prep, counts.D_trip).epsilon0;
    }
    return c;
}

Emitted run_threshold(const RunConfig& cfg, const CommonArgs&) {
    const auto c = compute_candidates(*cfg.gadget_counts, cfg.epsilon);
    Emitted out;
    gnt::CsvWriter csv;
    csv.header({"eps0_combinatoric", "eps0_malignant", "eps0_postselect", "zeta"});
    auto opt_cell = [&csv](const std::optional<double>& v) {
        return v ? csv.cell(*v) : std::string();
    };
    csv.row({opt_cell(c.combinatoric), opt_cell(c.malignant), opt_cell(c.postselect),
             csv.cell(c.zeta_used)});
    out.csv = csv.str();
    out.json["zeta"] = c.zeta_used;
    if (c.combinatoric) out.json["eps0_combinatoric"] = *c.combinatoric;
    if (c.malignant) out.json["eps0_malignant"] = *c.malignant;
    if (c.postselect) out.json["eps0_postselect"] = *c.postselect;
    return out;
}

// --------------------------------- dephasing --------------------------------

Emitted run_dephasing(const RunConfig& cfg, const CommonArgs& args) {
    const auto& d = *cfg.dephasing;
    Emitted out;
    gnt::CsvWriter csv;

    if (d.t0_over_tauc) {
        const auto* oh = std::get_if<gnt::OhmicSpectrum>(&cfg.spectrum->kind());
        if (!oh) throw std::domain_error("the CNOT gadget bound needs an Ohmic spectrum");
        csv.header({"n", "D", "P_bad", "eps_cnot", "valid"});
        auto rows = ordered_json::array();
        gnt::plot::Series series{"eps_cnot", {}, {}};
        for (int n : d.n) {
            const auto b = gnt::cnot_error_bound(n, oh->amplitude, *d.t0_over_tauc, 1.0);
            const double p_bad = gnt::flip_probabilities(b.D_exp).first;
            csv.row({std::to_string(n), csv.cell(b.D_exp), csv.cell(p_bad), csv.cell(b.eps_cnot),
                     b.valid ? "true" : "false"});
            rows.push_back({{"n", n},
                            {"D", b.D_exp},
                            {"P_bad", p_bad},
                            {"eps_cnot", b.eps_cnot},
                            {"valid", b.valid}});
            series.x.push_back(n);
            series.y.push_back(b.eps_cnot);
        }
        out.json["t0_over_tauc"] = *d.t0_over_tauc;
        out.json["rows"] = std::move(rows);
        out.series = {series};
        out.plot_options.title = "encoded CNOT error bound";
        out.plot_options.xlabel = "repetition length n";
        out.plot_options.ylabel = "eps_cnot";
    } else {
        const double rel = rel_tol(args, 1e-9);
        const auto r = gnt::dephasing_result(*cfg.spectrum, *d.T, rel);
        csv.header({"T", "D", "P_bad", "P_good"});
        csv.row({csv.cell(r.T_elapsed), csv.cell(r.D_exp), csv.cell(r.P_bad), csv.cell(r.P_good)});
        out.json["T"] = r.T_elapsed;
        out.json["D"] = r.D_exp;
        out.json["P_bad"] = r.P_bad;
        out.json["P_good"] = r.P_good;
    }
    out.csv = csv.str();
    return out;
}

// ---------------------------------- verify ----------------------------------

Emitted run_verify() {
    const auto report = gnt::fock::run_oracle_suite();
    Emitted out;
    gnt::CsvWriter csv;
    csv.header({"check", "max_deviation", "tolerance", "status"});
    auto rows = ordered_json::array();
    for (const auto& c : report.checks) {
        csv.row({c.name, csv.cell(c.max_deviation), csv.cell(c.tolerance),
                 c.pass ? "pass" : "fail"});
        rows.push_back({{"check", c.name},
                        {"max_deviation", c.max_deviation},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
    }
    out.csv = csv.str();
    out.json["checks"] = std::move(rows);
    out.json["all_pass"] = report.all_pass();
    if (!report.all_pass())
        throw gnt::numeric_failure("oracle suite reported failing checks", 0.0, 0.0);
    return out;
}

// ---------------------------------- report ----------------------------------

Emitted run_report(const RunConfig& cfg, const CommonArgs& args) {
    const auto strength = compute_strength(cfg, rel_tol(args, 1e-7));

    Emitted out;
    out.json["strength"] = strength_json(strength);
    gnt::CsvWriter csv;
    csv.header({"key", "value"});
    csv.row({"model", gnt::detail_config::model_name(strength.model)});
    csv.row({"E", csv.cell(strength.E)});
    csv.row({"epsilon", csv.cell(strength.epsilon)});
    csv.row({"valid", strength.valid ? "true" : "false"});

    std::optional<double> eps0;
    if (cfg.gadget_counts) {
        const auto c = compute_candidates(*cfg.gadget_counts, strength.epsilon);
        ordered_json jc;
        jc["zeta"] = c.zeta_used;
        if (c.combinatoric) jc["combinatoric"] = *c.combinatoric;
        if (c.malignant) jc["malignant"] = *c.malignant;
        if (c.postselect) jc["postselect"] = *c.postselect;
        eps0 = c.selected();
        jc["selected"] = *eps0;
        out.json["epsilon0"] = std::move(jc);
        csv.row({"eps0_selected", csv.cell(*eps0)});
    }

    gnt::LevelsConfig lcfg;
    if (cfg.levels) lcfg = *cfg.levels;
    else if (cfg.gadget_counts) lcfg.s = cfg.gadget_counts->s;
    const double eps_used = lcfg.epsilon.value_or(strength.epsilon);
    const std::optional<double> eps0_used =
        lcfg.epsilon0 ? lcfg.epsilon0 : eps0;
    if (eps0_used && eps_used > 0.0) {
        const auto trace = gnt::level_reduce(eps_used, *eps0_used, lcfg.s, lcfg.k_max);
        out.json["levels"] = {{"epsilon", trace.epsilon},
                              {"epsilon0", trace.epsilon0},
                              {"s", trace.s},
                              {"per_level", trace.per_level}};
        gnt::plot::Series series{"epsilon^(k)", {}, {}};
        for (std::size_t k = 0; k < trace.per_level.size(); ++k) {
            csv.row({"eps_level_" + std::to_string(k), csv.cell(trace.per_level[k])});
            series.x.push_back(static_cast<double>(k));
            series.y.push_back(trace.per_level[k]);
        }
        out.series = {series};
        out.plot_options.title = "level-reduced noise strength";
        out.plot_options.xlabel = "level k";

        if (cfg.overhead && eps_used < *eps0_used) {
            const double f = gnt::overhead_factor(cfg.overhead->num_gates, cfg.overhead->delta,
                                                  eps_used, *eps0_used, cfg.overhead->c);
            out.json["overhead_factor"] = f;
            csv.row({"overhead_factor", csv.cell(f)});
        }
    }
    out.csv = csv.str();
    return out;
}

// ----------------------------------- main -----------------------------------

void print_error(const std::string& kind, const std::string& message,
                 const std::string& pointer = "") {
    ordered_json err;
    err["error"]["kind"] = kind;
    err["error"]["message"] = message;
    if (!pointer.empty()) err["error"]["pointer"] = pointer;
    std::cerr << err.dump() << "\n";
}

int dispatch(const std::string& name, const CommonArgs& args) {
    try {
        if (name == "verify") {
            RunConfig cfg;
            if (!args.config_path.empty())
                cfg = RunConfig::parse(load_config(args.config_path), "verify");
            try {
                emit(run_verify(), cfg, args);
            } catch (const gnt::numeric_failure&) {
                return kNumeric;
            }
            return kOk;
        }
        const RunConfig cfg = RunConfig::parse(load_config(args.config_path), name);
        Emitted result;
        if (name == "spectrum") result = run_spectrum(cfg, args);
        else if (name == "strength") result = run_strength(cfg, args);
        else if (name == "levels") result = run_levels(cfg, args);
        else if (name == "threshold") result = run_threshold(cfg, args);
        else if (name == "dephasing") result = run_dephasing(cfg, args);
        else if (name == "report") result = run_report(cfg, args);
        emit(result, cfg, args);
        return kOk;
    } catch (const gnt::config_error& e) {
        print_error("config", e.what(), e.pointer());
        return kConfig;
    } catch (const gnt::numeric_failure& e) {
        print_error("numeric", e.what());
        return kNumeric;
    } catch (const gnt::convergence_error& e) {
        print_error("convergence", e.what());
        return kNumeric;
    } catch (const gnt::unsupported_error& e) {
        print_error("unsupported", e.what());
        return kUnsupported;
    } catch (const std::domain_error& e) {
        print_error("domain", e.what());
        return kDomain;
    } catch (const std::invalid_argument& e) {
        print_error("domain", e.what());
        return kDomain;
    } catch (const std::out_of_range& e) {
        print_error("domain", e.what());
        return kDomain;
    } catch (const std::runtime_error& e) {
        print_error("io", e.what());
        return kIo;
    } catch (const std::exception& e) {
        print_error("unexpected", e.what());
        return kUnexpected;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gnt — noise-strength and threshold calculus for Gaussian bath models"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {"spectrum", "strength", "levels", "threshold",
                                            "dephasing", "verify", "report"};
    const std::vector<std::string> descriptions = {
        "sample a bath correlation function from a spectrum",
        "compute the noise strength for a schedule and spectrum",
        "run the level-reduction recursion",
        "threshold estimates from gadget counts",
        "dephasing exponent, flip probabilities, and the CNOT gadget bound",
        "run the brute-force oracle suite",
        "combined strength/threshold/levels report"};

    std::vector<CommonArgs> args(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto* sub = app.add_subcommand(names[i], descriptions[i]);
        auto* copt = sub->add_option("--config", args[i].config_path, "JSON config file");
        if (names[i] != "verify") copt->required();
        sub->add_option("--out", args[i].out_path, "output file (stdout when omitted)");
        sub->add_option("--format", args[i].format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--tol", args[i].tol, "relative tolerance for quadrature paths");
        sub->add_option("--plot", args[i].plot_path, "write an SVG plot to this path");
        sub->add_flag("--logx", args[i].logx, "logarithmic x axis for --plot");
        sub->add_flag("--logy", args[i].logy, "logarithmic y axis for --plot");
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < names.size(); ++i)
        if (app.got_subcommand(names[i])) return dispatch(names[i], args[i]);
    return kUnexpected;
}
