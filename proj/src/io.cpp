#include "torusmix/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "torusmix/svg_plot.hpp"

namespace torusmix {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) return "0";
    return std::string(buf, ptr);
}

namespace {

constexpr const char* record_keys[] = {
    "t",           "hm1_theta", "hm12_theta", "grad_l2_theta", "grad_l2_omega", "linf_omega",
    "bmo_omega",   "energy",    "enstrophy",  "l2_theta",      "resolved_fraction"};

std::vector<double> record_values(const DiagnosticRecord& r) {
    return {r.t,          r.hm1_theta, r.hm12_theta, r.grad_l2_theta, r.grad_l2_omega,
            r.linf_omega, r.bmo_omega, r.energy,     r.enstrophy,     r.l2_theta,
            r.resolved_fraction};
}

ordered_json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    try {
        return ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError("config is not valid JSON (" + path + "): " + e.what());
    }
}

template <class T>
T get_or(const ordered_json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const std::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

FieldSpec parse_field_spec(const ordered_json& j, const char* which) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigError(std::string(which) + " must be an object with a 'family' key");
    FieldSpec spec;
    spec.family = j.at("family").get<std::string>();
    spec.amplitude = get_or(j, "amplitude", spec.amplitude);
    spec.mode = get_or(j, "mode", spec.mode);
    spec.mode_x = get_or(j, "mode_x", spec.mode_x);
    spec.mode_y = get_or(j, "mode_y", spec.mode_y);
    spec.k_min = get_or(j, "k_min", spec.k_min);
    spec.k_max = get_or(j, "k_max", spec.k_max);
    spec.enstrophy = get_or(j, "enstrophy", spec.enstrophy);
    spec.perturbation = get_or(j, "perturbation", spec.perturbation);
    spec.width = get_or(j, "width", spec.width);
    spec.x0 = get_or(j, "x0", spec.x0);
    spec.y0 = get_or(j, "y0", spec.y0);
    return spec;
}

ordered_json field_spec_json(const FieldSpec& s) {
    ordered_json j;
    j["family"] = s.family;
    if (s.family == "shear" || s.family == "taylor_green" || s.family == "taylor_green_perturbed") {
        j["amplitude"] = s.amplitude;
        j["mode"] = s.mode;
    }
    if (s.family == "taylor_green_perturbed") {
        j["perturbation"] = s.perturbation;
        j["k_min"] = s.k_min;
        j["k_max"] = s.k_max;
    }
    if (s.family == "random_band") {
        j["enstrophy"] = s.enstrophy;
        j["k_min"] = s.k_min;
        j["k_max"] = s.k_max;
    }
    if (s.family == "single_mode") {
        j["amplitude"] = s.amplitude;
        j["mode_x"] = s.mode_x;
        j["mode_y"] = s.mode_y;
    }
    if (s.family == "checkerboard") {
        j["amplitude"] = s.amplitude;
        j["mode"] = s.mode;
    }
    if (s.family == "gaussian_blob") {
        j["amplitude"] = s.amplitude;
        j["width"] = s.width;
        j["x0"] = s.x0;
        j["y0"] = s.y0;
    }
    return j;
}

BmoConfig parse_bmo(const ordered_json& j, const Grid& grid) {
    BmoConfig cfg = BmoConfig::defaults(grid);
    if (j.contains("radii")) cfg.radii = j.at("radii").get<std::vector<double>>();
    cfg.center_stride = get_or(j, "center_stride", cfg.center_stride);
    try {
        cfg.validate(grid);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad bmo config: ") + e.what());
    }
    return cfg;
}

ordered_json bmo_json(const BmoConfig& cfg) {
    ordered_json j;
    j["radii"] = cfg.radii;
    j["center_stride"] = cfg.center_stride;
    return j;
}

ordered_json scenario_json(const ScenarioSpec& s) {
    ordered_json j;
    j["name"] = s.name;
    j["n"] = s.n;
    j["t_end"] = s.t_end;
    j["cfl"] = s.cfl;
    j["sample_every"] = s.sample_every;
    j["seed"] = s.seed;
    j["omega0"] = field_spec_json(s.omega0);
    j["theta0"] = field_spec_json(s.theta0);
    return j;
}

// Streams NDJSON lines as records arrive and keeps them for post-processing.
class NdjsonTeeSink : public DiagnosticSink {
  public:
    explicit NdjsonTeeSink(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
    }
    void emit(const DiagnosticRecord& r) override {
        out_ << record_to_ndjson(r) << "\n";
        out_.flush();
        records.push_back(r);
    }
    std::vector<DiagnosticRecord> records;

  private:
    std::ofstream out_;
};

}  // namespace

std::string record_to_ndjson(const DiagnosticRecord& r) {
    const auto values = record_values(r);
    std::string line = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ",";
        line += "\"";
        line += record_keys[i];
        line += "\":";
        line += format_double(values[i]);
    }
    line += "}";
    return line;
}

std::string records_csv_header() {
    std::string header;
    for (std::size_t i = 0; i < std::size(record_keys); ++i) {
        if (i) header += ",";
        header += record_keys[i];
    }
    return header;
}

std::string record_to_csv(const DiagnosticRecord& r) {
    const auto values = record_values(r);
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ",";
        line += format_double(values[i]);
    }
    return line;
}

std::vector<DiagnosticRecord> read_ndjson_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read records file: " + path);
    std::vector<DiagnosticRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed record: " + e.what());
        }
        DiagnosticRecord r;
        try {
            r.t = j.at("t").get<double>();
            r.hm1_theta = j.at("hm1_theta").get<double>();
            r.hm12_theta = j.at("hm12_theta").get<double>();
            r.grad_l2_theta = j.at("grad_l2_theta").get<double>();
            r.grad_l2_omega = j.at("grad_l2_omega").get<double>();
            r.linf_omega = j.at("linf_omega").get<double>();
            r.bmo_omega = j.at("bmo_omega").get<double>();
            r.energy = j.at("energy").get<double>();
            r.enstrophy = j.at("enstrophy").get<double>();
            r.l2_theta = j.at("l2_theta").get<double>();
            r.resolved_fraction = j.at("resolved_fraction").get<double>();
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": missing record field: " + e.what());
        }
        records.push_back(r);
    }
    return records;
}

RunConfig load_run_config(const std::string& path) {
    const ordered_json j = parse_file(path);
    if (!j.contains("scenario")) throw ConfigError("config needs a 'scenario' object");
    const auto& sj = j.at("scenario");

    RunConfig cfg;
    cfg.scenario.name = get_or<std::string>(sj, "name", "unnamed");
    cfg.scenario.n = get_or(sj, "n", cfg.scenario.n);
    cfg.scenario.t_end = get_or(sj, "t_end", cfg.scenario.t_end);
    cfg.scenario.cfl = get_or(sj, "cfl", cfg.scenario.cfl);
    cfg.scenario.sample_every = get_or(sj, "sample_every", cfg.scenario.sample_every);
    cfg.scenario.seed = get_or<std::uint64_t>(sj, "seed", cfg.scenario.seed);
    if (!sj.contains("omega0") || !sj.contains("theta0"))
        throw ConfigError("scenario needs 'omega0' and 'theta0' descriptors");
    cfg.scenario.omega0 = parse_field_spec(sj.at("omega0"), "omega0");
    cfg.scenario.theta0 = parse_field_spec(sj.at("theta0"), "theta0");

    Grid grid;
    try {
        grid = Grid::make(cfg.scenario.n);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad scenario.n: ") + e.what());
    }

    cfg.control.cfl = cfg.scenario.cfl;
    if (j.contains("control")) {
        cfg.control.dt_max = get_or(j.at("control"), "dt_max", cfg.control.dt_max);
        cfg.control.dt_min = get_or(j.at("control"), "dt_min", cfg.control.dt_min);
    }
    try {
        cfg.control.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad control block: ") + e.what());
    }

    if (j.contains("bmo")) cfg.bmo = parse_bmo(j.at("bmo"), grid);

    const auto names = get_or<std::vector<std::string>>(
        j, "checks", {"mixing_bmo", "mixing_sup", "gradient_theta", "gradient_omega"});
    for (const auto& name : names) {
        auto kind = bound_kind_from(name);
        if (!kind)
            throw ConfigError("unknown check name '" + name +
                              "' (valid: mixing_bmo, mixing_sup, gradient_theta, gradient_omega)");
        cfg.checks.push_back(*kind);
    }

    if (j.contains("outputs")) {
        const auto& oj = j.at("outputs");
        cfg.outputs.directory = get_or<std::string>(oj, "directory", cfg.outputs.directory);
        cfg.outputs.records = get_or<std::string>(oj, "records", cfg.outputs.records);
        cfg.outputs.csv = get_or<std::string>(oj, "csv", cfg.outputs.csv);
        cfg.outputs.report = get_or<std::string>(oj, "report", cfg.outputs.report);
    }
    return cfg;
}

EstimateConfig load_estimate_config(const std::string& path) {
    const ordered_json j = parse_file(path);
    EstimateConfig cfg;
    cfg.grids = get_or(j, "grids", cfg.grids);
    if (cfg.grids.empty()) throw ConfigError("'grids' must list at least one resolution");
    if (j.contains("ensemble")) {
        const auto& ej = j.at("ensemble");
        cfg.ensemble.count = get_or(ej, "count", cfg.ensemble.count);
        cfg.ensemble.seed = get_or<std::uint64_t>(ej, "seed", cfg.ensemble.seed);
        cfg.ensemble.k_min = get_or(ej, "k_min", cfg.ensemble.k_min);
        cfg.ensemble.k_max = get_or(ej, "k_max", cfg.ensemble.k_max);
        cfg.ensemble.enstrophy = get_or(ej, "enstrophy", cfg.ensemble.enstrophy);
    }
    if (j.contains("bmo")) cfg.bmo_stride = get_or<int>(j.at("bmo"), "center_stride", 4);
    cfg.output = get_or<std::string>(j, "output", cfg.output);
    return cfg;
}

namespace {

ordered_json report_check_json(const BoundReport& rep) {
    ordered_json j;
    j["kind"] = to_string(rep.kind);
    j["lambda_fit"] = rep.lambda_fit;
    j["holds"] = rep.holds;
    double min_margin = std::numeric_limits<double>::infinity();
    for (double m : rep.margin_series) min_margin = std::min(min_margin, m);
    if (rep.margin_series.empty()) min_margin = 0.0;
    j["min_margin"] = min_margin;
    j["margin_series"] = rep.margin_series;
    return j;
}

BoundReport run_check(BoundKind kind, std::span<const DiagnosticRecord> records) {
    switch (kind) {
        case BoundKind::mixing_bmo: return check_mixing_bmo(records);
        case BoundKind::mixing_sup: return check_mixing_sup(records);
        default: return check_gradient_growth(records, kind);
    }
}

ordered_json estimate_json(const ConstantEstimate& est, bool with_cross_check) {
    ordered_json j;
    j["max_ratio"] = est.max_ratio;
    j["q50"] = est.q50;
    j["q90"] = est.q90;
    j["evaluated"] = est.evaluated;
    j["skipped"] = est.skipped;
    if (with_cross_check) j["cross_check_max_diff"] = est.cross_check_max_diff;
    return j;
}

}  // namespace

int cmd_simulate(const std::string& config_path) {
    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return 1;
    }

    try {
        const Grid grid = Grid::make(cfg.scenario.n);
        const BmoConfig bmo = cfg.bmo ? *cfg.bmo : BmoConfig::defaults(grid);

        fs::create_directories(cfg.outputs.directory);
        const fs::path dir(cfg.outputs.directory);

        BuildNotes notes;
        const FlowState state0 = build(cfg.scenario, &notes);

        NdjsonTeeSink sink((dir / cfg.outputs.records).string());
        try {
            run(state0, cfg.control, cfg.scenario.t_end, cfg.scenario.sample_every, bmo, sink);
        } catch (const SolverError& e) {
            std::cerr << "simulate: solver failure at t = " << format_double(e.time()) << ": "
                      << e.what() << "\n";
            return 2;
        }

        {
            std::ofstream csv(dir / cfg.outputs.csv);
            if (!csv) throw std::runtime_error("cannot open csv output");
            csv << records_csv_header() << "\n";
            for (const auto& r : sink.records) csv << record_to_csv(r) << "\n";
        }

        double max_tail = 0.0;
        for (const auto& r : sink.records) max_tail = std::max(max_tail, r.resolved_fraction);
        const bool under_resolved = max_tail > 0.01;

        ordered_json report;
        report["scenario"] = scenario_json(cfg.scenario);
        report["bmo"] = bmo_json(bmo);
        report["notes"] = notes;
        report["samples"] = sink.records.size();
        report["max_resolved_fraction"] = max_tail;
        report["under_resolved"] = under_resolved;
        report["checks"] = ordered_json::array();

        bool all_hold = true;
        for (BoundKind kind : cfg.checks) {
            const BoundReport rep = run_check(kind, sink.records);
            report["checks"].push_back(report_check_json(rep));
            all_hold = all_hold && rep.holds;
            std::cout << "check " << to_string(rep.kind) << ": lambda_fit = "
                      << format_double(rep.lambda_fit) << ", holds = "
                      << (rep.holds ? "true" : "false") << "\n";
        }

        {
            std::ofstream rep_out(dir / cfg.outputs.report);
            if (!rep_out) throw std::runtime_error("cannot open report output");
            rep_out << report.dump(2) << "\n";
        }

        if (under_resolved)
            std::cout << "warning: run under-resolved (max spectral tail fraction = "
                      << format_double(max_tail) << ")\n";
        std::cout << "wrote " << (dir / cfg.outputs.records).string() << ", "
                  << (dir / cfg.outputs.csv).string() << ", "
                  << (dir / cfg.outputs.report).string() << "\n";
        if (!all_hold) {
            std::cerr << "simulate: a requested bound check failed to hold\n";
            return 2;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return 2;
    }
}

int cmd_estimate_constants(const std::string& config_path) {
    EstimateConfig cfg;
    try {
        cfg = load_estimate_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "estimate-constants: " << e.what() << "\n";
        return 1;
    }

    try {
        ordered_json out;
        ordered_json ens;
        ens["count"] = cfg.ensemble.count;
        ens["seed"] = cfg.ensemble.seed;
        ens["k_min"] = cfg.ensemble.k_min;
        ens["k_max"] = cfg.ensemble.k_max;
        ens["enstrophy"] = cfg.ensemble.enstrophy;
        out["ensemble"] = ens;
        out["grids"] = ordered_json::array();

        for (int n : cfg.grids) {
            const Grid grid = Grid::make(n);
            BmoConfig bmo = BmoConfig::defaults(grid);
            if (cfg.bmo_stride) bmo.center_stride = *cfg.bmo_stride;
            bmo.validate(grid);

            const ConstantEstimate jac = estimate_jacobian_bmo_constant(cfg.ensemble, grid, bmo);
            const ConstantEstimate rsz = estimate_riesz_bmo_constant(cfg.ensemble, grid, bmo);

            ordered_json gj;
            gj["n"] = n;
            gj["jacobian"] = estimate_json(jac, false);
            gj["riesz"] = estimate_json(rsz, true);
            out["grids"].push_back(gj);

            std::cout << "n = " << n << ": jacobian max ratio = " << format_double(jac.max_ratio)
                      << " (skipped " << jac.skipped << "), riesz max ratio = "
                      << format_double(rsz.max_ratio) << " (skipped " << rsz.skipped << ")\n";
        }

        const fs::path out_path(cfg.output);
        if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open " + cfg.output + " for writing");
        f << out.dump(2) << "\n";
        std::cout << "wrote " << cfg.output << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "estimate-constants: " << e.what() << "\n";
        return 2;
    }
}

int cmd_plot(const std::string& records_path, const std::string& out_svg) {
    std::vector<DiagnosticRecord> records;
    try {
        records = read_ndjson_records(records_path);
    } catch (const std::exception& e) {
        std::cerr << "plot: " << e.what() << "\n";
        return 1;
    }
    if (records.empty()) {
        std::cerr << "plot: no records in " << records_path << "\n";
        return 1;
    }

    try {
        const double ln10 = std::log(10.0);
        std::vector<double> t, mix_log, grad_log;
        for (const auto& r : records) {
            t.push_back(r.t);
            mix_log.push_back(r.hm1_theta > 0.0 ? 2.0 * std::log10(r.hm1_theta) : -320.0);
            grad_log.push_back(r.grad_l2_theta > 0.0 ? 2.0 * std::log10(r.grad_l2_theta) : -320.0);
        }

        SvgPlot mix_plot("Mix-norm decay and fitted lower bounds", "t",
                         "log10 |theta|_{H^-1}^2");
        mix_plot.add_series("measured", t, mix_log, "#1f77b4");
        SvgPlot grad_plot("Scalar gradient growth and fitted upper bound", "t",
                          "log10 |grad theta|_{L^2}^2");
        grad_plot.add_series("measured", t, grad_log, "#1f77b4");

        if (records.size() >= 2 && records[0].hm1_theta > 0.0) {
            std::span<const DiagnosticRecord> span(records);
            const double log_q0_sq = 2.0 * std::log(records[0].hm1_theta);

            std::vector<double> bmo_integral(records.size(), 0.0);
            for (std::size_t j = 1; j < records.size(); ++j)
                bmo_integral[j] = bmo_integral[j - 1] +
                                  0.5 * (records[j].bmo_omega + records[j - 1].bmo_omega) *
                                      (records[j].t - records[j - 1].t);

            const BoundReport bmo_rep = check_mixing_bmo(span);
            std::vector<double> bmo_line(records.size());
            for (std::size_t j = 0; j < records.size(); ++j)
                bmo_line[j] = (log_q0_sq - bmo_rep.lambda_fit * bmo_integral[j]) / ln10;
            mix_plot.add_series("bmo bound", t, bmo_line, "#d62728", true);

            const BoundReport sup_rep = check_mixing_sup(span);
            std::vector<double> sup_line(records.size());
            for (std::size_t j = 0; j < records.size(); ++j)
                sup_line[j] = (log_q0_sq - sup_rep.lambda_fit * (records[j].t - records[0].t) *
                                               records[0].linf_omega) /
                              ln10;
            mix_plot.add_series("sup bound", t, sup_line, "#2ca02c", true);

            if (records[0].grad_l2_theta > 0.0) {
                const BoundReport grad_rep = check_gradient_growth(span, BoundKind::gradient_theta);
                const double log_g0_sq = 2.0 * std::log(records[0].grad_l2_theta);
                std::vector<double> grad_line(records.size());
                for (std::size_t j = 0; j < records.size(); ++j)
                    grad_line[j] = (log_g0_sq + grad_rep.lambda_fit *
                                                    (records[j].t - records[0].t) *
                                                    records[0].linf_omega) /
                                   ln10;
                grad_plot.add_series("growth bound", t, grad_line, "#d62728", true);
            }
        }

        write_svg_document(out_svg, {mix_plot.render(), grad_plot.render()}, 640.0, 420.0);
        std::cout << "wrote " << out_svg << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "plot: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace torusmix
