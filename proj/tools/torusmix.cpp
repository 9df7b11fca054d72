#include <string>

#include <CLI11.hpp>

#include "torusmix/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"torusmix: pseudospectral 2d Euler / passive-scalar mixing diagnostics"};
    app.require_subcommand(1);

    std::string sim_config, est_config, records_path, svg_path;

    auto* simulate = app.add_subcommand("simulate", "run a scenario and its bound checks");
    simulate->add_option("config", sim_config, "JSON run configuration")->required();

    auto* estimate =
        app.add_subcommand("estimate-constants", "run the Jacobian/Riesz constant ensembles");
    estimate->add_option("config", est_config, "JSON estimate configuration")->required();

    auto* plot = app.add_subcommand("plot", "render bound charts from an NDJSON record file");
    plot->add_option("records", records_path, "NDJSON diagnostics file")->required();
    plot->add_option("output", svg_path, "SVG output path")->required();

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) return torusmix::cmd_simulate(sim_config);
    if (estimate->parsed()) return torusmix::cmd_estimate_constants(est_config);
    return torusmix::cmd_plot(records_path, svg_path);
}
