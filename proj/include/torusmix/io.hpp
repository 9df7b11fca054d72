#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusmix/bounds.hpp"
#include "torusmix/scenarios.hpp"

namespace torusmix {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OutputSpec {
    std::string directory = "out";
    std::string records = "records.ndjson";
    std::string csv = "records.csv";
    std::string report = "report.json";
};

struct RunConfig {
    ScenarioSpec scenario;
    StepControl control;
    std::optional<BmoConfig> bmo;  // defaults to BmoConfig::defaults(grid)
    std::vector<BoundKind> checks;
    OutputSpec outputs;
};

struct EstimateConfig {
    std::vector<int> grids = {64, 128, 256};
    EnsembleSpec ensemble;
    std::optional<int> bmo_stride;
    std::string output = "constants.json";
};

// Throw ConfigError with a schema message on malformed input.
RunConfig load_run_config(const std::string& path);
EstimateConfig load_estimate_config(const std::string& path);

// Shortest decimal representation that round-trips to the same double; both
// the NDJSON and CSV writers use it, so the two files carry identical
// numbers.
std::string format_double(double value);

std::string record_to_ndjson(const DiagnosticRecord& r);
std::string records_csv_header();
std::string record_to_csv(const DiagnosticRecord& r);
std::vector<DiagnosticRecord> read_ndjson_records(const std::string& path);

// CLI entry points; return the process exit status (0 success, 1 config
// error, 2 runtime/solver failure).
int cmd_simulate(const std::string& config_path);
int cmd_estimate_constants(const std::string& config_path);
int cmd_plot(const std::string& records_path, const std::string& out_svg);

}  // namespace torusmix
