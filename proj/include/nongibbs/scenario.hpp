#pragma once

#include <string>
#include <vector>

namespace nongibbs::scenario {

inline constexpr const char* tool_version = "0.1.0";

// Scenario kinds the front end dispatches on. Each has a JSON config
// schema (documented in the catalog and the shipped example files) and a
// fixed set of CSV/JSON outputs.
const std::vector<std::string>& scenario_kinds();

struct ValidationReport {
    bool ok = false;
    std::string name;
    std::string kind;
    std::vector<std::string> errors;
    std::string describe() const;
};

// full schema + precondition check; no computation
ValidationReport validate_file(const std::string& path);

struct RunResult {
    int exit_code = 0; // 0 ok, 1 validation failure, 2 runtime failure
    std::vector<std::string> outputs;
    std::string message;
};

// validates, executes, writes CSV/JSON artifacts plus a manifest into
// out_dir. Identical (config, seeds, version) give byte-identical CSV and
// JSON payloads; wall time lives only in the manifest.
RunResult run_file(const std::string& path, int jobs, const std::string& out_dir);

// stable catalog of kinds, parameters and shipped example files
std::string catalog_text();

} // namespace nongibbs::scenario
