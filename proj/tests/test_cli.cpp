#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "nongibbs/io.hpp"
#include "nongibbs/scenario.hpp"

using namespace nongibbs;
namespace fs = std::filesystem;

namespace {
const std::string scenario_dir = NONGIBBS_SCENARIO_DIR;
const std::string cli_binary = NONGIBBS_CLI_BINARY;

std::string temp_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("nongibbs_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

std::string write_temp_config(const std::string& tag, const std::string& content) {
    const std::string dir = temp_dir(tag);
    const std::string path = dir + "/config.json";
    io::write_file(path, content);
    return path;
}

const std::vector<std::string> shipped = {
    "badness_profile.json", "betac_pipeline.json", "cw_scan.json",        "degeneracy.json",
    "lp_check.json",        "oracle_crosscheck.json", "quenched_probe.json",
};
} // namespace

TEST_CASE("every shipped scenario file validates") {
    for (const auto& file : shipped) {
        auto report = scenario::validate_file(scenario_dir + "/" + file);
        INFO(file, ": ", report.describe());
        CHECK(report.ok);
    }
}

TEST_CASE("validation rejects out-of-range parameters by field name") {
    const std::string path = write_temp_config("badp", R"({
        "version": 1, "name": "bad-p", "kind": "cw_scan",
        "p": 1.2, "beta_min": 1.0, "beta_max": 2.0, "beta_step": 0.01
    })");
    auto report = scenario::validate_file(path);
    CHECK_FALSE(report.ok);
    REQUIRE(report.errors.size() == 1);
    CHECK(report.errors[0].find("p:") != std::string::npos);
    CHECK(report.errors[0].find("1.2") != std::string::npos);
    CHECK(report.errors[0].find("(0, 1)") != std::string::npos);
}

TEST_CASE("validation rejects windows beyond the enumeration cap with a resource message") {
    const std::string path = write_temp_config("bigwin", R"({
        "version": 1, "name": "too-big", "kind": "badness_profile",
        "model": { "dim": 2, "j": 1.0, "h": 0.0, "beta": 0.8 },
        "transform": { "kind": "glauber", "t": 0.5 },
        "generator": { "kind": "checkerboard" },
        "radii": [4], "margin": 2
    })");
    auto report = scenario::validate_file(path);
    CHECK_FALSE(report.ok);
    REQUIRE(report.errors.size() == 1);
    CHECK(report.errors[0].find("2^169") != std::string::npos); // 13x13 window
    CHECK(report.errors[0].find("mc_fallback") != std::string::npos);
}

TEST_CASE("validation reports parse errors and unknown kinds") {
    const std::string broken = write_temp_config("broken", "{ not json");
    auto report = scenario::validate_file(broken);
    CHECK_FALSE(report.ok);
    CHECK(report.errors[0].find("parse error") != std::string::npos);

    const std::string unknown = write_temp_config("unknown", R"({
        "version": 1, "name": "x", "kind": "frobnicate"
    })");
    auto report2 = scenario::validate_file(unknown);
    CHECK_FALSE(report2.ok);
    CHECK(report2.errors[0].find("kind") != std::string::npos);
}

TEST_CASE("cw_scan run emits the 4/3 threshold and reruns byte-identically") {
    const std::string out_a = temp_dir("cw_a");
    auto result = scenario::run_file(scenario_dir + "/cw_scan.json", 2, out_a);
    REQUIRE(result.exit_code == 0);

    auto summary = nlohmann::json::parse(io::read_file(out_a + "/cw-decimation-threshold_threshold.json"));
    REQUIRE(summary["threshold"].is_number());
    CHECK(std::abs(summary["threshold"].get<double>() - 4.0 / 3.0) < 0.02);
    CHECK(summary["one_over_p"].get<double>() == doctest::Approx(4.0 / 3.0));

    const std::string out_b = temp_dir("cw_b");
    auto again = scenario::run_file(scenario_dir + "/cw_scan.json", 1, out_b);
    REQUIRE(again.exit_code == 0);
    CHECK(io::read_file(out_a + "/cw-decimation-threshold_jump.csv") ==
          io::read_file(out_b + "/cw-decimation-threshold_jump.csv"));
    CHECK(io::read_file(out_a + "/cw-decimation-threshold_threshold.json") ==
          io::read_file(out_b + "/cw-decimation-threshold_threshold.json"));
}

TEST_CASE("degeneracy run reproduces the 4-vs-2 counts and the ln 2 increment") {
    const std::string out = temp_dir("deg");
    auto result = scenario::run_file(scenario_dir + "/degeneracy.json", 2, out);
    REQUIRE(result.exit_code == 0);
    auto summary = nlohmann::json::parse(io::read_file(out + "/two-chain-ln2_degeneracy.json"));
    CHECK(summary["degeneracy_disconnected"].get<int>() == 4);
    CHECK(summary["degeneracy_bridged"].get<int>() == 2);
    CHECK(std::abs(summary["increment_difference"].get<double>() - std::log(2.0)) < 1e-3);

    auto manifest = nlohmann::json::parse(io::read_file(out + "/two-chain-ln2_manifest.json"));
    CHECK(manifest["status"].get<std::string>() == "ok");
    CHECK(manifest["tool_version"].get<std::string>() == scenario::tool_version);
    CHECK(manifest["outputs"].size() == 2);
}

TEST_CASE("quenched_probe run emits a monotone probe column") {
    const std::string out = temp_dir("probe");
    auto result = scenario::run_file(scenario_dir + "/quenched_probe.json", 2, out);
    REQUIRE(result.exit_code == 0);
    std::ifstream csv(out + "/rfim-probe-5x3_probe.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "lambda_radius,probe");
    double prev = 2.0;
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) {
        const auto comma = line.find(',');
        const double v = std::stod(line.substr(comma + 1));
        CHECK(v <= prev + 1e-12);
        prev = v;
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("catalog lists all kinds once and is stable") {
    const std::string a = scenario::catalog_text();
    const std::string b = scenario::catalog_text();
    CHECK(a == b);
    for (const auto& kind : scenario::scenario_kinds()) {
        INFO(kind);
        CHECK(a.find("  " + kind) != std::string::npos);
    }
    for (const auto& file : shipped) {
        const std::string needle = "scenarios/" + file;
        const auto first = a.find(needle);
        REQUIRE(first != std::string::npos);
        CHECK(a.find(needle, first + 1) == std::string::npos); // exactly once
    }
}

TEST_CASE("the binary wires exit codes through") {
    const std::string quiet = " > /dev/null 2>&1";
    int ok = std::system((cli_binary + " validate " + scenario_dir + "/lp_check.json" + quiet).c_str());
    CHECK(WEXITSTATUS(ok) == 0);

    const std::string bad = write_temp_config("exit1", R"({"version":1,"name":"x","kind":"cw_scan","p":2.0,
        "beta_min":1.0,"beta_max":2.0,"beta_step":0.1})");
    int invalid = std::system((cli_binary + " validate " + bad + quiet).c_str());
    CHECK(WEXITSTATUS(invalid) == 1);

    int listed = std::system((cli_binary + " list" + quiet).c_str());
    CHECK(WEXITSTATUS(listed) == 0);

    const std::string out = temp_dir("cli_run");
    int ran = std::system(
        (cli_binary + " run " + scenario_dir + "/lp_check.json --jobs 2 --out " + out + quiet).c_str());
    CHECK(WEXITSTATUS(ran) == 0);
    CHECK(fs::exists(out + "/lp-tophat-cascade_lp.csv"));
}
