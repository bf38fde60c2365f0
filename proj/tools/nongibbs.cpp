#include <iostream>

#include <CLI11.hpp>

#include "nongibbs/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"nongibbs: finite-volume diagnostics for transformed and quenched spin measures"};
    app.require_subcommand(1);

    std::string run_path, out_dir = ".";
    int jobs = 0; // 0: all cores
    auto* run = app.add_subcommand("run", "validate and execute a scenario file");
    run->add_option("file", run_path, "scenario configuration (JSON)")->required();
    run->add_option("--jobs", jobs, "parallel workers (default: all cores)");
    run->add_option("--out", out_dir, "output directory (default: current directory)");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a scenario file, run nothing");
    validate->add_option("file", validate_path, "scenario configuration (JSON)")->required();

    auto* list = app.add_subcommand("list", "print the scenario catalog");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            std::cout << nongibbs::scenario::catalog_text();
            return 0;
        }
        if (validate->parsed()) {
            const auto report = nongibbs::scenario::validate_file(validate_path);
            std::cout << report.describe() << "\n";
            return report.ok ? 0 : 1;
        }
        const auto result = nongibbs::scenario::run_file(run_path, jobs, out_dir);
        std::cout << result.message << "\n";
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
