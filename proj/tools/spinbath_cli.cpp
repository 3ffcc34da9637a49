// spinbath_cli.cpp — Command-line runner: run / rates / verify / sweep over scenario configs.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spinbath/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinbath: resonance dynamics of spin ensembles coupled to bosonic reservoirs"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    bool strict = false;
    double tolerance = 1e-8;
    int grid_points = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "scenario config file (JSON)")->required();
        sub->add_option("--out-dir", out_dir, "directory for output files")->capture_default_str();
        sub->add_flag("--strict", strict, "exit with code 2 when the validity gate fails");
        sub->add_option("--grid-points", grid_points, "override the number of time-grid points")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* cmd_run = app.add_subcommand("run", "write trajectory.csv, bloch.csv, rates.json (and oracle.csv)");
    add_common(cmd_run);
    CLI::App* cmd_rates = app.add_subcommand("rates", "write rates.json only");
    add_common(cmd_rates);
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "compare the theory against the solvable pure-dephasing model");
    add_common(cmd_verify);
    cmd_verify->add_option("--tolerance", tolerance, "gate on the max substituted deviation")
        ->capture_default_str();
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run once per swept parameter value");
    add_common(cmd_sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const std::string config_text = read_file(config_path);
        const spinbath::ScenarioConfig cfg = spinbath::parse_scenario_text(config_text);

        spinbath::RunOptions opts;
        opts.out_dir = out_dir;
        opts.strict = strict;
        opts.verify_tolerance = tolerance;
        if (grid_points > 0) opts.grid_points_override = grid_points;

        spinbath::RunResult result;
        if (cmd_run->parsed()) {
            result = spinbath::run_scenario(cfg, opts);
        } else if (cmd_rates->parsed()) {
            result = spinbath::run_rates_only(cfg, opts);
        } else if (cmd_verify->parsed()) {
            result = spinbath::run_verify(cfg, opts);
        } else {
            result = spinbath::run_sweep(config_text, cfg, opts);
        }
        std::cout << result.message << "\n";
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
