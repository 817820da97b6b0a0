// Scenario-driven front end: hypothesis checks, solution construction,
// trajectory verification, and parameter sweeps.
#include <CLI11.hpp>
#include <iostream>

#include "fde/runner.hpp"

namespace {

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir = ".";
    double window = -1.0;  // <0: keep scenario value
    double step = -1.0;
    bool full_density = false;
};

fde::Scenario load(const CommonOpts& o) {
    fde::Scenario sc = fde::parse_scenario_file(o.scenario_path);
    if (o.window > 0.0) sc.check.window = o.window;
    if (o.step > 0.0) sc.solve.step = o.step;
    if (o.full_density) sc.outputs.full_density = true;
    return sc;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--scenario", o.scenario_path, "scenario file")->required();
    cmd->add_option("--out-dir", o.out_dir, "output directory");
    cmd->add_option("--window", o.window, "override check window T");
    cmd->add_option("--step", o.step, "override integration step h");
    cmd->add_flag("--full-density", o.full_density, "emit every trajectory knot");
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> vs;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
        if (!tok.empty()) vs.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return vs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for scalar retarded functional differential equations"};
    app.require_subcommand(1);

    CommonOpts check_o, solve_o, verify_o, sweep_o;
    std::string trajectory_path, sweep_param, sweep_values;
    int jobs = 1;

    CLI::App* check = app.add_subcommand("check", "evaluate theorem hypotheses");
    add_common(check, check_o);
    CLI::App* solve = app.add_subcommand("solve", "construct and verify a solution");
    add_common(solve, solve_o);
    CLI::App* verify = app.add_subcommand("verify", "re-verify an existing trajectory file");
    add_common(verify, verify_o);
    verify->add_option("--trajectory", trajectory_path, "trajectory file")->required();
    CLI::App* sweep = app.add_subcommand("sweep", "run check+solve across parameter values");
    add_common(sweep, sweep_o);
    sweep->add_option("--param", sweep_param, "parameter path, e.g. model.tau")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep->add_option("--jobs", jobs, "concurrent rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : fde::exit_usage;
    }

    try {
        if (check->parsed()) {
            auto out = fde::run_check(load(check_o), check_o.out_dir);
            std::cout << out.report_text;
            return out.code;
        }
        if (solve->parsed()) {
            auto out = fde::run_solve(load(solve_o), solve_o.out_dir);
            std::cout << out.report_text;
            return out.code;
        }
        if (verify->parsed()) {
            auto out = fde::run_verify(load(verify_o), trajectory_path, verify_o.out_dir);
            std::cout << out.report_text;
            return out.code;
        }
        if (sweep->parsed()) {
            auto out = fde::run_sweep(load(sweep_o), sweep_param, parse_values(sweep_values),
                                      jobs, sweep_o.out_dir);
            std::cout << "sweep table: " << out.table_path << "\n";
            return out.code;
        }
    } catch (const fde::scenario_error& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return fde::exit_usage;
    } catch (const fde::model_error& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return fde::exit_usage;
    } catch (const fde::shoot_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return fde::exit_solver_failed;
    } catch (const fde::blow_up_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return fde::exit_solver_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fde::exit_usage;
    }
    return fde::exit_usage;
}
