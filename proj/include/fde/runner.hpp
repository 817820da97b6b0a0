#ifndef FDE_RUNNER_HPP
#define FDE_RUNNER_HPP

#include <string>
#include <vector>

#include "fde/report.hpp"
#include "fde/scenario.hpp"

namespace fde {

// exit-code contract shared by all subcommands:
// 0 all requested checks/verifications pass, 2 a check failed,
// 3 solver failure, 1 usage/config error (raised as exceptions)
enum ExitCode { exit_ok = 0, exit_usage = 1, exit_check_failed = 2, exit_solver_failed = 3 };

struct CheckOutcome {
    int code = exit_ok;
    std::vector<TheoremVerdict> verdicts;
    std::string report_text;
    std::string report_path;
};

struct SolveOutcome {
    int code = exit_ok;
    bool solver_ok = false;
    SolveResult result;
    Trajectory trajectory = Trajectory::point(0.0, 0.0);  // possibly partial on failure
    PropertyReport properties;
    std::vector<std::string> expectation_failures;
    std::string report_text;
    std::string report_path, trajectory_path;
};

CheckOutcome run_check(const Scenario& sc, const std::string& out_dir);
SolveOutcome run_solve(const Scenario& sc, const std::string& out_dir);
// re-verify an existing trajectory file against the scenario thresholds
SolveOutcome run_verify(const Scenario& sc, const std::string& trajectory_path,
                        const std::string& out_dir);

struct SweepRow {
    double value = 0.0;
    int code = exit_ok;
    std::string check_summary;   // per-theorem overall statuses
    std::string left_limit;      // estimate or "-"
    std::string right_end;       // classification or "-"
    std::string error;           // first failure message, if any
};

struct SweepOutcome {
    int code = exit_ok;
    std::vector<SweepRow> rows;
    std::string table_path;
};

SweepOutcome run_sweep(const Scenario& sc, const std::string& param,
                       const std::vector<double>& values, int jobs,
                       const std::string& out_dir);

}  // namespace fde

#endif
