#include "fde/runner.hpp"

#include <atomic>
#include <filesystem>
#include <sstream>
#include <thread>

namespace fde {

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
    if (dir.empty()) return file;
    return (std::filesystem::path(dir) / file).string();
}

std::string right_end_name(RightEndKind k) {
    switch (k) {
        case RightEndKind::limit_to_kappa: return "limit-to-kappa";
        case RightEndKind::oscillates: return "oscillates-about-kappa";
        case RightEndKind::other: return "other";
    }
    return "?";
}

// expectation rows appended to the report; failures collected for the code
std::vector<std::string> evaluate_expectations(const Scenario& sc, const Equation& eq,
                                               const PropertyReport& rep, bool extended,
                                               std::ostringstream& os) {
    const VerifyConfig& v = sc.verify;
    std::vector<std::string> failures;
    auto expect = [&](const std::string& id, bool ok, const std::string& detail) {
        os << "expectation: " << id << " " << (ok ? "pass" : "fail") << " " << detail << "\n";
        if (!ok) failures.push_back(id);
    };
    os << "[expectations]\n";
    if (v.expect_band) {
        double lo = v.band_lo.value_or(0.0);
        double hi = v.band_hi.value_or(eq.kappa);
        bool ok = rep.bounds.min >= lo - v.windows.band_tol &&
                  rep.bounds.max <= hi + v.windows.band_tol;
        expect("band", ok,
               "min=" + fmt17(rep.bounds.min) + " max=" + fmt17(rep.bounds.max) + " band=[" +
                   fmt17(lo) + "," + fmt17(hi) + "]");
    }
    if (v.expect_strict_positive_left)
        expect("strict-positive-left", rep.strict_positive_left,
               "min=" + fmt17(rep.left_min));
    if (v.expect_positive_forward)
        expect("positive-forward", extended && rep.positive_forward,
               "min=" + fmt17(rep.forward_min));
    if (v.expect_monotone_left)
        expect("monotone-left", rep.monotone.pass,
               "min-slope=" + fmt17(rep.monotone.min_slope));
    if (v.expect_left_limit_max) {
        bool ok = rep.left_limit.status == TailStatus::converged &&
                  std::abs(rep.left_limit.value) <= *v.expect_left_limit_max;
        expect("left-limit", ok,
               "value=" + fmt17(rep.left_limit.value) + " max=" +
                   fmt17(*v.expect_left_limit_max));
    }
    if (v.expect_right_end != RightEndExpect::none) {
        bool ok = false;
        switch (v.expect_right_end) {
            case RightEndExpect::limit:
                ok = rep.right_end.kind == RightEndKind::limit_to_kappa;
                break;
            case RightEndExpect::oscillation:
                ok = rep.right_end.kind == RightEndKind::oscillates;
                break;
            case RightEndExpect::limit_or_oscillation:
                ok = rep.right_end.kind != RightEndKind::other;
                break;
            case RightEndExpect::none: break;
        }
        expect("right-end", ok, "kind=" + right_end_name(rep.right_end.kind));
    }
    return failures;
}

std::string report_header(const Scenario& sc, const char* command) {
    std::ostringstream os;
    os << "fde-lab report v1\n";
    os << "command: " << command << "\n";
    os << "scenario: " << sc.name << "\n";
    return os.str();
}

}  // namespace

CheckOutcome run_check(const Scenario& sc, const std::string& out_dir) {
    CheckOutcome out;
    Equation eq = sc.build();
    std::ostringstream os;
    os << report_header(sc, "check");
    bool all_pass = true;
    for (TheoremId id : sc.check.theorems) {
        TheoremVerdict v = theorem_verdict(eq, id, sc.check.window, sc.check.grid_step);
        // the statement only covers this anchored problem when c is admissible
        if (!v.passed() || !v.c_inside.value_or(true)) all_pass = false;
        os << render_verdict(v);
        out.verdicts.push_back(std::move(v));
    }
    out.code = all_pass ? exit_ok : exit_check_failed;
    os << "exit-code: " << out.code << "\n";
    out.report_text = os.str();
    // keep the verdicts around when a solve writes its own report next
    out.report_path = join_path(out_dir, "check_" + sc.outputs.report);
    write_text_atomic(out.report_path, out.report_text);
    return out;
}

namespace {

SolveOutcome finish_solve(const Scenario& sc, const Equation& eq, SolveOutcome out,
                          bool extended, double reach, bool extension_complete,
                          const std::string& out_dir, const char* command) {
    std::ostringstream os;
    os << report_header(sc, command);
    if (command == std::string("solve"))
        os << render_solve(out.result, extended, reach, extension_complete);
    out.properties = analyze(eq, out.trajectory, sc.verify.windows);
    os << render_properties(out.properties);
    out.expectation_failures =
        evaluate_expectations(sc, eq, out.properties, extension_complete, os);
    if (!out.solver_ok)
        out.code = exit_solver_failed;
    else if (!out.expectation_failures.empty())
        out.code = exit_check_failed;
    else
        out.code = exit_ok;
    os << "exit-code: " << out.code << "\n";
    out.report_text = os.str();
    std::string prefix = command == std::string("verify") ? "verify_" : "";
    out.report_path = join_path(out_dir, prefix + sc.outputs.report);
    write_text_atomic(out.report_path, out.report_text);
    return out;
}

}  // namespace

SolveOutcome run_solve(const Scenario& sc, const std::string& out_dir) {
    SolveOutcome out;
    Equation eq = sc.build();
    bool extension_complete = false;
    double reach = eq.t0;
    try {
        out.result = limit_scheme(eq, sc.solve);
        out.solver_ok = out.result.converged;
        IntegrationOutcome ext =
            integrate_capture(eq, out.result.trajectory, eq.t0, sc.solve.forward_horizon,
                              sc.solve.step, false, nullptr, sc.solve.blow_limit);
        out.trajectory = std::move(ext.trajectory);
        extension_complete = ext.complete;
        reach = ext.reach;
        if (!ext.complete) out.solver_ok = false;
    } catch (const shoot_error& e) {
        out.solver_ok = false;
        out.trajectory = out.result.trajectory;
        std::ostringstream os;
        os << report_header(sc, "solve") << "[solve]\nfailure: " << e.what() << "\n";
        out.report_text = os.str();
        out.report_path = join_path(out_dir, sc.outputs.report);
        write_text_atomic(out.report_path, out.report_text);
        out.code = exit_solver_failed;
        return out;
    }
    out.trajectory_path = join_path(out_dir, sc.outputs.trajectory);
    write_trajectory(out.trajectory_path, out.trajectory, sc.outputs.max_rows,
                     sc.outputs.full_density);
    return finish_solve(sc, eq, std::move(out), true, reach, extension_complete, out_dir,
                        "solve");
}

SolveOutcome run_verify(const Scenario& sc, const std::string& trajectory_path,
                        const std::string& out_dir) {
    SolveOutcome out;
    Equation eq = sc.build();
    out.trajectory = read_trajectory(trajectory_path);
    out.solver_ok = true;
    out.trajectory_path = trajectory_path;
    bool extended = out.trajectory.back_time() > eq.t0;
    return finish_solve(sc, eq, std::move(out), false, out.trajectory.back_time(), extended,
                        out_dir, "verify");
}

SweepOutcome run_sweep(const Scenario& sc, const std::string& param,
                       const std::vector<double>& values, int jobs,
                       const std::string& out_dir) {
    SweepOutcome out;
    out.rows.resize(values.size());
    if (values.empty()) {
        out.table_path = join_path(out_dir, "sweep.csv");
        write_text_atomic(out.table_path, "value,code,checks,left_limit,right_end,error\n");
        return out;
    }
    // validate the path up front so a typo fails fast
    {
        Scenario probe = sc;
        probe.set_param(param, values.front());
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            SweepRow row;
            row.value = values[i];
            Scenario row_sc = sc;
            row_sc.set_param(param, values[i]);
            std::ostringstream suffix;
            suffix << "row" << i << "_";
            row_sc.outputs.trajectory = suffix.str() + sc.outputs.trajectory;
            row_sc.outputs.report = suffix.str() + sc.outputs.report;
            try {
                if (!row_sc.check.theorems.empty()) {
                    CheckOutcome c = run_check(row_sc, out_dir);
                    std::ostringstream cs;
                    for (const auto& v : c.verdicts) {
                        if (cs.tellp() > 0) cs << ';';
                        cs << to_string(v.id) << '=' << to_string(v.overall);
                    }
                    row.check_summary = cs.str();
                    row.code = std::max(row.code, c.code);
                } else {
                    row.check_summary = "-";
                }
                SolveOutcome s = run_solve(row_sc, out_dir);
                row.code = std::max(row.code, s.code);
                if (s.solver_ok) {
                    row.left_limit = fmt17(s.properties.left_limit.value);
                    row.right_end = right_end_name(s.properties.right_end.kind);
                } else {
                    row.left_limit = "-";
                    row.right_end = "-";
                    row.error = "solver failure";
                }
                if (!s.expectation_failures.empty() && row.error.empty()) {
                    row.error = "expectation failed: " + s.expectation_failures.front();
                }
            } catch (const std::exception& e) {
                row.code = std::max(row.code, static_cast<int>(exit_usage));
                row.error = e.what();
                row.left_limit = "-";
                row.right_end = "-";
            }
            out.rows[i] = std::move(row);
        }
    };

    int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(values.size())));
    std::vector<std::thread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::ostringstream table;
    table << "value,code,checks,left_limit,right_end,error\n";
    for (const auto& row : out.rows) {
        table << fmt17(row.value) << ',' << row.code << ',' << row.check_summary << ','
              << row.left_limit << ',' << row.right_end << ',' << row.error << "\n";
        out.code = std::max(out.code, row.code);
    }
    out.table_path = join_path(out_dir, "sweep.csv");
    write_text_atomic(out.table_path, table.str());
    return out;
}

}  // namespace fde
