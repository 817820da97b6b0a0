#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "fde/runner.hpp"

using namespace fde;

namespace {

std::string scenario_dir() { return FDE_SCENARIO_DIR; }

std::string temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("fde_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kMini = R"(model {
  id = delay-G
  G = power
  p = 1.0
  kappa = 1.0
  tau = 0.25
}
anchor {
  t0 = 0.0
  c = 0.2
}
check {
  theorems = T6.1
  window = 20
  grid_step = 0.02
}
)";

}  // namespace

TEST_CASE("scenario parsing: values, tables, defaults") {
    Scenario sc = parse_scenario_text(kMini, "mini");
    CHECK(sc.model.id == "delay-G");
    CHECK(sc.model.p == 1.0);
    CHECK(sc.model.tau.as_number("tau") == 0.25);
    CHECK(sc.c == 0.2);
    CHECK(sc.check.theorems.size() == 1);
    CHECK(sc.check.theorems.front() == TheoremId::T6_1);
    CHECK(sc.solve.step == 1e-3);  // untouched defaults
    Equation eq = sc.build();
    CHECK(eq.model == "delay-G");
    CHECK(eq.kappa == 1.0);

    Scenario tabled = parse_scenario_text(
        "model {\n id = delay-G\n G = power\n p = 1\n kappa = 1\n"
        " tau = (0,0.2) (10,0.4)\n}\nanchor {\n t0 = 0\n c = 0.1\n}\n",
        "tabled");
    Equation te = tabled.build();
    DeviatingForm d = as_deviating(te);
    CHECK(d.mu0(0.0) == doctest::Approx(-0.2));
    CHECK(d.mu0(10.0) == doctest::Approx(9.6));
}

TEST_CASE("scenario parsing: diagnostics carry file and line") {
    CHECK_THROWS_WITH_AS(parse_scenario_text("model {\n bogus = 1\n}\n", "f.scn"),
                         doctest::Contains("f.scn:2: unknown key 'bogus'"), scenario_error);
    CHECK_THROWS_WITH_AS(parse_scenario_text("weird {\n}\n", "f.scn"),
                         doctest::Contains("unknown section"), scenario_error);
    CHECK_THROWS_AS(parse_scenario_text("model {\n id = delay-G\n", "f.scn"), scenario_error);
    CHECK_THROWS_AS(parse_scenario_text("anchor {\n t0 = 0\n c = 0\n}\n", "f.scn"),
                    scenario_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario_text("model {\n id = x\n}\nanchor {\n t0 = zero\n}\n", "f.scn"),
        doctest::Contains("expected a number"), scenario_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario_text(
            "model {\n id = x\n}\nanchor {\n c = 0\n}\ncheck {\n theorems = T9.9\n}\n",
            "f.scn"),
        doctest::Contains("unknown theorem id"), scenario_error);
}

TEST_CASE("parameter paths address scalars") {
    Scenario sc = parse_scenario_text(kMini, "mini");
    sc.set_param("model.tau", 0.4);
    CHECK(sc.model.tau.as_number("tau") == 0.4);
    sc.set_param("anchor.c", 0.11);
    CHECK(sc.c == 0.11);
    sc.set_param("solve.step", 5e-3);
    CHECK(sc.solve.step == 5e-3);
    CHECK_THROWS_AS(sc.set_param("model.nope", 1.0), scenario_error);
}

TEST_CASE("run_check writes a deterministic verdict report") {
    Scenario sc = parse_scenario_text(kMini, "mini");
    sc.outputs.report = "mini_check.txt";
    std::string dir = temp_dir("check");
    CheckOutcome a = run_check(sc, dir);
    CHECK(a.code == exit_ok);
    CHECK(a.verdicts.size() == 1);
    CHECK(a.verdicts.front().passed());
    std::string first = slurp(a.report_path);
    CheckOutcome b = run_check(sc, dir);
    CHECK(slurp(b.report_path) == first);  // byte-identical rerun
    CHECK(first.find("c-interval: (0,") != std::string::npos);
    CHECK(first.find("exit-code: 0") != std::string::npos);

    // an anchor outside the admissible interval flips the exit code even
    // though the hypothesis rows themselves still pass
    Scenario out_of_range = sc;
    out_of_range.c = 0.9;  // above exp(-0.25)
    CheckOutcome c = run_check(out_of_range, dir);
    CHECK(c.code == exit_check_failed);
    CHECK(c.verdicts.front().passed());
    CHECK(c.verdicts.front().c_inside.has_value());
    CHECK_FALSE(*c.verdicts.front().c_inside);
    CHECK(slurp(c.report_path).find("c-inside: no") != std::string::npos);
}

TEST_CASE("empty theorem list yields an empty passing report") {
    Scenario sc = parse_scenario_text(kMini, "mini");
    sc.check.theorems.clear();
    std::string dir = temp_dir("empty_check");
    CheckOutcome out = run_check(sc, dir);
    CHECK(out.code == exit_ok);
    CHECK(out.verdicts.empty());
    CHECK(out.report_text.find("[check") == std::string::npos);
}

TEST_CASE("blow-up scenario: solver failure code with partial outputs") {
    Scenario sc = parse_scenario_file(scenario_dir() + "/blowup.scn");
    std::string dir = temp_dir("blowup");
    SolveOutcome out = run_solve(sc, dir);
    CHECK(out.code == exit_solver_failed);
    CHECK_FALSE(out.solver_ok);
    CHECK(out.trajectory.back_time() < sc.solve.forward_horizon);  // reach, not horizon
    CHECK(out.report_text.find("failure: blow-up before the forward horizon") !=
          std::string::npos);
    CHECK(std::filesystem::exists(out.trajectory_path));  // partial still written
}

TEST_CASE("trajectory files round-trip through write and read") {
    Trajectory tr = Trajectory::sample([](double t) { return std::tanh(t); },
                                       [](double t) { return 1.0 - std::tanh(t) * std::tanh(t); },
                                       -5.0, 5.0, 1000);
    std::string dir = temp_dir("traj");
    std::string path = dir + "/t.csv";
    write_trajectory(path, tr, 100000, true);
    Trajectory back = read_trajectory(path);
    CHECK(back.knot_count() == tr.knot_count());
    for (double t = -5.0; t <= 5.0; t += 0.173)
        CHECK(back.value(t) == doctest::Approx(tr.value(t)).epsilon(1e-12));

    // thinning keeps the endpoints
    write_trajectory(path, tr, 101, false);
    Trajectory thin = read_trajectory(path);
    CHECK(thin.knot_count() <= 102);
    CHECK(thin.front_time() == tr.front_time());
    CHECK(thin.back_time() == tr.back_time());
}

TEST_CASE("sweep: rows independent, ordered, and failure-tolerant") {
    Scenario sc = parse_scenario_text(kMini, "mini");
    sc.solve.forward_horizon = 5.0;
    sc.solve.a_list = {-5.0, -10.0, -20.0};
    sc.solve.cauchy_tol = 1e-3;
    std::string dir = temp_dir("sweep");
    SweepOutcome out = run_sweep(sc, "model.tau", {0.1, 0.2, 0.3}, 3, dir);
    REQUIRE(out.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(out.rows[i].value == doctest::Approx(0.1 * (i + 1)));
        CHECK(out.rows[i].code == exit_ok);
        CHECK(out.rows[i].check_summary.find("T6.1=pass") != std::string::npos);
    }
    std::string table = slurp(out.table_path);
    CHECK(table.find("value,code,checks,left_limit,right_end,error") == 0);

    SweepOutcome empty = run_sweep(sc, "model.tau", {}, 2, dir);
    CHECK(empty.rows.empty());
    CHECK(empty.code == exit_ok);

    // a bad row records its error and the sweep continues
    SweepOutcome mixed = run_sweep(sc, "model.tau", {0.2, -1.0}, 2, dir);
    REQUIRE(mixed.rows.size() == 2);
    CHECK(mixed.rows[0].code == exit_ok);
    CHECK(mixed.rows[1].code != exit_ok);
    CHECK_FALSE(mixed.rows[1].error.empty());
}

TEST_CASE("cli binary: usage errors and check flow") {
    std::string bin = FDE_BIN_PATH;
    std::string dir = temp_dir("cli");
    std::string cmd_bad = bin + " check --scenario /nonexistent.scn --out-dir " + dir +
                          " > /dev/null 2>&1";
    int rc_bad = std::system(cmd_bad.c_str());
    CHECK(WEXITSTATUS(rc_bad) == exit_usage);

    std::string a1 = scenario_dir() + "/a1.scn";
    std::string cmd = bin + " check --scenario " + a1 + " --out-dir " + dir +
                      " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == exit_ok);
    CHECK(std::filesystem::exists(dir + "/check_a1_report.txt"));
}
