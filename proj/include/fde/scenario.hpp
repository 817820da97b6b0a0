#ifndef FDE_SCENARIO_HPP
#define FDE_SCENARIO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fde/analysis.hpp"
#include "fde/hypothesis.hpp"
#include "fde/solver.hpp"

namespace fde {

struct scenario_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// scalar-or-table-or-step value from a scenario file
struct CoeffSpec {
    enum class Kind { unset, number, table, step };
    Kind kind = Kind::unset;
    double value = 0.0;
    std::vector<double> ts, vs;

    bool set() const { return kind != Kind::unset; }
    CoeffFunction to_coeff(double t0) const;  // step resolves against t0
    double as_number(const std::string& what) const;
};

struct ModelSpec {
    std::string id;               // delay-G | wavefront | logistic | deviating-general
    std::string G = "power";      // power | nicholson | mackey-glass | linear
    double p = 1.0;               // power exponent / nicholson rate / linear slope
    double a = 1.0;               // nicholson decay
    double beta = 2.0, n_exp = 10.0;  // mackey-glass
    double kappa = 1.0;
    CoeffSpec tau;                // delay-G
    double wave_speed = 1.0, r = 1.0;  // wavefront
    CoeffSpec g0;                 // logistic
    double lam_exp = 1.0;
    std::vector<std::pair<double, double>> kernel;  // (delay, mass) atoms
    double nu_delay = -1.0;       // logistic lower-limit lag; -1 = max kernel delay
    CoeffSpec p0, p1;             // deviating-general
    CoeffSpec delay0, delay1;
    std::string h = "G";          // G | zero
};

struct CheckConfig {
    std::vector<TheoremId> theorems;
    double window = 40.0;
    double grid_step = 1e-2;
};

enum class RightEndExpect { none, limit, oscillation, limit_or_oscillation };

struct VerifyConfig {
    AnalysisWindows windows;
    std::optional<double> band_lo, band_hi;  // defaults resolve to [0, kappa]
    bool expect_band = false;
    bool expect_strict_positive_left = false;
    bool expect_positive_forward = false;
    bool expect_monotone_left = false;
    std::optional<double> expect_left_limit_max;
    RightEndExpect expect_right_end = RightEndExpect::none;
};

struct OutputConfig {
    std::string trajectory = "trajectory.csv";
    std::string report = "report.txt";
    bool full_density = false;
    std::size_t max_rows = 100000;
};

struct Scenario {
    std::string name;  // source file name, echoed in reports
    ModelSpec model;
    double t0 = 0.0, c = 0.0;
    SolveConfig solve;
    CheckConfig check;
    VerifyConfig verify;
    OutputConfig outputs;

    Equation build() const;
    // addresses a scalar in the scenario, e.g. "model.tau" or "anchor.c"
    void set_param(const std::string& path, double value);
};

Scenario parse_scenario_text(const std::string& text, const std::string& name);
Scenario parse_scenario_file(const std::string& path);

}  // namespace fde

#endif
