#ifndef FDE_SOLVER_HPP
#define FDE_SOLVER_HPP

#include <string>
#include <stdexcept>
#include <vector>

#include "fde/equation.hpp"

namespace fde {

struct SolveConfig {
    double step = 1e-3;
    // truncation points a_1 > a_2 > ...; empty means t0 - 10 * 2^(n-1)
    std::vector<double> a_list;
    int max_truncations = 6;
    double compact_window = 10.0;  // Cauchy differences measured on [t0-W, t0]
    double cauchy_tol = 1e-6;
    double shoot_tol = 1e-10;      // on |u(t0) - c|
    int shoot_max_iter = 200;
    double forward_horizon = 100.0;  // absolute time b > t0
    double blow_limit = 1e100;

    std::vector<double> truncations_for(double t0) const;
};

struct blow_up_error : std::runtime_error {
    blow_up_error(const std::string& msg, double reach)
        : std::runtime_error(msg), t_reached(reach) {}
    double t_reached;
};

struct shoot_error : std::runtime_error {
    shoot_error(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg), terminal_min(lo), terminal_max(hi) {}
    double terminal_min, terminal_max;
};

struct ShootSummary {
    double a = 0.0;
    Real v = 0.0L;          // matched history level u(a); can sit far below double range
    double terminal = 0.0;  // achieved u(t0)
    int iterations = 0;
    int brackets_found = 0;
    double scan_min = 0.0, scan_max = 0.0;  // terminal-value range over the scan
};

struct SolveResult {
    Trajectory trajectory = Trajectory::point(0.0, 0.0);  // [a_N, t0]
    int n_used = 0;
    bool converged = false;
    std::vector<double> cauchy_trace;   // d_2, d_3, ...
    std::vector<ShootSummary> shots;
    bool clamp_active = false;          // truncation touched the final solve
    double clamp_excursion = 0.0;
    std::string failure_note;           // set when a later truncation level failed
};

struct IntegrationOutcome {
    Trajectory trajectory = Trajectory::point(0.0, 0.0);
    bool complete = false;
    double reach = 0.0;
};

// Classical fixed-step RK4 with cubic-Hermite dense output; delayed
// arguments resolve against the accumulating trajectory (theta-extended),
// undelayed ones against the live stage value. History must not extend past
// t_a; a constant bridge segment fills any gap.
Trajectory integrate_forward(const Equation& eq, const Trajectory& history, double t_a,
                             double t_b, double h, bool clamped, EvalStats* stats = nullptr,
                             double blow_limit = 1e100);
Trajectory integrate_forward(const Equation& eq, double constant_history, double t_a,
                             double t_b, double h, bool clamped, EvalStats* stats = nullptr,
                             double blow_limit = 1e100);

// non-throwing variant keeping whatever was integrated before a blow-up
IntegrationOutcome integrate_capture(const Equation& eq, const Trajectory& history,
                                     double t_a, double t_b, double h, bool clamped,
                                     EvalStats* stats = nullptr, double blow_limit = 1e100);

// Finds the history level v = u(a) in [0, kappa] whose truncated solve hits
// u(t0) = c, by terminal-value scan plus bracketed refinement. Multiple
// brackets resolve to the smallest v; the rest are counted in the summary.
Trajectory shoot_terminal(const Equation& eq, double a, double t0, double c,
                          const SolveConfig& cfg, ShootSummary* summary = nullptr,
                          EvalStats* stats = nullptr);

// Truncate-and-pass-to-the-limit: solve on [a_n, t0] for successive a_n and
// stop once consecutive solutions agree on the compact window.
SolveResult limit_scheme(const Equation& eq, const SolveConfig& cfg);

// continues the constructed solution past the anchor with the raw
// (untruncated) nonlinearity
Trajectory extend_forward(const SolveResult& result, const Equation& eq, double b, double h,
                          double blow_limit = 1e100);

}  // namespace fde

#endif
