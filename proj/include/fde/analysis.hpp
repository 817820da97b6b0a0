#ifndef FDE_ANALYSIS_HPP
#define FDE_ANALYSIS_HPP

#include <optional>
#include <span>
#include <vector>

#include "fde/equation.hpp"

namespace fde {

struct BandCheck {
    bool pass = false;
    double min = 0.0, max = 0.0;
};

struct MonotoneCheck {
    bool pass = false;
    double min_slope = 0.0;
};

enum class TailStatus { converged, unresolved };

struct TailEstimate {
    double value = 0.0, spread = 0.0, slope = 0.0;
    TailStatus status = TailStatus::unresolved;
};

enum class RightEndKind { limit_to_kappa, oscillates, other };

struct RightEndClass {
    RightEndKind kind = RightEndKind::other;
    int crossings = 0;
    double estimate = 0.0;
};

// All verifiers sample knots and segment midpoints inside the window and
// evaluate through the constant extension where the window overhangs the
// trajectory domain. Window defaults cover the whole domain.

BandCheck verify_band(const Trajectory& traj, double lo, double hi, double tol);
BandCheck verify_band(const Trajectory& traj, double lo, double hi, double tol, double w_lo,
                      double w_hi);

MonotoneCheck verify_monotone(const Trajectory& traj, double tol);
MonotoneCheck verify_monotone(const Trajectory& traj, double tol, double w_lo, double w_hi);

// mean / spread / max slope over the oldest tail_fraction of the window
TailEstimate estimate_left_limit(const Trajectory& traj, double tail_fraction = 0.2);
TailEstimate estimate_left_limit(const Trajectory& traj, double tail_fraction, double w_lo,
                                 double w_hi);

// strict sign-change count of u - kappa over the newest window_fraction
RightEndClass classify_right_end(const Trajectory& traj, double kappa,
                                 double window_fraction = 0.25);
RightEndClass classify_right_end(const Trajectory& traj, double kappa, double window_fraction,
                                 double w_lo, double w_hi);

// max |rhs| on the constant trajectory at the given level
double equilibrium_residual(const Equation& eq, double level, std::span<const double> ts);

struct RigidityCheck {
    bool triggered = false;  // trajectory pinned at kappa on the window
    std::optional<bool> coef_equal, h_kappa_zero, p1_window_zero;
    double max_coef_gap = 0.0, max_h_kappa = 0.0, p1_window_sup = 0.0;
    bool consistent() const {
        return !triggered || (coef_equal.value_or(false) && h_kappa_zero.value_or(false) &&
                              p1_window_zero.value_or(false));
    }
};

// necessary conditions for a solution locked at the carrying level; a
// violation flags the locked trajectory as a numerical artifact
RigidityCheck rigidity_check_r27(const Equation& eq, const Trajectory& traj, double t0,
                                 double T);

struct PropertyReport {
    BandCheck bounds;              // left window against [0, kappa]
    double left_min = 0.0;
    bool strict_positive_left = false;
    double forward_min = 0.0;
    bool positive_forward = false;
    MonotoneCheck monotone;        // left window
    TailEstimate left_limit;
    RightEndClass right_end;
    std::vector<std::pair<double, double>> equilibrium_residuals;  // (level, residual)
};

struct AnalysisWindows {
    double left_window = 40.0;   // checks run on [t0 - left_window, t0]
    double tail_fraction = 0.2;
    double right_fraction = 0.25;
    double band_tol = 1e-9;
    double monotone_tol = 1e-10;
};

PropertyReport analyze(const Equation& eq, const Trajectory& traj,
                       const AnalysisWindows& w);

}  // namespace fde

#endif
