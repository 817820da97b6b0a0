#ifndef FDE_HYPOTHESIS_HPP
#define FDE_HYPOTHESIS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fde/equation.hpp"

namespace fde {

// thrown when a construction needs more history than the working window holds
struct window_error : std::runtime_error {
    window_error(const std::string& msg, double needed)
        : std::runtime_error(msg), needed_extension(needed) {}
    double needed_extension;
};

// max over sampled t in [t0-T, t0] of the integral of p over [lower_map(t), t]
double sup_window_integral(const CoeffFunction& p, const CoeffFunction& lower_map, double t0,
                           double T, double grid_step);

struct CheckValue {
    bool pass;
    double value;
};

// smallness test: windowed sup of the p1 memory integral against 1/e
CheckValue check_one_over_e(const CoeffFunction& p1, const CoeffFunction& mu1, double t0,
                            double T, double grid_step);

// smallest root of lambda = exp(lambda * p_star) in [1, e]
double lambda_fixed_point(double p_star);

// comparison function t -> exp(rate * integral_t^t0 p1), tabulated on the
// working window; equals 1 at t0 and is nonincreasing
CoeffFunction gamma_test(const CoeffFunction& p1, double t0, double rate, double T = 40.0,
                         double grid_step = 1e-2);

struct MarginCheck {
    bool pass;
    double worst_margin;
};

// p0(t) >= p1(t) * exp(rate * integral_{mu1(t)}^t p1) on the window
MarginCheck check_comparison(const CoeffFunction& p0, const CoeffFunction& p1,
                             const CoeffFunction& mu1, double t0, double T, double rate,
                             double grid_step);

// windowed sup of the exponentially weighted memory integral
double compute_M_mu(const CoeffFunction& p1, const CoeffFunction& mu0,
                    const CoeffFunction& mu1, double t0, double T, double rate,
                    double grid_step);

enum class TheoremId { T2_5, T2_6, T2_5r, T2_6r, T2_13, T2_14, C2_3, C2_4, C2_5, T6_1, T6_2, R2_7 };

std::string to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(const std::string& s);

struct Interval {
    double lo = 0.0, hi = 0.0;
    bool lo_closed = false, hi_closed = false;
    bool empty = true;
    bool contains(double c) const;
    std::string str() const;
};

// admissible anchor-value interval for the existence statements
Interval admissible_c_interval(TheoremId id, double kappa, double M);

struct MonotoneConditions {
    MarginCheck dominance;        // p0 >= p1
    MarginCheck deviation_order;  // p1 * (mu0 - mu1) >= 0
};
MonotoneConditions check_monotone_conditions(const CoeffFunction& p0, const CoeffFunction& p1,
                                             const CoeffFunction& mu0, const CoeffFunction& mu1,
                                             double t0, double T, double grid_step);

struct GrowthCheck {
    bool pass;
    std::vector<double> xs, rs;  // trace of (1/x) * integral of q(., x)
};
// sublinearity certificate for the growth majorant over [t0, b]
GrowthCheck check_growth_35(const GrowthMajorant& q, double t0, double b,
                            std::vector<double> xs = {});

// 1/(t0+1-t)^2; integrates to exactly 1 over (-inf, t0]
CoeffFunction build_phi(double t0);

// memory map from the cumulative-integral equation
//   integral_{omega(t)}^t (g + phi) = level
// solved by monotone bisection; tabulated on the window, frozen past t0
CoeffFunction build_omega(const CoeffFunction& g, double t0, double T, double level,
                          double grid_step = 1e-2);

// Memory map sized to the weighted memory bound: sigma solves
//   integral_{sigma(t)}^t (P1 + eps * phi) = M + eps,
// where P1(t) = p1(t) exp(rate * integral_{mu1(t)}^t p1). The slack eps is
// half the logarithmic headroom of c below kappa e^{-M} (floored at 1e-6),
// so c <= kappa e^{-(M+eps)} still holds while sigma(t) stays behind any
// deviation whose weighted integral is bounded by M.
struct SigmaConstruction {
    CoeffFunction sigma;
    double epsilon = 0.0;
    double M_sigma = 0.0;  // windowed sup of the weighted integral up from sigma
};
SigmaConstruction build_sigma(const CoeffFunction& p1, const CoeffFunction& mu1, double t0,
                              double T, double M, double c, double kappa, double rate,
                              double grid_step = 1e-2);

enum class DivergenceClass { diverges_on_window, bounded_on_window, indeterminate };
struct DivergenceCheck {
    DivergenceClass cls;
    std::vector<double> integrals;
};
struct DivergenceConfig {
    double ratio_threshold = 4.0;
    double increment_floor = 1e-8;
    double decay_ratio = 0.75;
};
// classifies the growth of integral_{t0-Tk}^{t0} p across an increasing
// window sequence; geometric decay of the increments reads as bounded
DivergenceCheck check_limit_divergence(const CoeffFunction& p, double t0,
                                       std::vector<double> Ts = {10, 20, 40, 80},
                                       const DivergenceConfig& cfg = {});

struct LimsupCheck {
    bool positive;
    double value;
};
// max of integral_{omega(t)}^t p over the oldest third of the window
LimsupCheck check_window_limsup(const CoeffFunction& p, const CoeffFunction& omega, double t0,
                                double T, double grid_step);

enum class CondStatus { pass, pass_on_window, fail, indeterminate };
std::string to_string(CondStatus s);

struct ConditionResult {
    std::string id;
    CondStatus status = CondStatus::indeterminate;
    double value = 0.0;
    double threshold = 0.0;
    int or_group = 0;  // >0: group passes when any member passes
    std::string note;
};

struct TheoremVerdict {
    TheoremId id = TheoremId::T2_5;
    std::vector<ConditionResult> conditions;
    std::optional<double> M_mu, M_tau, lambda_star, p_star;
    std::optional<Interval> c_interval;
    std::optional<bool> c_inside;
    CondStatus overall = CondStatus::indeterminate;
    std::string caveat;

    bool passed() const {
        return overall == CondStatus::pass || overall == CondStatus::pass_on_window;
    }
};

// evaluates every constituent condition of the selected statement on the
// truncated window and assembles the verdict
TheoremVerdict theorem_verdict(const Equation& eq, TheoremId which, double T,
                               double grid_step);

}  // namespace fde

#endif
