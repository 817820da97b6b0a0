#include "fde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fde/hypothesis.hpp"

namespace fde {

namespace {

// knots and midpoints clipped to [w_lo, w_hi], window endpoints included,
// uniform fallback where the window overhangs the domain
std::vector<double> sample_times(const Trajectory& traj, double w_lo, double w_hi) {
    std::vector<double> ts;
    ts.push_back(w_lo);
    for (std::size_t i = 0; i < traj.knot_count(); ++i) {
        double t = traj.knot_time(i);
        if (t <= w_lo || t >= w_hi) continue;
        ts.push_back(t);
        if (i + 1 < traj.knot_count()) {
            double m = 0.5 * (t + traj.knot_time(i + 1));
            if (m > w_lo && m < w_hi) ts.push_back(m);
        }
    }
    if (ts.size() < 64) {
        for (int k = 1; k < 256; ++k)
            ts.push_back(w_lo + (w_hi - w_lo) * static_cast<double>(k) / 256.0);
        std::sort(ts.begin(), ts.end());
    }
    ts.push_back(w_hi);
    return ts;
}

}  // namespace

BandCheck verify_band(const Trajectory& traj, double lo, double hi, double tol) {
    return verify_band(traj, lo, hi, tol, traj.front_time(), traj.back_time());
}

BandCheck verify_band(const Trajectory& traj, double lo, double hi, double tol, double w_lo,
                      double w_hi) {
    BandCheck out;
    out.min = std::numeric_limits<double>::infinity();
    out.max = -out.min;
    for (double t : sample_times(traj, w_lo, w_hi)) {
        double u = traj.value(t);
        out.min = std::min(out.min, u);
        out.max = std::max(out.max, u);
    }
    out.pass = out.min >= lo - tol && out.max <= hi + tol;
    return out;
}

MonotoneCheck verify_monotone(const Trajectory& traj, double tol) {
    return verify_monotone(traj, tol, traj.front_time(), traj.back_time());
}

MonotoneCheck verify_monotone(const Trajectory& traj, double tol, double w_lo, double w_hi) {
    MonotoneCheck out;
    out.min_slope = std::numeric_limits<double>::infinity();
    // stored derivative data first, midpoint slopes as a backstop
    for (std::size_t i = 0; i < traj.knot_count(); ++i) {
        double t = traj.knot_time(i);
        if (t < w_lo || t > w_hi) continue;
        out.min_slope = std::min(out.min_slope, traj.knot_deriv(i));
    }
    for (double t : sample_times(traj, w_lo, w_hi))
        out.min_slope = std::min(out.min_slope, traj.derivative(t));
    if (!std::isfinite(out.min_slope)) out.min_slope = 0.0;
    out.pass = out.min_slope >= -tol;
    return out;
}

TailEstimate estimate_left_limit(const Trajectory& traj, double tail_fraction) {
    return estimate_left_limit(traj, tail_fraction, traj.front_time(), traj.back_time());
}

TailEstimate estimate_left_limit(const Trajectory& traj, double tail_fraction, double w_lo,
                                 double w_hi) {
    if (!(tail_fraction > 0.0) || !(tail_fraction < 1.0))
        throw std::invalid_argument("estimate_left_limit: tail fraction in (0,1) required");
    TailEstimate out;
    double hi = w_lo + (w_hi - w_lo) * tail_fraction;
    double mean = 0.0, mn = std::numeric_limits<double>::infinity(), mx = -mn, slope = 0.0;
    auto ts = sample_times(traj, w_lo, hi);
    for (double t : ts) {
        double u = traj.value(t);
        mean += u;
        mn = std::min(mn, u);
        mx = std::max(mx, u);
        slope = std::max(slope, std::abs(traj.derivative(t)));
    }
    mean /= static_cast<double>(ts.size());
    out.value = mean;
    out.spread = mx - mn;
    out.slope = slope;
    out.status = (out.spread < 1e-3 * (1.0 + std::abs(mean)) && slope < 1e-4)
                     ? TailStatus::converged
                     : TailStatus::unresolved;
    return out;
}

RightEndClass classify_right_end(const Trajectory& traj, double kappa,
                                 double window_fraction) {
    return classify_right_end(traj, kappa, window_fraction, traj.front_time(),
                              traj.back_time());
}

RightEndClass classify_right_end(const Trajectory& traj, double kappa, double window_fraction,
                                 double w_lo, double w_hi) {
    RightEndClass out;
    double lo = w_hi - (w_hi - w_lo) * window_fraction;
    auto ts = sample_times(traj, lo, w_hi);
    int last_sign = 0;
    double mean = 0.0, mn = std::numeric_limits<double>::infinity(), mx = -mn, slope = 0.0;
    for (double t : ts) {
        double u = traj.value(t);
        mean += u;
        mn = std::min(mn, u);
        mx = std::max(mx, u);
        slope = std::max(slope, std::abs(traj.derivative(t)));
        double z = u - kappa;
        int sign = z > 0.0 ? 1 : (z < 0.0 ? -1 : 0);
        if (sign != 0) {
            if (last_sign != 0 && sign != last_sign) ++out.crossings;
            last_sign = sign;
        }
    }
    mean /= static_cast<double>(ts.size());
    out.estimate = mean;
    if (out.crossings >= 2) {
        out.kind = RightEndKind::oscillates;
    } else if (mx - mn < 1e-3 * (1.0 + std::abs(mean)) && slope < 1e-4 &&
               std::abs(mean - kappa) < 1e-2 * kappa) {
        out.kind = RightEndKind::limit_to_kappa;
    } else {
        out.kind = RightEndKind::other;
    }
    return out;
}

double equilibrium_residual(const Equation& eq, double level, std::span<const double> ts) {
    Trajectory flat = Trajectory::point(eq.t0, level);
    double worst = 0.0;
    for (double t : ts) worst = std::max(worst, std::abs(eval_rhs(eq, flat, t, false)));
    return worst;
}

RigidityCheck rigidity_check_r27(const Equation& eq, const Trajectory& traj, double t0,
                                 double T) {
    RigidityCheck out;
    double gap = 0.0;
    const int n = 2000;
    for (int k = 0; k <= n; ++k) {
        double t = t0 - T + T * static_cast<double>(k) / n;
        gap = std::max(gap, std::abs(traj.value(t) - eq.kappa));
    }
    out.triggered = gap < 1e-6;
    if (!out.triggered) return out;

    DeviatingForm d = as_deviating(eq);
    for (int k = 0; k <= n; ++k) {
        double t = t0 - T + T * static_cast<double>(k) / n;
        out.max_coef_gap = std::max(out.max_coef_gap, std::abs(d.p0(t) - d.p1(t)));
        out.max_h_kappa =
            std::max(out.max_h_kappa, static_cast<double>(std::abs(d.h(t, eq.kappa, eq.kappa))));
    }
    out.p1_window_sup = sup_window_integral(d.p1, d.mu1, t0, T, T / n);
    out.coef_equal = out.max_coef_gap <= 1e-12;
    out.h_kappa_zero = out.max_h_kappa <= 1e-12;
    out.p1_window_zero = out.p1_window_sup <= 1e-12;
    return out;
}

PropertyReport analyze(const Equation& eq, const Trajectory& traj, const AnalysisWindows& w) {
    PropertyReport rep;
    double left_lo = eq.t0 - w.left_window;
    rep.bounds = verify_band(traj, 0.0, eq.kappa, w.band_tol, left_lo, eq.t0);
    rep.left_min = rep.bounds.min;
    rep.strict_positive_left = rep.left_min > 0.0;
    rep.monotone = verify_monotone(traj, w.monotone_tol, left_lo, eq.t0);
    rep.left_limit = estimate_left_limit(traj, w.tail_fraction, left_lo, eq.t0);
    double b = traj.back_time();
    if (b > eq.t0) {
        BandCheck fwd = verify_band(traj, 0.0, std::numeric_limits<double>::infinity(), 0.0,
                                    eq.t0, b);
        rep.forward_min = fwd.min;
        rep.positive_forward = fwd.min > 0.0;
        rep.right_end = classify_right_end(traj, eq.kappa, w.right_fraction, eq.t0, b);
    } else {
        rep.forward_min = traj.value(eq.t0);
        rep.positive_forward = rep.forward_min > 0.0;
    }
    std::vector<double> ts;
    for (int k = 0; k <= 10; ++k) ts.push_back(eq.t0 - w.left_window + w.left_window * k / 10.0);
    for (int k = 1; k <= 10; ++k) ts.push_back(eq.t0 + (std::max(b, eq.t0 + 1.0) - eq.t0) * k / 10.0);
    rep.equilibrium_residuals.emplace_back(0.0, equilibrium_residual(eq, 0.0, ts));
    rep.equilibrium_residuals.emplace_back(eq.kappa, equilibrium_residual(eq, eq.kappa, ts));
    return rep;
}

}  // namespace fde
