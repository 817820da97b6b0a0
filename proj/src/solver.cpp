#include "fde/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fde {

std::vector<double> SolveConfig::truncations_for(double t0) const {
    if (!a_list.empty()) {
        for (std::size_t i = 0; i < a_list.size(); ++i) {
            if (!(a_list[i] < t0))
                throw std::invalid_argument("truncation points must precede the anchor");
            if (i > 0 && !(a_list[i] < a_list[i - 1]))
                throw std::invalid_argument("truncation points must decrease");
        }
        return a_list;
    }
    std::vector<double> as;
    double span = 10.0;
    for (int n = 0; n < max_truncations; ++n, span *= 2.0) as.push_back(t0 - span);
    return as;
}

namespace {

struct StageLookup {
    const Trajectory* hist;
    double t;
    Real y;
    Real operator()(double s) const {
        if (s >= t - 1e-12 * std::max(1.0, std::abs(t))) return y;
        return hist->value_ext(s);
    }
};

}  // namespace

IntegrationOutcome integrate_capture(const Equation& eq, const Trajectory& history,
                                     double t_a, double t_b, double h, bool clamped,
                                     EvalStats* stats, double blow_limit) {
    if (!(t_b > t_a)) throw std::invalid_argument("integration span must advance time");
    if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
    if (history.back_time() > t_a + 1e-12)
        throw std::invalid_argument("history extends past the integration start");

    IntegrationOutcome out;
    out.trajectory = history;
    Trajectory& traj = out.trajectory;
    if (traj.back_time() < t_a - 1e-12)
        traj.append_segment(t_a, traj.back_value_ext(), 0.0L, 0.0L);

    std::size_t steps = static_cast<std::size_t>(std::ceil((t_b - t_a) / h - 1e-9));
    traj.reserve(traj.knot_count() + steps + 1);

    auto rhs = [&](double t, Real y) {
        return detail::eval_rhs_lookup(eq, StageLookup{&traj, t, y}, t, clamped, stats);
    };

    double t = t_a;
    Real u = traj.back_value_ext();
    Real k1 = rhs(t, u);
    for (std::size_t i = 0; i < steps; ++i) {
        double t_next = (i + 1 == steps) ? t_b : t_a + static_cast<double>(i + 1) * h;
        Real hh = t_next - t;
        Real k2 = rhs(t + 0.5 * static_cast<double>(hh), u + 0.5L * hh * k1);
        Real k3 = rhs(t + 0.5 * static_cast<double>(hh), u + 0.5L * hh * k2);
        Real k4 = rhs(t_next, u + hh * k3);
        Real u_next = u + hh / 6.0L * (k1 + 2.0L * k2 + 2.0L * k3 + k4);
        if (!std::isfinite(u_next) || std::abs(u_next) > static_cast<Real>(blow_limit)) {
            out.complete = false;
            out.reach = t;
            return out;
        }
        Real d_next = rhs(t_next, u_next);
        if (!std::isfinite(d_next)) {
            out.complete = false;
            out.reach = t;
            return out;
        }
        traj.append_segment(t_next, u_next, k1, d_next);
        t = t_next;
        u = u_next;
        k1 = d_next;
    }
    out.complete = true;
    out.reach = t_b;
    return out;
}

Trajectory integrate_forward(const Equation& eq, const Trajectory& history, double t_a,
                             double t_b, double h, bool clamped, EvalStats* stats,
                             double blow_limit) {
    IntegrationOutcome out =
        integrate_capture(eq, history, t_a, t_b, h, clamped, stats, blow_limit);
    if (!out.complete) {
        std::ostringstream os;
        os << "right-hand side blew up at t = " << out.reach << " (target " << t_b << ")";
        throw blow_up_error(os.str(), out.reach);
    }
    return std::move(out.trajectory);
}

Trajectory integrate_forward(const Equation& eq, double constant_history, double t_a,
                             double t_b, double h, bool clamped, EvalStats* stats,
                             double blow_limit) {
    return integrate_forward(eq, Trajectory::point(t_a, constant_history), t_a, t_b, h,
                             clamped, stats, blow_limit);
}

namespace {

double terminal_value(const Equation& eq, double a, double t0, Real v,
                      const SolveConfig& cfg) {
    Trajectory tr = integrate_forward(eq, Trajectory::point(a, v), a, t0, cfg.step, true,
                                      nullptr, cfg.blow_limit);
    return tr.back_value();
}

}  // namespace

Trajectory shoot_terminal(const Equation& eq, double a, double t0, double c,
                          const SolveConfig& cfg, ShootSummary* summary, EvalStats* stats) {
    eq.validate();
    if (!(a < t0)) throw std::invalid_argument("shoot_terminal: a must precede t0");
    if (c < 0.0 || c > eq.kappa + 1e-12)
        throw std::invalid_argument("shoot_terminal: anchor value outside [0, kappa]");

    ShootSummary sum;
    sum.a = a;
    auto finish = [&](Real v) {
        sum.v = v;
        Trajectory tr = integrate_forward(eq, Trajectory::point(a, v), a, t0, cfg.step, true,
                                          stats, cfg.blow_limit);
        sum.terminal = tr.back_value();
        if (summary) *summary = sum;
        return tr;
    };

    // scan for the anchor mismatch sign change; keep the lowest bracket
    auto scan = [&](int n_points, Real& vl, double& fl, Real& vh, double& fh,
                    double& hit) -> int {
        int brackets = 0;
        bool have_prev = false;
        Real vprev = 0.0L;
        double fprev = 0.0;
        hit = std::numeric_limits<double>::quiet_NaN();
        for (int i = 0; i < n_points; ++i) {
            Real v = static_cast<Real>(eq.kappa) * i / (n_points - 1);
            double f = terminal_value(eq, a, t0, v, cfg) - c;
            sum.scan_min = (i == 0) ? f + c : std::min(sum.scan_min, f + c);
            sum.scan_max = (i == 0) ? f + c : std::max(sum.scan_max, f + c);
            if (std::abs(f) <= cfg.shoot_tol && std::isnan(hit))
                hit = static_cast<double>(v);
            if (have_prev && fprev * f < 0.0) {
                if (brackets == 0) {
                    vl = vprev;
                    fl = fprev;
                    vh = v;
                    fh = f;
                }
                ++brackets;
            }
            vprev = v;
            fprev = f;
            have_prev = true;
        }
        return brackets;
    };

    Real vl = 0.0L, vh = 0.0L;
    double fl = 0, fh = 0, hit = 0;
    int brackets = scan(33, vl, fl, vh, fh, hit);
    if (!std::isnan(hit)) return finish(hit);
    if (brackets == 0) brackets = scan(257, vl, fl, vh, fh, hit);
    if (!std::isnan(hit)) return finish(hit);
    sum.brackets_found = brackets;

    if (brackets == 0) {
        // secant from the two best scan anchors as a last resort
        Real v0 = 0.0L, v1 = eq.kappa;
        double f0 = terminal_value(eq, a, t0, v0, cfg) - c;
        double f1 = terminal_value(eq, a, t0, v1, cfg) - c;
        for (int i = 0; i < cfg.shoot_max_iter; ++i) {
            if (std::abs(f1 - f0) < 1e-300) break;
            Real v2 = v1 - static_cast<Real>(f1) * (v1 - v0) / (f1 - f0);
            v2 = std::clamp(v2, 0.0L, static_cast<Real>(eq.kappa));
            double f2 = terminal_value(eq, a, t0, v2, cfg) - c;
            ++sum.iterations;
            if (std::abs(f2) <= cfg.shoot_tol) return finish(v2);
            v0 = v1;
            f0 = f1;
            v1 = v2;
            f1 = f2;
        }
        std::ostringstream os;
        os << "no terminal-value bracket for c = " << c << " on [" << a << ", " << t0
           << "]; scan reached [" << sum.scan_min << ", " << sum.scan_max << "]";
        throw shoot_error(os.str(), sum.scan_min, sum.scan_max);
    }

    // bracketed refinement; geometric descent while the bracket floor is 0,
    // since the matched level can sit many orders below kappa
    for (int i = 0; i < cfg.shoot_max_iter; ++i) {
        Real probe = (vl == 0.0L) ? vh / 256.0L : 0.5L * (vl + vh);
        if (!(probe > vl) || !(probe < vh)) break;
        double f = terminal_value(eq, a, t0, probe, cfg) - c;
        ++sum.iterations;
        if (std::abs(f) <= cfg.shoot_tol) return finish(probe);
        if (fl * f < 0.0) {
            vh = probe;
            fh = f;
        } else {
            vl = probe;
            fl = f;
        }
    }
    std::ostringstream os;
    os << "terminal shooting did not converge in " << cfg.shoot_max_iter
       << " iterations on [" << a << ", " << t0 << "]; bracket [" << vl << ", " << vh
       << "], residuals [" << fl << ", " << fh << "]";
    throw shoot_error(os.str(), std::min(fl + c, fh + c), std::max(fl + c, fh + c));
}

SolveResult limit_scheme(const Equation& eq, const SolveConfig& cfg) {
    eq.validate();
    std::vector<double> as = cfg.truncations_for(eq.t0);
    SolveResult res;
    res.trajectory = Trajectory::point(eq.t0, eq.c);

    Trajectory prev = res.trajectory;
    bool have_prev = false;
    for (std::size_t n = 0; n < as.size(); ++n) {
        ShootSummary sum;
        EvalStats stats;
        Trajectory tr = Trajectory::point(eq.t0, eq.c);
        try {
            tr = shoot_terminal(eq, as[n], eq.t0, eq.c, cfg, &sum, &stats);
        } catch (const shoot_error& e) {
            // the first level failing means the scheme has nothing to offer;
            // deeper failures keep the best trajectory found so far
            if (n == 0) throw;
            res.trajectory = std::move(prev);
            res.converged = false;
            res.failure_note = e.what();
            return res;
        }
        res.shots.push_back(sum);
        res.n_used = static_cast<int>(n) + 1;
        res.clamp_active = stats.clamp_hits > 0;
        res.clamp_excursion = stats.clamp_excursion;
        if (have_prev) {
            double W = cfg.compact_window;
            double step = std::max(cfg.step, W / 20000.0);
            double d = 0.0;
            for (double t = eq.t0 - W; t <= eq.t0 + 1e-12; t += step)
                d = std::max(d, std::abs(tr.value(t) - prev.value(t)));
            res.cauchy_trace.push_back(d);
            if (d <= cfg.cauchy_tol) {
                res.trajectory = std::move(tr);
                res.converged = true;
                return res;
            }
        }
        prev = std::move(tr);
        have_prev = true;
    }
    res.trajectory = std::move(prev);
    res.converged = false;  // sequence exhausted
    return res;
}

Trajectory extend_forward(const SolveResult& result, const Equation& eq, double b, double h,
                          double blow_limit) {
    const Trajectory& tr = result.trajectory;
    if (std::abs(tr.back_time() - eq.t0) > 1e-9)
        throw std::invalid_argument("extend_forward: trajectory must end at the anchor");
    if (!(b > eq.t0)) throw std::invalid_argument("extend_forward: b must exceed t0");
    return integrate_forward(eq, tr, eq.t0, b, h, false, nullptr, blow_limit);
}

}  // namespace fde
