#include "fde/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "fde/quad.hpp"

namespace fde {

namespace {

constexpr double kIneqTol = 1e-12;   // slack on the favorable side
constexpr double kPosFloor = 1e-9;   // "strictly positive" at desk scale
constexpr double kQuadTol = 1e-10;

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return xs;
}

// [t0 - T, t0] inclusive
std::vector<double> left_grid(double t0, double T, double step) {
    std::size_t n = static_cast<std::size_t>(std::ceil(T / step - 1e-9));
    std::vector<double> ts(n + 1);
    for (std::size_t k = 0; k < n; ++k) ts[k] = t0 - T + static_cast<double>(k) * step;
    ts[n] = t0;
    return ts;
}

// (t0, t0 + T]
std::vector<double> forward_grid(double t0, double T, double step) {
    std::size_t n = static_cast<std::size_t>(std::ceil(T / step - 1e-9));
    std::vector<double> ts(n);
    for (std::size_t k = 0; k + 1 < n; ++k) ts[k] = t0 + static_cast<double>(k + 1) * step;
    if (n > 0) ts[n - 1] = t0 + T;
    return ts;
}

}  // namespace

double sup_window_integral(const CoeffFunction& p, const CoeffFunction& lower_map, double t0,
                           double T, double grid_step) {
    double sup = 0.0;
    for (double t : left_grid(t0, T, grid_step)) {
        double lo = lower_map(t);
        if (lo > t) {
            std::ostringstream os;
            os << "lower map ahead of t at t=" << t;
            throw model_error(os.str());
        }
        sup = std::max(sup, integrate(p, lo, t, kQuadTol));
    }
    return sup;
}

CheckValue check_one_over_e(const CoeffFunction& p1, const CoeffFunction& mu1, double t0,
                            double T, double grid_step) {
    double sup = sup_window_integral(p1, mu1, t0, T, grid_step);
    return {sup <= 1.0 / std::exp(1.0) + kIneqTol, sup};
}

double lambda_fixed_point(double p_star) {
    const double inv_e = 1.0 / std::exp(1.0);
    if (p_star < -kIneqTol || p_star > inv_e + 1e-9)
        throw std::invalid_argument("lambda_fixed_point: p_star outside [0, 1/e]");
    p_star = std::clamp(p_star, 0.0, inv_e);
    if (p_star == 0.0) return 1.0;
    double lo = 1.0, hi = std::exp(1.0);
    auto g = [p_star](double lam) { return lam - std::exp(lam * p_star); };
    // g(lo) <= 0 <= g(hi); the upward crossing is the smaller root
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        double mid = 0.5 * (lo + hi);
        (g(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

CoeffFunction gamma_test(const CoeffFunction& p1, double t0, double rate, double T,
                         double grid_step) {
    if (rate < 1.0 - kIneqTol || rate > std::exp(1.0) + kIneqTol)
        throw std::invalid_argument("gamma_test: rate outside [1, e]");
    BackwardAntiderivative anti(p1, t0 - T, t0, grid_step, 1e-12);
    auto ts = left_grid(t0, T, grid_step);
    std::vector<double> vs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) vs[i] = std::exp(rate * anti.from(ts[i]));
    return CoeffFunction::table(std::move(ts), std::move(vs));
}

MarginCheck check_comparison(const CoeffFunction& p0, const CoeffFunction& p1,
                             const CoeffFunction& mu1, double t0, double T, double rate,
                             double grid_step) {
    double worst = std::numeric_limits<double>::infinity();
    for (double t : left_grid(t0, T, grid_step)) {
        double lo = mu1(t);
        if (lo > t) throw model_error("check_comparison: mu1 ahead of t");
        double margin = p0(t) - p1(t) * std::exp(rate * integrate(p1, lo, t, kQuadTol));
        worst = std::min(worst, margin);
    }
    return {worst >= -kIneqTol, worst};
}

double compute_M_mu(const CoeffFunction& p1, const CoeffFunction& mu0,
                    const CoeffFunction& mu1, double t0, double T, double rate,
                    double grid_step) {
    auto weighted = [&](double s) {
        double lo = mu1(s);
        if (lo > s) throw model_error("compute_M_mu: mu1 ahead of s");
        return p1(s) * std::exp(rate * integrate(p1, lo, s, 1e-12));
    };
    double sup = 0.0;
    for (double t : left_grid(t0, T, grid_step)) {
        double lo = mu0(t);
        if (lo > t) throw model_error("compute_M_mu: mu0 ahead of t");
        sup = std::max(sup, integrate(weighted, lo, t, kQuadTol));
    }
    return sup;
}

std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::T2_5: return "T2.5";
        case TheoremId::T2_6: return "T2.6";
        case TheoremId::T2_5r: return "T2.5r";
        case TheoremId::T2_6r: return "T2.6r";
        case TheoremId::T2_13: return "T2.13";
        case TheoremId::T2_14: return "T2.14";
        case TheoremId::C2_3: return "C2.3";
        case TheoremId::C2_4: return "C2.4";
        case TheoremId::C2_5: return "C2.5";
        case TheoremId::T6_1: return "T6.1";
        case TheoremId::T6_2: return "T6.2";
        case TheoremId::R2_7: return "R2.7";
    }
    return "?";
}

std::optional<TheoremId> theorem_from_string(const std::string& s) {
    static const std::pair<const char*, TheoremId> table[] = {
        {"T2.5", TheoremId::T2_5},   {"T2.6", TheoremId::T2_6},
        {"T2.5r", TheoremId::T2_5r}, {"T2.6r", TheoremId::T2_6r},
        {"T2.13", TheoremId::T2_13}, {"T2.14", TheoremId::T2_14},
        {"C2.3", TheoremId::C2_3},   {"C2.4", TheoremId::C2_4},
        {"C2.5", TheoremId::C2_5},   {"T6.1", TheoremId::T6_1},
        {"T6.2", TheoremId::T6_2},   {"R2.7", TheoremId::R2_7},
    };
    for (const auto& [name, id] : table)
        if (s == name) return id;
    return std::nullopt;
}

bool Interval::contains(double c) const {
    if (empty) return false;
    bool above = lo_closed ? c >= lo : c > lo;
    bool below = hi_closed ? c <= hi : c < hi;
    return above && below;
}

std::string Interval::str() const {
    if (empty) return "(empty)";
    std::ostringstream os;
    os.precision(17);
    os << (lo_closed ? '[' : '(') << lo << ',' << hi << (hi_closed ? ']' : ')');
    return os.str();
}

Interval admissible_c_interval(TheoremId id, double kappa, double M) {
    if (!(kappa > 0.0)) throw std::invalid_argument("admissible_c_interval: kappa <= 0");
    if (M < 0.0) throw std::invalid_argument("admissible_c_interval: M < 0");
    Interval iv;
    iv.empty = false;
    iv.lo = 0.0;
    switch (id) {
        case TheoremId::T2_5:
            iv.hi = kappa * std::exp(-M);
            iv.lo_closed = true;
            iv.hi_closed = false;
            break;
        case TheoremId::T2_6:
        case TheoremId::T2_6r:
            iv.hi = kappa;
            iv.lo_closed = true;
            iv.hi_closed = true;
            break;
        case TheoremId::T2_5r:
            iv.hi = kappa * std::exp(-M);
            iv.lo_closed = false;
            iv.hi_closed = false;
            break;
        case TheoremId::T6_1:
            iv.hi = kappa * std::exp(-M);
            iv.lo_closed = false;
            iv.hi_closed = true;
            break;
        case TheoremId::T6_2:
            iv.hi = kappa;
            iv.lo_closed = false;
            iv.hi_closed = false;
            break;
        default:
            throw std::invalid_argument("admissible_c_interval: no anchor interval for " +
                                        to_string(id));
    }
    return iv;
}

MonotoneConditions check_monotone_conditions(const CoeffFunction& p0, const CoeffFunction& p1,
                                             const CoeffFunction& mu0, const CoeffFunction& mu1,
                                             double t0, double T, double grid_step) {
    double worst_dom = std::numeric_limits<double>::infinity();
    double worst_ord = std::numeric_limits<double>::infinity();
    for (double t : left_grid(t0, T, grid_step)) {
        worst_dom = std::min(worst_dom, p0(t) - p1(t));
        worst_ord = std::min(worst_ord, p1(t) * (mu0(t) - mu1(t)));
    }
    return {{worst_dom >= -kIneqTol, worst_dom}, {worst_ord >= -kIneqTol, worst_ord}};
}

GrowthCheck check_growth_35(const GrowthMajorant& q, double t0, double b,
                            std::vector<double> xs) {
    if (!(b > t0)) throw std::invalid_argument("check_growth_35: b <= t0");
    if (xs.empty())
        for (int k = 0; k <= 6; ++k) xs.push_back(std::pow(10.0, k));
    GrowthCheck out;
    out.xs = xs;
    for (double x : xs) {
        double I = integrate([&](double s) { return q(s, x); }, t0, b, kQuadTol);
        out.rs.push_back(I / x);
    }
    // all-zero majorant is trivially sublinear
    bool all_zero = std::all_of(out.rs.begin(), out.rs.end(),
                                [](double r) { return std::abs(r) <= 1e-15; });
    if (all_zero) {
        out.pass = true;
        return out;
    }
    std::size_t peak = static_cast<std::size_t>(
        std::max_element(out.rs.begin(), out.rs.end()) - out.rs.begin());
    bool decreasing = true;
    for (std::size_t k = peak; k + 1 < out.rs.size(); ++k)
        if (out.rs[k + 1] > out.rs[k] * (1.0 + 1e-12) + 1e-15) decreasing = false;
    out.pass = decreasing && out.rs.back() < 1e-3 * out.rs.front();
    return out;
}

CoeffFunction build_phi(double t0) { return CoeffFunction::phi(t0); }

namespace {

// solves integral_{w}^{t} integrand = level for w at each sampled t; the
// integrand must be strictly positive so the antiderivative is monotone
CoeffFunction omega_core(const CoeffFunction& integrand, double t0, double T, double level,
                         double grid_step) {
    if (!(level > 0.0)) throw std::invalid_argument("memory map: level must be positive");
    // per-cell quadrature keeps from() accurate whatever the grid, so the
    // grid only has to stay small enough for cheap lookups
    auto grid_for = [&](double e) { return std::max(std::min(grid_step, 0.25), e / 4000.0); };
    double ext = std::max(2.0 * T, 10.0);
    auto anti = std::make_unique<BackwardAntiderivative>(integrand, t0 - ext, t0,
                                                         grid_for(ext));
    // the deepest point any omega(t) can need is bounded once the cumulative
    // integral from the far end exceeds level + total window mass
    double need = level + anti->from(t0 - T);
    while (anti->from(t0 - ext) < need + kIneqTol) {
        double prev = anti->from(t0 - ext);
        double next_ext = 2.0 * ext;
        auto wider = std::make_unique<BackwardAntiderivative>(integrand, t0 - next_ext, t0,
                                                              grid_for(next_ext));
        double gained = wider->from(t0 - next_ext) - prev;
        anti = std::move(wider);
        ext = next_ext;
        if (gained < 1e-12 || ext > 1e9) {
            std::ostringstream os;
            os << "window too short: cumulative integral saturates at "
               << anti->from(t0 - ext) << " < required " << need
               << " (searched back to t0-" << ext << ")";
            throw window_error(os.str(), ext);
        }
    }
    auto ts = left_grid(t0, T, grid_step);
    std::vector<double> ws(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double t = ts[i];
        double target = level + anti->from(t);  // want anti.from(w) == target
        double lo = t0 - ext, hi = t;
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            double mid = 0.5 * (lo + hi);
            (anti->from(mid) >= target ? lo : hi) = mid;
        }
        ws[i] = 0.5 * (lo + hi);
    }
    return CoeffFunction::table(std::move(ts), std::move(ws));
}

}  // namespace

CoeffFunction build_omega(const CoeffFunction& g, double t0, double T, double level,
                          double grid_step) {
    return omega_core(CoeffFunction::sum(g, CoeffFunction::phi(t0)), t0, T, level, grid_step);
}

SigmaConstruction build_sigma(const CoeffFunction& p1, const CoeffFunction& mu1, double t0,
                              double T, double M, double c, double kappa, double rate,
                              double grid_step) {
    if (!(kappa > 0.0) || M < 0.0)
        throw std::invalid_argument("build_sigma: kappa must be positive and M >= 0");
    if (!(c > 0.0) || !(c < kappa * std::exp(-M)))
        throw std::invalid_argument(
            "build_sigma: anchor value must sit strictly inside (0, kappa e^{-M})");
    SigmaConstruction out;
    out.epsilon = std::max(1e-6, 0.5 * (std::log(kappa / c) - M));

    // weighted coefficient, tabulated over a window deep enough for the
    // bisection to search past the sampled range
    auto ts = left_grid(t0, 2.0 * T, grid_step);
    std::vector<double> vs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double s = ts[i];
        double lo = mu1(s);
        if (lo > s) throw model_error("build_sigma: mu1 ahead of s");
        vs[i] = p1(s) * std::exp(rate * integrate(p1, lo, s, 1e-12));
    }
    CoeffFunction weighted = CoeffFunction::table(std::move(ts), std::move(vs));

    CoeffFunction integrand = CoeffFunction::sum(
        weighted,
        CoeffFunction::product(CoeffFunction::constant(out.epsilon), CoeffFunction::phi(t0)));
    out.sigma = omega_core(integrand, t0, T, M + out.epsilon, grid_step);

    double sup = 0.0;
    for (double t : left_grid(t0, T, grid_step))
        sup = std::max(sup, integrate(weighted, out.sigma(t), t, kQuadTol));
    out.M_sigma = sup;
    return out;
}

DivergenceCheck check_limit_divergence(const CoeffFunction& p, double t0,
                                       std::vector<double> Ts, const DivergenceConfig& cfg) {
    DivergenceCheck out;
    for (double T : Ts) out.integrals.push_back(integrate(p, t0 - T, t0, 1e-9));
    const auto& I = out.integrals;
    if (I.size() < 2) {
        out.cls = DivergenceClass::indeterminate;
        return out;
    }
    std::vector<double> d;
    for (std::size_t k = 1; k < I.size(); ++k) d.push_back(I[k] - I[k - 1]);
    if (std::abs(I.back()) <= 1e-12 || d.back() <= cfg.increment_floor) {
        out.cls = DivergenceClass::bounded_on_window;
        return out;
    }
    bool geometric = true;
    for (std::size_t k = 1; k < d.size(); ++k)
        if (d[k] > cfg.decay_ratio * d[k - 1] + 1e-15) geometric = false;
    if (geometric && d.size() >= 2) {
        out.cls = DivergenceClass::bounded_on_window;
        return out;
    }
    double ratio = I.back() / std::max(I.front(), 1e-300);
    bool no_plateau = std::all_of(d.begin(), d.end(),
                                  [&](double x) { return x >= cfg.increment_floor; });
    if (ratio > cfg.ratio_threshold && no_plateau)
        out.cls = DivergenceClass::diverges_on_window;
    else
        out.cls = DivergenceClass::indeterminate;
    return out;
}

LimsupCheck check_window_limsup(const CoeffFunction& p, const CoeffFunction& omega, double t0,
                                double T, double grid_step) {
    double best = -std::numeric_limits<double>::infinity();
    double lo_t = t0 - T, hi_t = t0 - 2.0 * T / 3.0;
    std::size_t n = static_cast<std::size_t>(std::ceil((hi_t - lo_t) / grid_step - 1e-9));
    for (std::size_t k = 0; k <= n; ++k) {
        double t = (k == n) ? hi_t : lo_t + static_cast<double>(k) * grid_step;
        double w = omega(t);
        if (w > t) throw model_error("check_window_limsup: omega ahead of t");
        best = std::max(best, integrate(p, w, t, kQuadTol));
    }
    return {best > kPosFloor, best};
}

std::string to_string(CondStatus s) {
    switch (s) {
        case CondStatus::pass: return "pass";
        case CondStatus::pass_on_window: return "pass-on-window";
        case CondStatus::fail: return "fail";
        case CondStatus::indeterminate: return "indeterminate";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// theorem_verdict

namespace {

struct Sampler {
    double t0, T, step;
    double kappa;
    std::vector<double> left, fwd;

    Sampler(double t0, double T, double step, double kappa)
        : t0(t0), T(T), step(step), kappa(kappa),
          left(left_grid(t0, T, step)), fwd(forward_grid(t0, T, step)) {}
};

CondStatus ineq_status(double worst_margin) {
    return worst_margin >= -kIneqTol ? CondStatus::pass : CondStatus::fail;
}

// min over sampled t,x,y of h on a box
double min_h_box(const DeviatingForm& d, const std::vector<double>& ts, double x_lo,
                 double x_hi, double y_lo, double y_hi) {
    auto xs = linspace(x_lo, x_hi, 17);
    auto ys = linspace(y_lo, y_hi, 17);
    double worst = std::numeric_limits<double>::infinity();
    for (double t : ts)
        for (double x : xs)
            for (double y : ys)
                worst = std::min(worst, static_cast<double>(d.h(t, x, y)));
    return worst;
}

double max_abs_h00(const DeviatingForm& d, const std::vector<double>& ts) {
    double worst = 0.0;
    for (double t : ts)
        worst = std::max(worst, static_cast<double>(std::abs(d.h(t, 0.0, 0.0))));
    return worst;
}

double max_retardation_violation(std::initializer_list<const CoeffFunction*> maps,
                                 const std::vector<double>& ts) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const CoeffFunction* m : maps)
        for (double t : ts) worst = std::max(worst, (*m)(t) - t);
    return worst;
}

// worst of q(t,|x|+|y|) - h(t,x,y) sgn(x) on the forward window
double majorant_margin(const DeviatingForm& d, const std::vector<double>& ts, double kappa) {
    auto xs = linspace(-2.0 * kappa, 2.0 * kappa, 17);
    double worst = std::numeric_limits<double>::infinity();
    for (double t : ts)
        for (double x : xs)
            for (double y : xs) {
                double lhs = d.h(t, x, y) * (x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0));
                worst = std::min(worst, (*d.q)(t, std::abs(x) + std::abs(y)) - lhs);
            }
    return worst;
}

struct Builder {
    TheoremVerdict v;

    void add(std::string id, CondStatus st, double value, double threshold, int group = 0,
             std::string note = "") {
        v.conditions.push_back({std::move(id), st, value, threshold, group, std::move(note)});
    }

    void finish() {
        bool any_window = false, any_fail = false, any_indet = false;
        std::map<int, bool> group_pass, group_seen;
        for (const auto& c : v.conditions) {
            bool ok = c.status == CondStatus::pass || c.status == CondStatus::pass_on_window;
            if (ok && c.status == CondStatus::pass_on_window) any_window = true;
            if (c.or_group > 0) {
                group_seen[c.or_group] = true;
                if (ok) group_pass[c.or_group] = true;
                continue;
            }
            if (c.status == CondStatus::fail) any_fail = true;
            if (c.status == CondStatus::indeterminate) any_indet = true;
        }
        for (const auto& [g, seen] : group_seen)
            if (!group_pass[g]) any_fail = true;
        if (any_fail)
            v.overall = CondStatus::fail;
        else if (any_indet)
            v.overall = CondStatus::indeterminate;
        else
            v.overall = any_window ? CondStatus::pass_on_window : CondStatus::pass;
    }
};

// shared block: one-over-e, lambda*, comparison, memory sup, M_mu
struct ComparisonBundle {
    double p_star = 0.0;
    double lambda_star = 1.0;
    CheckValue one_over_e{};
    MarginCheck comparison{};
    double memory_sup = 0.0;
    double M = 0.0;
};

ComparisonBundle comparison_bundle(const DeviatingForm& d, const Sampler& s) {
    ComparisonBundle b;
    b.one_over_e = check_one_over_e(d.p1, d.mu1, s.t0, s.T, s.step);
    b.p_star = b.one_over_e.value;
    double inv_e = 1.0 / std::exp(1.0);
    double rate = std::exp(1.0);
    if (b.one_over_e.pass) {
        b.lambda_star = lambda_fixed_point(std::min(b.p_star, inv_e));
        rate = b.lambda_star;
    } else {
        b.lambda_star = std::exp(1.0);
    }
    b.comparison = check_comparison(d.p0, d.p1, d.mu1, s.t0, s.T, rate, s.step);
    b.memory_sup = sup_window_integral(d.p1, d.mu0, s.t0, s.T, s.step);
    b.M = compute_M_mu(d.p1, d.mu0, d.mu1, s.t0, s.T, rate, s.step);
    return b;
}

void add_growth_rows(Builder& b, const DeviatingForm& d, const Sampler& s) {
    if (!d.q) {
        b.add("growth-majorant-valid", CondStatus::indeterminate, 0.0, 0.0, 0,
              "no growth majorant attached to the model");
        b.add("growth-sublinear", CondStatus::indeterminate, 0.0, 0.0, 0,
              "no growth majorant attached to the model");
        return;
    }
    double margin = majorant_margin(d, s.fwd, s.kappa);
    b.add("growth-majorant-valid", ineq_status(margin), margin, 0.0);
    GrowthCheck g = check_growth_35(*d.q, s.t0, s.t0 + 1.0);
    double decay = g.rs.empty() || g.rs.front() <= 1e-15
                       ? 0.0
                       : g.rs.back() / g.rs.front();
    b.add("growth-sublinear", g.pass ? CondStatus::pass_on_window : CondStatus::fail, decay,
          1e-3);
}

void add_lower_bound_rows(Builder& b, const DeviatingForm& d, const Sampler& s) {
    if (!d.h1) {
        b.add("lower-bound-diagonal", CondStatus::indeterminate, 0.0, 0.0, 0,
              "no lower bound attached to the model");
        b.add("lower-bound-form", CondStatus::indeterminate, 0.0, 0.0, 0,
              "no lower bound attached to the model");
        return;
    }
    auto xs = linspace(s.kappa / 16.0, 15.0 * s.kappa / 16.0, 15);
    double diag = std::numeric_limits<double>::infinity();
    for (double x : xs) diag = std::min(diag, d.h1->h1(x, x));
    b.add("lower-bound-diagonal", diag > kIneqTol ? CondStatus::pass : CondStatus::fail, diag,
          0.0);
    double worst = std::numeric_limits<double>::infinity();
    for (double t : s.left)
        for (double x : xs)
            for (double y : xs)
                worst = std::min(
                    worst, static_cast<double>(d.h(t, x, y)) - d.h1->g(t) * d.h1->h1(x, y));
    b.add("lower-bound-form", ineq_status(worst), worst, 0.0);
}

void require_model(const Equation& eq, const char* model, TheoremId id) {
    if (eq.model != model)
        throw model_error(to_string(id) + " requires a '" + model + "' model, got '" +
                          eq.model + "'");
}

}  // namespace

TheoremVerdict theorem_verdict(const Equation& eq, TheoremId which, double T,
                               double grid_step) {
    eq.validate();
    Sampler s(eq.t0, T, grid_step, eq.kappa);
    Builder b;
    b.v.id = which;
    {
        std::ostringstream os;
        os << "conditions sampled on [" << eq.t0 - T << "," << eq.t0 << "] (forward ["
           << eq.t0 << "," << eq.t0 + T << "]) with step " << grid_step
           << "; asymptotic statuses hold on the window only";
        b.v.caveat = os.str();
    }
    const double kappa = eq.kappa;

    auto set_interval = [&](double M) {
        b.v.c_interval = admissible_c_interval(which, kappa, M);
        b.v.c_inside = b.v.c_interval->contains(eq.c);
    };

    switch (which) {
        case TheoremId::T2_5:
        case TheoremId::T2_14: {
            DeviatingForm d = as_deviating(eq);
            double hmin = min_h_box(d, s.left, 0, kappa, 0, kappa);
            b.add("h-nonneg-left", ineq_status(hmin), hmin, 0.0);
            double h00 = max_abs_h00(d, s.left);
            b.add("h-zero-at-zero", h00 <= kIneqTol ? CondStatus::pass : CondStatus::fail, h00,
                  0.0);
            double ret = max_retardation_violation({&d.mu0, &d.mu1, &d.nu}, s.left);
            b.add("delays-retarded", ret <= kIneqTol ? CondStatus::pass : CondStatus::fail,
                  ret, 0.0);
            ComparisonBundle cb = comparison_bundle(d, s);
            b.add("one-over-e", cb.one_over_e.pass ? CondStatus::pass : CondStatus::fail,
                  cb.one_over_e.value, 1.0 / std::exp(1.0));
            b.add("coef-comparison", ineq_status(cb.comparison.worst_margin),
                  cb.comparison.worst_margin, 0.0);
            b.add("memory-integral-finite", CondStatus::pass, cb.memory_sup, 0.0, 0,
                  "windowed sup; finiteness not decidable numerically");
            if (which == TheoremId::T2_5) add_growth_rows(b, d, s);
            b.v.p_star = cb.p_star;
            b.v.lambda_star = cb.lambda_star;
            b.v.M_mu = cb.M;
            if (which == TheoremId::T2_5) set_interval(cb.M);
            break;
        }
        case TheoremId::T2_6: {
            DeviatingForm d = as_deviating(eq);
            double hmin = min_h_box(d, s.left, 0, kappa, 0, kappa);
            b.add("h-nonneg-left", ineq_status(hmin), hmin, 0.0);
            double h00 = max_abs_h00(d, s.left);
            b.add("h-zero-at-zero", h00 <= kIneqTol ? CondStatus::pass : CondStatus::fail, h00,
                  0.0);
            double ret = max_retardation_violation({&d.mu0, &d.mu1, &d.nu}, s.left);
            b.add("delays-retarded", ret <= kIneqTol ? CondStatus::pass : CondStatus::fail,
                  ret, 0.0);
            add_growth_rows(b, d, s);
            MonotoneConditions mc =
                check_monotone_conditions(d.p0, d.p1, d.mu0, d.mu1, s.t0, s.T, s.step);
            b.add("coef-dominance", ineq_status(mc.dominance.worst_margin),
                  mc.dominance.worst_margin, 0.0);
            b.add("deviation-order", ineq_status(mc.deviation_order.worst_margin),
                  mc.deviation_order.worst_margin, 0.0);
            set_interval(0.0);
            break;
        }
        case TheoremId::T2_5r: {
            DeviatingForm d = as_deviating(eq);
            double hmin = min_h_box(d, s.left, 0, kappa, 0, kappa);
            b.add("h-nonneg-left", ineq_status(hmin), hmin, 0.0);
            double h00 = max_abs_h00(d, s.left);
            b.add("h-zero-at-zero", h00 <= kIneqTol ? CondStatus::pass : CondStatus::fail, h00,
                  0.0);
            std::vector<double> both = s.left;
            both.insert(both.end(), s.fwd.begin(), s.fwd.end());
            double ret = max_retardation_violation({&d.mu0, &d.mu1, &d.nu}, both);
            b.add("delays-retarded", ret <= kIneqTol ? CondStatus::pass : CondStatus::fail,
                  ret, 0.0);
            // smallness required on both sides of the anchor here
            CheckValue fwd_e = [&] {
                double sup = 0.0;
                for (double t : s.fwd) {
                    double lo = d.mu1(t);
                    sup = std::max(sup, integrate(d.p1, lo, t, kQuadTol));
                }
                return CheckValue{sup <= 1.0 / std::exp(1.0) + kIneqTol, sup};
            }();
            ComparisonBundle cb = comparison_bundle(d, s);
            double pall = std::max(cb.one_over_e.value, fwd_e.value);
            b.add("one-over-e-global",
                  cb.one_over_e.pass && fwd_e.pass ? CondStatus::pass : CondStatus::fail, pall,
                  1.0 / std::exp(1.0));
            b.add("coef-comparison", ineq_status(cb.comparison.worst_margin),
                  cb.comparison.worst_margin, 0.0);
            b.add("memory-integral-finite", CondStatus::pass, cb.memory_sup, 0.0, 0,
                  "windowed sup; finiteness not decidable numerically");
            double hfwd = min_h_box(d, s.fwd, 0, 3.0 * kappa, 0, 3.0 * kappa);
            b.add("h-nonneg-forward", ineq_status(hfwd), hfwd, 0.0);
            add_growth_rows(b, d, s);
            b.v.p_star = cb.p_star;
            b.v.lambda_star = cb.lambda_star;
            b.v.M_mu = cb.M;
            set_interval(cb.M);
            break;
        }
        case TheoremId::T2_6r: {
            DeviatingForm d = as_deviating(eq);
            double hmin = min_h_box(d, s.left, 0, kappa, 0, kappa);
            b.add("h-nonneg-left", ineq_status(hmin), hmin, 0.0);
            double h00 = max_abs_h00(d, s.left);
            b.add("h-zero-at-zero", h00 <= kIneqTol ? CondStatus::pass : CondStatus::fail, h00,
                  0.0);
            std::vector<double> both = s.left;
            both.insert(both.end(), s.fwd.begin(), s.fwd.end());
            double ret = max_retardation_violation({&d.mu0, &d.mu1, &d.nu}, both);
            b.add("delays-retarded", ret <= kIneqTol ? CondStatus::pass : CondStatus::fail,
                  ret, 0.0);
            double hfwd = min_h_box(d, s.fwd, 0, 3.0 * kappa, 0, 3.0 * kappa);
            b.add("h-nonneg-forward", ineq_status(hfwd), hfwd, 0.0);
            add_growth_rows(b, d, s);
            double dom = std::numeric_limits<double>::infinity();
            double ord = std::numeric_limits<double>::infinity();
            for (double t : both) {
                dom = std::min(dom, d.p0(t) - d.p1(t));
                ord = std::min(ord, d.p1(t) * (d.mu0(t) - d.mu1(t)));
            }
            b.add("coef-dominance-global", ineq_status(dom), dom, 0.0);
            b.add("deviation-order-global", ineq_status(ord), ord, 0.0);
            set_interval(0.0);
            break;
        }
        case TheoremId::T2_13: {
            DeviatingForm d = as_deviating(eq);
            double hmin = min_h_box(d, s.left, 0, kappa, 0, kappa);
            b.add("h-nonneg-left", ineq_status(hmin), hmin, 0.0);
            double ret = max_retardation_violation({&d.mu0, &d.mu1, &d.nu}, s.left);
            b.add("delays-retarded", ret <= kIneqTol ? CondStatus::pass : CondStatus::fail,
                  ret, 0.0);
            CheckValue oe = check_one_over_e(d.p1, d.mu1, s.t0, s.T, s.step);
            b.add("one-over-e", oe.pass ? CondStatus::pass : CondStatus::fail, oe.value,
                  1.0 / std::exp(1.0));
            DivergenceCheck dc = check_limit_divergence(d.p1, s.t0, {T / 8, T / 4, T / 2, T});
            b.add("p1-integral-bounded",
                  dc.cls == DivergenceClass::bounded_on_window ? CondStatus::pass_on_window
                  : dc.cls == DivergenceClass::indeterminate   ? CondStatus::indeterminate
                                                               : CondStatus::fail,
                  dc.integrals.back(), 0.0);
            break;
        }
        case TheoremId::C2_3:
        case TheoremId::C2_4: {
            DeviatingForm d = as_deviating(eq);
            add_lower_bound_rows(b, d, s);
            CheckValue oe = check_one_over_e(d.p1, d.mu1, s.t0, s.T, s.step);
            b.add("one-over-e", oe.pass ? CondStatus::pass : CondStatus::fail, oe.value,
                  1.0 / std::exp(1.0));
            double ret = max_retardation_violation({&d.mu0, &d.mu1, &d.nu}, s.left);
            b.add("delays-retarded", ret <= kIneqTol ? CondStatus::pass : CondStatus::fail,
                  ret, 0.0);
            DivergenceCheck bounded =
                check_limit_divergence(d.p1, s.t0, {T / 8, T / 4, T / 2, T});
            b.add("p1-integral-bounded",
                  bounded.cls == DivergenceClass::bounded_on_window
                      ? CondStatus::pass_on_window
                  : bounded.cls == DivergenceClass::indeterminate ? CondStatus::indeterminate
                                                                  : CondStatus::fail,
                  bounded.integrals.back(), 0.0);
            auto div_status = [](DivergenceClass c) {
                return c == DivergenceClass::diverges_on_window ? CondStatus::pass_on_window
                       : c == DivergenceClass::indeterminate    ? CondStatus::indeterminate
                                                                : CondStatus::fail;
            };
            if (d.h1) {
                DivergenceCheck gdiv =
                    check_limit_divergence(d.h1->g, s.t0, {T / 8, T / 4, T / 2, T});
                b.add("g-integral-diverges", div_status(gdiv.cls), gdiv.integrals.back(), 0.0,
                      1);
            } else {
                b.add("g-integral-diverges", CondStatus::indeterminate, 0.0, 0.0, 1,
                      "no lower bound attached to the model");
            }
            DivergenceCheck p0div =
                check_limit_divergence(d.p0, s.t0, {T / 8, T / 4, T / 2, T});
            b.add("p0-integral-diverges", div_status(p0div.cls), p0div.integrals.back(), 0.0,
                  1);
            if (which == TheoremId::C2_4) {
                MonotoneConditions mc =
                    check_monotone_conditions(d.p0, d.p1, d.mu0, d.mu1, s.t0, s.T, s.step);
                b.add("coef-dominance", ineq_status(mc.dominance.worst_margin),
                      mc.dominance.worst_margin, 0.0);
            }
            break;
        }
        case TheoremId::C2_5: {
            DeviatingForm d = as_deviating(eq);
            add_lower_bound_rows(b, d, s);
            ComparisonBundle cb = comparison_bundle(d, s);
            b.add("one-over-e", cb.one_over_e.pass ? CondStatus::pass : CondStatus::fail,
                  cb.one_over_e.value, 1.0 / std::exp(1.0));
            b.add("coef-comparison", ineq_status(cb.comparison.worst_margin),
                  cb.comparison.worst_margin, 0.0);
            b.add("memory-integral-finite", CondStatus::pass, cb.memory_sup, 0.0, 0,
                  "windowed sup; finiteness not decidable numerically");
            double ret = max_retardation_violation({&d.mu0, &d.mu1, &d.nu}, s.left);
            b.add("delays-retarded", ret <= kIneqTol ? CondStatus::pass : CondStatus::fail,
                  ret, 0.0);
            CoeffFunction unit_lag = CoeffFunction::retarded_by(CoeffFunction::constant(1.0));
            double p1sup = sup_window_integral(d.p1, unit_lag, s.t0, s.T, s.step);
            b.add("p1-unit-window-bounded", CondStatus::pass, p1sup, 0.0, 0,
                  "windowed sup; finiteness not decidable numerically");
            LimsupCheck net = check_window_limsup(CoeffFunction::difference(d.p0, d.p1),
                                                  unit_lag, s.t0, s.T, s.step);
            b.add("netcoef-unit-window-positive",
                  net.positive ? CondStatus::pass_on_window : CondStatus::fail, net.value,
                  kPosFloor, 2);
            if (d.h1) {
                LimsupCheck gls = check_window_limsup(d.h1->g, unit_lag, s.t0, s.T, s.step);
                b.add("g-unit-window-positive",
                      gls.positive ? CondStatus::pass_on_window : CondStatus::fail, gls.value,
                      kPosFloor, 2);
            } else {
                b.add("g-unit-window-positive", CondStatus::indeterminate, 0.0, kPosFloor, 2,
                      "no lower bound attached to the model");
            }
            b.v.p_star = cb.p_star;
            b.v.lambda_star = cb.lambda_star;
            b.v.M_mu = cb.M;
            break;
        }
        case TheoremId::T6_1: {
            require_model(eq, "delay-G", which);
            DeviatingForm d = as_deviating(eq);
            double tau_min = std::numeric_limits<double>::infinity();
            double tau_max = -std::numeric_limits<double>::infinity();
            for (double t : s.left) {
                double tau = t - d.mu0(t);
                tau_min = std::min(tau_min, tau);
                tau_max = std::max(tau_max, tau);
            }
            b.add("delay-positive", tau_min > kIneqTol ? CondStatus::pass : CondStatus::fail,
                  tau_min, 0.0);
            b.add("delay-bounded", CondStatus::pass, tau_max, 0.0, 0,
                  "windowed sup; boundedness not decidable numerically");
            // recover G(s) = h(t, 0, s) + p0(t) s at the anchor (p0(t0) = 1)
            auto G = [&](double sv) { return d.h(s.t0, 0.0, sv) + d.p0(s.t0) * sv; };
            double g0v = std::abs(G(0.0));
            b.add("g-zero-at-zero", g0v <= kIneqTol ? CondStatus::pass : CondStatus::fail, g0v,
                  0.0);
            double above = std::numeric_limits<double>::infinity();
            for (int k = 1; k < 128; ++k) {
                double sv = kappa * static_cast<double>(k) / 128.0;
                above = std::min(above, static_cast<double>(G(sv)) - sv);
            }
            b.add("g-above-identity", above > kIneqTol ? CondStatus::pass : CondStatus::fail,
                  above, 0.0);
            if (d.q) {
                GrowthCheck g = check_growth_35(*d.q, s.t0, s.t0 + 1.0);
                double decay = g.rs.empty() || g.rs.front() <= 1e-15
                                   ? 0.0
                                   : g.rs.back() / g.rs.front();
                b.add("g-growth-sublinear",
                      g.pass ? CondStatus::pass_on_window : CondStatus::fail, decay, 1e-3);
            } else {
                b.add("g-growth-sublinear", CondStatus::indeterminate, 0.0, 1e-3);
            }
            b.v.M_tau = tau_max;
            set_interval(tau_max);
            break;
        }
        case TheoremId::T6_2: {
            require_model(eq, "logistic", which);
            if (eq.f.kind != Nonlinearity::Kind::logistic)
                throw model_error("T6.2: equation lacks the distributed nonlinearity");
            const auto& f = eq.f;
            DivergenceCheck g0div =
                check_limit_divergence(f.g0, s.t0, {T / 8, T / 4, T / 2, T});
            b.add("growth-coefficient-diverges",
                  g0div.cls == DivergenceClass::diverges_on_window
                      ? CondStatus::pass_on_window
                  : g0div.cls == DivergenceClass::indeterminate ? CondStatus::indeterminate
                                                                : CondStatus::fail,
                  g0div.integrals.back(), 0.0);
            CoeffFunction K = f.kernel.mass_function();
            double kmin = std::numeric_limits<double>::infinity();
            for (double t : s.left)
                if (t <= s.t0 - 2.0 * T / 3.0) kmin = std::min(kmin, K(t));
            b.add("kernel-mass-inf-positive",
                  kmin > kPosFloor ? CondStatus::pass_on_window : CondStatus::fail, kmin,
                  kPosFloor);
            double nu_end = f.kernel.lower_limit(s.t0 + T) - s.t0;
            b.add("kernel-delay-forward",
                  nu_end > 0.0 ? CondStatus::pass_on_window : CondStatus::fail, nu_end, 0.0);
            CoeffFunction g0K = CoeffFunction::product(f.g0, K);
            double best = 0.0;
            for (double t : s.fwd)
                if (t >= s.t0 + 2.0 * T / 3.0)
                    best = std::max(best, integrate(g0K, t - 1.0, t, kQuadTol));
            b.add("forward-mass-window",
                  best > kPosFloor ? CondStatus::pass_on_window : CondStatus::fail, best,
                  kPosFloor);
            set_interval(0.0);
            break;
        }
        case TheoremId::R2_7: {
            DeviatingForm d = as_deviating(eq);
            double coef = 0.0;
            for (double t : s.left) coef = std::max(coef, std::abs(d.p0(t) - d.p1(t)));
            b.add("coef-equal-left", coef <= kIneqTol ? CondStatus::pass : CondStatus::fail,
                  coef, 0.0);
            double hk = 0.0;
            for (double t : s.left)
                hk = std::max(hk, static_cast<double>(std::abs(d.h(t, kappa, kappa))));
            b.add("h-zero-at-kappa", hk <= kIneqTol ? CondStatus::pass : CondStatus::fail, hk,
                  0.0);
            double p1win = sup_window_integral(d.p1, d.mu1, s.t0, s.T, s.step);
            b.add("p1-window-zero", p1win <= kIneqTol ? CondStatus::pass : CondStatus::fail,
                  p1win, 0.0);
            break;
        }
    }

    b.finish();
    return b.v;
}

}  // namespace fde
