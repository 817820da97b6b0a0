#include "fde/equation.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace fde {

double psi_clamp(double x, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("psi_clamp: kappa must be positive");
    if (x > kappa) return kappa;
    if (x < 0.0) return 0.0;
    return x;
}

double DistributedTerm::total_mass(double t) const {
    double m = 0.0;
    for (const auto& atom : atoms) {
        double w = atom.mass(t);
        if (w < 0.0) throw model_error("distributed term: negative kernel mass");
        m += w;
    }
    return m;
}

CoeffFunction DistributedTerm::mass_function() const {
    if (atoms.empty()) return CoeffFunction::constant(0.0);
    CoeffFunction acc = atoms.front().mass;
    for (std::size_t i = 1; i < atoms.size(); ++i)
        acc = CoeffFunction::sum(acc, atoms[i].mass);
    return acc;
}

namespace {

inline Real sgn(Real x) { return x > 0.0L ? 1.0L : (x < 0.0L ? -1.0L : 0.0L); }

inline Real logistic_weight(Real u, double kappa, double lam_exp) {
    Real z = 1.0L - u / kappa;
    if (z == 0.0L) return 0.0L;
    return std::pow(std::abs(z), static_cast<Real>(lam_exp)) * sgn(z);
}

}  // namespace

namespace detail {

Real eval_distributed_lookup(const DistributedTerm& term, const Lookup& lookup, double t,
                             double kappa, double lam_exp) {
    if (!(kappa > 0.0) || !(lam_exp > 0.0))
        throw std::invalid_argument("eval_distributed: kappa and lam_exp must be positive");
    double lo = term.lower_limit(t);
    if (lo > t) throw model_error("distributed term: lower limit ahead of t");
    Real acc = 0.0L;
    for (const auto& atom : term.atoms) {
        double d = atom.delay(t);
        double s = t - d;
        if (s > t || s < lo - 1e-9) {
            std::ostringstream os;
            os << "distributed term: node " << s << " outside [" << lo << ", " << t << "]";
            throw model_error(os.str());
        }
        double w = atom.mass(t);
        if (w < 0.0) throw model_error("distributed term: negative kernel mass");
        acc += w * logistic_weight(lookup(s), kappa, lam_exp);
    }
    return acc;
}

Real eval_rhs_lookup(const Equation& eq, const Lookup& lookup, double t, bool clamped,
                     EvalStats* stats) {
    auto clamp_arg = [&](Real x) {
        Real y = x;
        if (y > eq.kappa) y = eq.kappa;
        if (y < 0.0L) y = 0.0L;
        if (stats && y != x) {
            ++stats->clamp_hits;
            double exc = static_cast<double>(std::abs(y - x));
            if (exc > stats->clamp_excursion) stats->clamp_excursion = exc;
        }
        return y;
    };

    Real acc = 0.0L;
    for (const auto& term : eq.ell0) {
        double m = term.deviation(t);
        if (m > t) throw model_error("delay term deviation ahead of t");
        acc += term.coefficient(t) * lookup(m);
    }
    for (const auto& term : eq.ell1) {
        double m = term.deviation(t);
        if (m > t) throw model_error("delay term deviation ahead of t");
        acc -= term.coefficient(t) * lookup(m);
    }

    switch (eq.f.kind) {
        case Nonlinearity::Kind::zero:
            break;
        case Nonlinearity::Kind::pointwise: {
            double m = eq.f.nu(t);
            if (m > t) throw model_error("nonlinearity deviation ahead of t");
            Real x = lookup(t);
            Real y = lookup(m);
            if (clamped) {
                x = clamp_arg(x);
                y = clamp_arg(y);
            }
            acc += eq.f.h(t, x, y);
            break;
        }
        case Nonlinearity::Kind::logistic: {
            Real x = lookup(t);
            if (clamped) {
                Real cap = eq.f.envelope(t);
                Real y = x > 0.0L ? x : 0.0L;
                if (y > cap) y = cap;
                if (stats && y != x) {
                    ++stats->clamp_hits;
                    double exc = static_cast<double>(std::abs(y - x));
                    if (exc > stats->clamp_excursion) stats->clamp_excursion = exc;
                }
                x = y;
            }
            acc += eq.f.g0(t) * x *
                   eval_distributed_lookup(eq.f.kernel, lookup, t, eq.kappa, eq.f.lam_exp);
            break;
        }
    }
    return acc;
}

}  // namespace detail

double eval_distributed(const DistributedTerm& term, const Trajectory& traj, double t,
                        double kappa, double lam_exp) {
    return static_cast<double>(detail::eval_distributed_lookup(
        term, [&traj](double s) { return traj.value_ext(s); }, t, kappa, lam_exp));
}

double eval_rhs(const Equation& eq, const Trajectory& traj, double t, bool clamped,
                EvalStats* stats) {
    return static_cast<double>(detail::eval_rhs_lookup(
        eq, [&traj](double s) { return traj.value_ext(s); }, t, clamped, stats));
}

Nonlinearity Nonlinearity::zero() { return Nonlinearity{}; }

Nonlinearity Nonlinearity::pointwise(PointwiseH h, CoeffFunction nu,
                                     std::optional<GrowthMajorant> q,
                                     std::optional<LowerBoundH> h1) {
    Nonlinearity f;
    f.kind = Kind::pointwise;
    f.h = std::move(h);
    f.nu = std::move(nu);
    f.q = std::move(q);
    f.h1 = std::move(h1);
    return f;
}

Nonlinearity Nonlinearity::logistic(CoeffFunction g0, double lam_exp, DistributedTerm kernel,
                                    CoeffFunction envelope, std::optional<GrowthMajorant> q) {
    if (!(lam_exp > 0.0)) throw std::invalid_argument("logistic nonlinearity: lam_exp <= 0");
    Nonlinearity f;
    f.kind = Kind::logistic;
    f.g0 = std::move(g0);
    f.lam_exp = lam_exp;
    f.kernel = std::move(kernel);
    f.envelope = std::move(envelope);
    f.q = std::move(q);
    return f;
}

void Equation::validate() const {
    if (!(kappa > 0.0)) throw model_error("equation: kappa must be positive");
    if (c < 0.0) throw model_error("equation: anchor value must be non-negative");
}

DeviatingForm as_deviating(const Equation& eq) {
    if (eq.ell0.size() != 1 || eq.ell1.size() != 1)
        throw model_error("equation is not in single-pair deviating form");
    if (eq.f.kind == Nonlinearity::Kind::logistic)
        throw model_error("logistic equation has no deviating-argument form");
    DeviatingForm d;
    d.p0 = eq.ell0.front().coefficient;
    d.mu0 = eq.ell0.front().deviation;
    d.p1 = eq.ell1.front().coefficient;
    d.mu1 = eq.ell1.front().deviation;
    if (eq.f.kind == Nonlinearity::Kind::pointwise) {
        d.h = eq.f.h;
        d.nu = eq.f.nu;
        d.h_zero = false;
    } else {
        d.h = [](double, double, double) { return 0.0; };
        d.nu = CoeffFunction::retarded_by(CoeffFunction::constant(0.0));
        d.h_zero = true;
    }
    d.q = eq.f.q;
    d.h1 = eq.f.h1;
    return d;
}

}  // namespace fde
