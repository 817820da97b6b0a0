#include "fde/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fde/quad.hpp"

namespace fde {

ScalarMap make_power_monostable(double p, double kappa) {
    if (!(p > 0.0) || !(kappa > 0.0))
        throw std::invalid_argument("make_power_monostable: p and kappa must be positive");
    return [p, kappa](Real s) -> Real {
        if (s <= 0.0L) return 0.0L;
        if (s >= static_cast<Real>(kappa)) return kappa;
        return std::pow(s, static_cast<Real>(p)) * (kappa - s) + s;
    };
}

ScalarMap make_nicholson(double p, double a) {
    if (!(p > 1.0) || !(a > 0.0))
        throw std::invalid_argument("make_nicholson: needs p > 1 and a > 0");
    return [p, a](Real s) -> Real {
        if (s <= 0.0L) return 0.0L;
        return p * s * std::exp(-a * s);
    };
}

ScalarMap make_mackey_glass(double beta, double n) {
    if (!(beta > 1.0) || !(n > 0.0))
        throw std::invalid_argument("make_mackey_glass: needs beta > 1 and n > 0");
    return [beta, n](Real s) -> Real {
        if (s <= 0.0L) return 0.0L;
        return beta * s / (1.0L + std::pow(s, static_cast<Real>(n)));
    };
}

ScalarMap make_linear_map(double slope) {
    return [slope](Real s) -> Real { return s <= 0.0L ? 0.0L : slope * s; };
}

CoeffFunction tabulate_running_max(const ScalarMap& g, double kappa, double x_max) {
    // dense nodes through the interesting range, geometric tail after; the
    // interpolated table tracks the true running max to about (4k/8192)^2
    std::vector<double> xs;
    xs.push_back(0.0);
    const int dense = 8192;
    double dense_hi = 4.0 * kappa;
    for (int i = 1; i <= dense; ++i)
        xs.push_back(dense_hi * static_cast<double>(i) / dense);
    for (double x = dense_hi * 1.05; x < x_max; x *= 1.05) xs.push_back(x);
    xs.push_back(x_max);

    std::vector<double> vs(xs.size());
    double running = std::max(0.0, static_cast<double>(g(0.0)));
    double prev = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        // subsample inside each cell so interior humps are not missed
        for (int j = 1; j <= 8; ++j) {
            double x = prev + (xs[i] - prev) * static_cast<double>(j) / 8.0;
            running = std::max(running, static_cast<double>(g(x)));
        }
        vs[i] = running;
        prev = xs[i];
    }
    return CoeffFunction::table(std::move(xs), std::move(vs));
}

namespace {

void require_positive_delay(const CoeffFunction& tau, double t0) {
    auto probe = [&](double lo, double hi, double step) {
        for (double t = lo; t <= hi + 1e-12; t += step)
            if (!(tau(t) > 0.0)) {
                std::ostringstream os;
                os << "delay must be positive; tau(" << t << ") = " << tau(t);
                throw model_error(os.str());
            }
    };
    probe(t0 - 200.0, t0 + 200.0, 0.5);
    probe(t0 - 10.0, t0 + 10.0, 0.01);
}

}  // namespace

Equation make_delay_eq(ScalarMap G, CoeffFunction tau, double t0, double c, double kappa) {
    require_positive_delay(tau, t0);
    Equation eq;
    eq.kappa = kappa;
    eq.t0 = t0;
    eq.c = c;
    eq.model = "delay-G";
    CoeffFunction p0 = CoeffFunction::step_left(t0, 1.0, 0.0).nonnegative();
    CoeffFunction p1 = CoeffFunction::constant(1.0).nonnegative();
    CoeffFunction mu0 = CoeffFunction::retarded_by(tau).retarded();
    CoeffFunction mu1 = CoeffFunction::retarded_by(CoeffFunction::constant(0.0)).retarded();
    eq.ell0 = {DelayTerm{p0, mu0}};
    eq.ell1 = {DelayTerm{p1, mu1}};
    PointwiseH h = [G, p0](double t, Real, Real y) -> Real {
        return G(std::abs(y)) - static_cast<Real>(p0(t)) * y;
    };
    GrowthMajorant q{CoeffFunction::constant(1.0), tabulate_running_max(G, kappa)};
    LowerBoundH h1{CoeffFunction::constant(1.0),
                   [G](double, double y) { return static_cast<double>(G(y)) - y; }};
    eq.f = Nonlinearity::pointwise(std::move(h), mu0, std::move(q), std::move(h1));
    eq.validate();
    return eq;
}

Equation make_wavefront(ScalarMap G, double wave_speed, double r, double t0, double c,
                        double kappa) {
    if (!(wave_speed > 0.0) || !(r > 0.0))
        throw std::invalid_argument("make_wavefront: wave_speed and r must be positive");
    Equation eq;
    eq.kappa = kappa;
    eq.t0 = t0;
    eq.c = c;
    eq.model = "wavefront";
    double inv_c = 1.0 / wave_speed;
    double lag = wave_speed * r;
    CoeffFunction p = CoeffFunction::constant(inv_c).nonnegative();
    CoeffFunction mu0 = CoeffFunction::retarded_by(CoeffFunction::constant(lag)).retarded();
    CoeffFunction mu1 = CoeffFunction::retarded_by(CoeffFunction::constant(0.0)).retarded();
    eq.ell0 = {DelayTerm{p, mu0}};
    eq.ell1 = {DelayTerm{p, mu1}};
    PointwiseH h = [G, inv_c](double, Real, Real y) -> Real {
        Real ay = std::abs(y);
        return (G(ay) - ay) * static_cast<Real>(inv_c);
    };
    // excess of G over the identity is bounded, so its running max majorizes
    ScalarMap excess = [G](Real s) -> Real { return std::max(G(s) - s, 0.0L); };
    GrowthMajorant q{CoeffFunction::constant(inv_c), tabulate_running_max(excess, kappa)};
    LowerBoundH h1{CoeffFunction::constant(inv_c),
                   [G](double, double y) { return static_cast<double>(G(y)) - y; }};
    eq.f = Nonlinearity::pointwise(std::move(h), mu0, std::move(q), std::move(h1));
    eq.validate();
    return eq;
}

Equation make_logistic(CoeffFunction g0, CoeffFunction nu, DistributedTerm kernel,
                       double kappa, double lam_exp, double t0, double c,
                       double envelope_horizon) {
    if (!(kappa > 0.0) || !(lam_exp > 0.0))
        throw std::invalid_argument("make_logistic: kappa and lam_exp must be positive");
    for (const auto& atom : kernel.atoms)
        for (double t = t0 - 50.0; t <= t0 + 50.0; t += 1.0)
            if (atom.mass(t) < 0.0) throw model_error("make_logistic: negative kernel mass");
    kernel.lower_limit = nu.retarded();

    Equation eq;
    eq.kappa = kappa;
    eq.t0 = t0;
    eq.c = c;
    eq.model = "logistic";

    CoeffFunction K = kernel.mass_function();
    CoeffFunction g0K = CoeffFunction::product(g0, K);
    // cap for the construction phase: kappa up to the anchor, then the
    // integrating-factor bound kappa * exp(int g0 * K)
    BackwardAntiderivative anti(g0K, t0, t0 + envelope_horizon, 0.01);
    double total = anti.from(t0);
    std::size_t n = static_cast<std::size_t>(envelope_horizon / 0.01);
    std::vector<double> ts(n + 1), us(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        double t = t0 + 0.01 * static_cast<double>(k);
        ts[k] = t;
        us[k] = kappa * std::exp(total - anti.from(t));
    }
    CoeffFunction envelope = CoeffFunction::table(std::move(ts), std::move(us));

    GrowthMajorant q{CoeffFunction::product(g0K, envelope), CoeffFunction::constant(1.0)};
    eq.f = Nonlinearity::logistic(g0.nonnegative(), lam_exp, std::move(kernel), envelope,
                                  std::move(q));
    eq.validate();
    return eq;
}

Equation make_general(CoeffFunction p0, CoeffFunction p1, CoeffFunction mu0,
                      CoeffFunction mu1, std::optional<ScalarMap> h_from_G, double t0,
                      double c, double kappa) {
    Equation eq;
    eq.kappa = kappa;
    eq.t0 = t0;
    eq.c = c;
    eq.model = "general";
    CoeffFunction p0n = p0.nonnegative();
    CoeffFunction p1n = p1.nonnegative();
    CoeffFunction mu0r = mu0.retarded();
    CoeffFunction mu1r = mu1.retarded();
    eq.ell0 = {DelayTerm{p0n, mu0r}};
    eq.ell1 = {DelayTerm{p1n, mu1r}};
    if (h_from_G) {
        ScalarMap G = *h_from_G;
        PointwiseH h = [G, p0n](double t, Real, Real y) -> Real {
            return G(std::abs(y)) - static_cast<Real>(p0n(t)) * y;
        };
        GrowthMajorant q{CoeffFunction::constant(1.0), tabulate_running_max(G, kappa)};
        LowerBoundH h1{CoeffFunction::constant(1.0),
                       [G](double, double y) { return static_cast<double>(G(y)) - y; }};
        eq.f = Nonlinearity::pointwise(std::move(h), mu0r, std::move(q), std::move(h1));
    } else {
        eq.f = Nonlinearity::zero();
        eq.f.q = GrowthMajorant{CoeffFunction::constant(0.0), CoeffFunction::constant(1.0)};
    }
    eq.validate();
    return eq;
}

}  // namespace fde
