#ifndef FDE_MODELS_HPP
#define FDE_MODELS_HPP

#include "fde/equation.hpp"

namespace fde {

// G(s) = s^p (kappa - s) + s on [0, kappa], frozen at kappa above, 0 below.
// Monostable with fixed points exactly at 0 and kappa.
ScalarMap make_power_monostable(double p, double kappa);

// classic population nonlinearities; fits the u' = -u + G(u(t-tau)) frame
ScalarMap make_nicholson(double p, double a);          // p s e^{-a s}, needs p > 1
ScalarMap make_mackey_glass(double beta, double n);    // beta s / (1 + s^n), needs beta > 1
ScalarMap make_linear_map(double slope);               // slope * s on s >= 0 (unbounded)

// running max of G over [0, s], tabulated; constant beyond the top node for
// maps that are themselves eventually constant
CoeffFunction tabulate_running_max(const ScalarMap& g, double kappa, double x_max = 1e7);

// u'(t) = -u(t) + G(u(t - tau(t))) rewritten with one dominant and one
// unit-coefficient delay term plus the pointwise remainder; the natural
// growth majorant (running max of G) and the limit lower bound G(y) - y
// ride along
Equation make_delay_eq(ScalarMap G, CoeffFunction tau, double t0, double c, double kappa);

// c_w u'(t) = -u(t) + G(u(t - c_w r)): the travelling-profile reduction with
// wave speed c_w; the anchor value c is independent of the speed
Equation make_wavefront(ScalarMap G, double wave_speed, double r, double t0, double c,
                        double kappa);

// u'(t) = g0(t) u(t) * (distributed deviation-from-kappa term); pure
// nonlinearity, no linear delay terms. The construction-phase evaluation
// caps the u(t) factor by an envelope that equals kappa up to t0 and grows
// like exp(integral of g0 * total mass) after it.
Equation make_logistic(CoeffFunction g0, CoeffFunction nu, DistributedTerm kernel,
                       double kappa, double lam_exp, double t0, double c,
                       double envelope_horizon = 200.0);

// general deviating-argument form with explicit coefficients; h_from_G
// selects h(t,x,y) = G(|y|) - p0(t) y with nu = mu0 (zero nonlinearity when
// G is absent)
Equation make_general(CoeffFunction p0, CoeffFunction p1, CoeffFunction mu0,
                      CoeffFunction mu1, std::optional<ScalarMap> h_from_G, double t0,
                      double c, double kappa);

}  // namespace fde

#endif
