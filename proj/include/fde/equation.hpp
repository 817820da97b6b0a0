#ifndef FDE_EQUATION_HPP
#define FDE_EQUATION_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fde/coeff.hpp"
#include "fde/trajectory.hpp"

namespace fde {

// model assembly / evaluation errors
struct model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// projection of a value onto [0, kappa]
double psi_clamp(double x, double kappa);

// one positive point-delay term  coefficient(t) * u(deviation(t))
struct DelayTerm {
    CoeffFunction coefficient;  // >= 0
    CoeffFunction deviation;    // deviation(t) <= t
};

// Discrete representation of a distributed memory term: finitely many atoms,
// each a node s_j(t) = t - delay_j(t) carrying mass_j(t) >= 0, supported on
// [lower_limit(t), t]. Masses given as tables interpolate linearly in t.
struct KernelAtom {
    CoeffFunction delay;  // >= 0
    CoeffFunction mass;   // >= 0
};

struct DistributedTerm {
    CoeffFunction lower_limit;  // nu, retarded
    std::vector<KernelAtom> atoms;

    double total_mass(double t) const;  // sum of masses at t
    // CoeffFunction view of total_mass, for windowed checks
    CoeffFunction mass_function() const;
};

// sum_j w_j(t) * |1 - u(s_j)/kappa|^lam_exp * sgn(1 - u(s_j)/kappa)
double eval_distributed(const DistributedTerm& term, const Trajectory& traj, double t,
                        double kappa, double lam_exp);

// u-valued maps carry the extended state scalar (see trajectory.hpp); plain
// double lambdas still wrap implicitly where the full range is not needed
using ScalarMap = std::function<Real(Real)>;
using PointwiseH = std::function<Real(double, Real, Real)>;  // h(t, x, y)

// separable growth majorant q(t, x) = time_part(t) * growth_part(x),
// nondecreasing in x
struct GrowthMajorant {
    CoeffFunction time_part;
    CoeffFunction growth_part;
    double operator()(double t, double x) const { return time_part(t) * growth_part(x); }
};

// lower bound h(t,x,y) >= g(t) * h1(x,y) used by the limit corollaries
struct LowerBoundH {
    CoeffFunction g;
    std::function<double(double, double)> h1;
};

struct Nonlinearity {
    enum class Kind { zero, pointwise, logistic };
    Kind kind = Kind::zero;

    // pointwise: f(u)(t) = h(t, u(t), u(nu(t)))
    PointwiseH h;
    CoeffFunction nu;

    // logistic: f(u)(t) = g0(t) * u(t) * distributed(u)(t); the construction
    // variant replaces the u(t) factor by max(u,0) capped at envelope(t)
    CoeffFunction g0;
    double lam_exp = 1.0;
    DistributedTerm kernel;
    CoeffFunction envelope;  // kappa on the left of t0, growing cap after

    std::optional<GrowthMajorant> q;
    std::optional<LowerBoundH> h1;

    static Nonlinearity zero();
    static Nonlinearity pointwise(PointwiseH h, CoeffFunction nu,
                                  std::optional<GrowthMajorant> q = std::nullopt,
                                  std::optional<LowerBoundH> h1 = std::nullopt);
    static Nonlinearity logistic(CoeffFunction g0, double lam_exp, DistributedTerm kernel,
                                 CoeffFunction envelope,
                                 std::optional<GrowthMajorant> q = std::nullopt);
};

// Assembled right-hand side of  u'(t) = sum ell0 - sum ell1 + f, anchored by
// u(t0) = c with 0 <= c and kappa > 0.
struct Equation {
    std::vector<DelayTerm> ell0, ell1;
    Nonlinearity f;
    double kappa = 1.0;
    double t0 = 0.0;
    double c = 0.0;
    std::string model = "general";

    void validate() const;  // kappa > 0, c >= 0
};

// single-delay-pair view used by the condition calculus
struct DeviatingForm {
    CoeffFunction p0, p1, mu0, mu1, nu;
    PointwiseH h;  // callable even when the nonlinearity is zero
    bool h_zero = false;
    std::optional<GrowthMajorant> q;
    std::optional<LowerBoundH> h1;
};

// extracts the deviating-argument shape (exactly one term on each side,
// pointwise or zero nonlinearity); throws model_error otherwise
DeviatingForm as_deviating(const Equation& eq);

struct EvalStats {
    long clamp_hits = 0;
    double clamp_excursion = 0.0;  // max distance an argument was moved
};

// Full right-hand side at time t against the given trajectory (theta
// extension supplies values outside its domain). With clamped set, the
// u-arguments reaching f are projected onto [0, kappa] first (the logistic
// kind caps its u(t) factor by the envelope); delay terms are never clamped.
double eval_rhs(const Equation& eq, const Trajectory& traj, double t, bool clamped,
                EvalStats* stats = nullptr);

namespace detail {
// lookup(s) must honour the theta convention; used by the integrator so the
// undelayed argument can be the live Runge-Kutta stage value
using Lookup = std::function<Real(double)>;
Real eval_rhs_lookup(const Equation& eq, const Lookup& lookup, double t, bool clamped,
                     EvalStats* stats);
Real eval_distributed_lookup(const DistributedTerm& term, const Lookup& lookup, double t,
                             double kappa, double lam_exp);
}  // namespace detail

}  // namespace fde

#endif
