#ifndef FDE_QUAD_HPP
#define FDE_QUAD_HPP

#include <functional>
#include <vector>

#include "fde/coeff.hpp"

namespace fde {

// Adaptive Simpson quadrature; signed (a > b flips sign).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);
double integrate(const CoeffFunction& f, double a, double b, double tol = 1e-10);

// Prefix integrals of f on a uniform grid over [lo, hi]: value(t) returns
// the integral from t to hi, with t snapped into the grid by per-cell
// quadrature below the resolution of the grid itself.
class BackwardAntiderivative {
public:
    BackwardAntiderivative(const CoeffFunction& f, double lo, double hi, double step,
                           double tol = 1e-12);
    // integral of f over [t, hi]; exact per-cell Simpson on the tails
    double from(double t) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    CoeffFunction f_;
    double lo_, hi_, step_, tol_;
    std::vector<double> grid_;    // grid_[k] = lo + k*step (last = hi)
    std::vector<double> prefix_;  // prefix_[k] = integral over [grid_[k], hi]
};

}  // namespace fde

#endif
