#ifndef FDE_TRAJECTORY_HPP
#define FDE_TRAJECTORY_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace fde {

// Extended-precision scalar for solution values. Constructed histories can
// decay through hundreds of orders of magnitude before the trajectory
// re-enters ordinary range, so the state pipeline carries the widest native
// floating type; times, coefficients, and serialized output stay double.
using Real = long double;

// Piecewise cubic-Hermite numerical solution on a strictly increasing grid.
// Evaluation outside the domain returns the boundary value (constant
// extension on both sides); derivative queries at knots return the
// right-segment derivative, and 0 outside the domain.
class Trajectory {
public:
    // degenerate single-knot trajectory: constant v everywhere
    static Trajectory point(double t, Real v);
    static Trajectory constant(double v, double a, double b);
    // samples f (and its derivative df) at n+1 equispaced knots on [a, b]
    static Trajectory sample(const std::function<double(double)>& f,
                             const std::function<double(double)>& df, double a, double b,
                             std::size_t n);
    // raw knot data; derivs_left[i] / derivs_right[i] bound segment i
    Trajectory(std::vector<double> ts, std::vector<double> us,
               std::vector<double> derivs_left, std::vector<double> derivs_right);

    double front_time() const { return ts_.front(); }
    double back_time() const { return ts_.back(); }
    double front_value() const { return static_cast<double>(us_.front()); }
    double back_value() const { return static_cast<double>(us_.back()); }
    Real front_value_ext() const { return us_.front(); }
    Real back_value_ext() const { return us_.back(); }
    std::size_t knot_count() const { return ts_.size(); }
    double knot_time(std::size_t i) const { return ts_[i]; }
    double knot_value(std::size_t i) const { return static_cast<double>(us_[i]); }
    // derivative attached to knot i when queried (right-segment convention)
    double knot_deriv(std::size_t i) const;

    double value(double t) const { return static_cast<double>(value_ext(t)); }
    Real value_ext(double t) const;
    double derivative(double t) const;

    // appends one segment [back_time, t_next]; d_left is the derivative at
    // the current end, d_right at t_next (they live on this segment only)
    void append_segment(double t_next, Real u_next, Real d_left, Real d_right);
    void reserve(std::size_t knots);

private:
    Trajectory() = default;
    std::size_t locate(double t) const;
    std::vector<double> ts_;
    std::vector<Real> us_, dl_, dr_;
};

// dense-output evaluation with constant extension beyond the domain
double theta_eval(const Trajectory& traj, double t);

}  // namespace fde

#endif
