#ifndef FDE_COEFF_HPP
#define FDE_COEFF_HPP

#include <memory>
#include <string>
#include <vector>

namespace fde {

enum class CoeffKind { constant, table, builtin };

// Scalar function of time: equation coefficients, delay maps, kernel masses.
// Evaluable at every real t; tables extend constantly beyond their endpoints.
// Immutable after construction, cheap to copy.
class CoeffFunction {
public:
    CoeffFunction();  // identically zero

    static CoeffFunction constant(double v);
    // piecewise-linear through (t_i, v_i), constant beyond the sampled range
    static CoeffFunction table(std::vector<double> ts, std::vector<double> vs);
    // 1/(t0+1-t)^2 for t <= t0, frozen at 1 for t > t0
    static CoeffFunction phi(double t0);
    // left for t <= t0, right for t > t0
    static CoeffFunction step_left(double t0, double left, double right);
    // t - delay(t); the usual way to build a deviation map from a lag
    static CoeffFunction retarded_by(CoeffFunction delay);
    static CoeffFunction sum(CoeffFunction a, CoeffFunction b);
    static CoeffFunction difference(CoeffFunction a, CoeffFunction b);
    static CoeffFunction product(CoeffFunction a, CoeffFunction b);

    // checked copies: evaluation throws std::domain_error on violation
    CoeffFunction nonnegative() const;   // value(t) >= 0 required
    CoeffFunction retarded() const;      // value(t) <= t required

    double operator()(double t) const;

    CoeffKind kind() const;
    std::string name() const;

    struct Impl;  // implementation detail

private:
    explicit CoeffFunction(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
    bool require_nonneg_ = false;
    bool require_retarded_ = false;
};

}  // namespace fde

#endif
