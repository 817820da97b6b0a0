#include "fde/quad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fde {

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double m,
                double fm, double b, double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, flm, m, fm);
    double right = simpson(m, fm, frm, b, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    // split once up front so tabulated kinks at midpoints are not missed
    const int pieces = 4;
    double h = (b - a) / pieces;
    double total = 0.0;
    for (int i = 0; i < pieces; ++i) {
        double x0 = a + i * h, x1 = (i + 1 == pieces) ? b : a + (i + 1) * h;
        double xm = 0.5 * (x0 + x1);
        double f0 = f(x0), fm = f(xm), f1 = f(x1);
        double whole = simpson(x0, f0, fm, x1, f1);
        total += adaptive(f, x0, f0, xm, fm, x1, f1, whole, tol / pieces, 48);
    }
    return sign * total;
}

double integrate(const CoeffFunction& f, double a, double b, double tol) {
    return integrate([&f](double t) { return f(t); }, a, b, tol);
}

BackwardAntiderivative::BackwardAntiderivative(const CoeffFunction& f, double lo, double hi,
                                               double step, double tol)
    : f_(f), lo_(lo), hi_(hi), step_(step), tol_(tol) {
    if (!(hi > lo) || !(step > 0))
        throw std::invalid_argument("backward antiderivative: bad grid");
    std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-12));
    grid_.resize(n + 1);
    for (std::size_t k = 0; k < n; ++k) grid_[k] = lo + static_cast<double>(k) * step;
    grid_[n] = hi;
    prefix_.assign(n + 1, 0.0);
    for (std::size_t k = n; k-- > 0;)
        prefix_[k] = prefix_[k + 1] + integrate(f_, grid_[k], grid_[k + 1], tol_);
}

double BackwardAntiderivative::from(double t) const {
    if (t >= hi_) return -integrate(f_, hi_, t, tol_);
    if (t <= lo_) return prefix_.front() + integrate(f_, t, lo_, tol_);
    auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - grid_.begin());
    // t lies in [grid_[i-1], grid_[i])
    return prefix_[i] + integrate(f_, t, grid_[i], tol_);
}

}  // namespace fde
