#include "fde/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fde {

Trajectory Trajectory::point(double t, Real v) {
    Trajectory tr;
    tr.ts_ = {t};
    tr.us_ = {v};
    return tr;
}

Trajectory Trajectory::constant(double v, double a, double b) {
    if (!(b > a)) return point(a, v);
    Trajectory tr;
    tr.ts_ = {a, b};
    tr.us_ = {v, v};
    tr.dl_ = {0.0L};
    tr.dr_ = {0.0L};
    return tr;
}

Trajectory Trajectory::sample(const std::function<double(double)>& f,
                              const std::function<double(double)>& df, double a, double b,
                              std::size_t n) {
    if (!(b > a) || n == 0) throw std::invalid_argument("trajectory sample: bad span");
    Trajectory tr = point(a, f(a));
    tr.reserve(n + 1);
    double h = (b - a) / static_cast<double>(n);
    double dprev = df(a);
    for (std::size_t i = 1; i <= n; ++i) {
        double t = (i == n) ? b : a + static_cast<double>(i) * h;
        double d = df(t);
        tr.append_segment(t, f(t), dprev, d);
        dprev = d;
    }
    return tr;
}

Trajectory::Trajectory(std::vector<double> ts, std::vector<double> us,
                       std::vector<double> dl, std::vector<double> dr)
    : ts_(std::move(ts)),
      us_(us.begin(), us.end()),
      dl_(dl.begin(), dl.end()),
      dr_(dr.begin(), dr.end()) {
    if (ts_.empty() || ts_.size() != us_.size())
        throw std::invalid_argument("trajectory: empty or mismatched knot data");
    if (dl_.size() + 1 != ts_.size() || dr_.size() + 1 != ts_.size())
        throw std::invalid_argument("trajectory: segment derivative count mismatch");
    for (std::size_t i = 1; i < ts_.size(); ++i)
        if (!(ts_[i] > ts_[i - 1]))
            throw std::invalid_argument("trajectory: knots must increase strictly");
}

double Trajectory::knot_deriv(std::size_t i) const {
    if (dl_.empty()) return 0.0;
    if (i + 1 < ts_.size()) return static_cast<double>(dl_[i]);
    return static_cast<double>(dr_.back());
}

void Trajectory::append_segment(double t_next, Real u_next, Real d_left, Real d_right) {
    if (!(t_next > ts_.back()))
        throw std::invalid_argument("trajectory: appended knot must advance time");
    ts_.push_back(t_next);
    us_.push_back(u_next);
    dl_.push_back(d_left);
    dr_.push_back(d_right);
}

void Trajectory::reserve(std::size_t knots) {
    ts_.reserve(knots);
    us_.reserve(knots);
    dl_.reserve(knots);
    dr_.reserve(knots);
}

// segment index i with ts_[i] <= t < ts_[i+1]; delayed lookups cluster near
// the live end, so gallop backwards from there before binary search
std::size_t Trajectory::locate(double t) const {
    std::size_t n = ts_.size() - 1;  // number of segments
    if (t >= ts_[n - 1]) return n - 1;
    std::size_t hi = n - 1, step = 1;
    std::size_t lo = hi;
    while (lo > 0 && ts_[lo] > t) {
        hi = lo;
        lo = (lo > step) ? lo - step : 0;
        step *= 2;
    }
    auto it = std::upper_bound(ts_.begin() + static_cast<std::ptrdiff_t>(lo),
                               ts_.begin() + static_cast<std::ptrdiff_t>(hi) + 1, t);
    std::size_t i = static_cast<std::size_t>(it - ts_.begin());
    return i == 0 ? 0 : i - 1;
}

Real Trajectory::value_ext(double t) const {
    if (t <= ts_.front()) return us_.front();
    if (t >= ts_.back()) return us_.back();
    std::size_t i = locate(t);
    Real h = ts_[i + 1] - ts_[i];
    Real th = (t - ts_[i]) / h;
    Real th2 = th * th, th3 = th2 * th;
    return us_[i] * (2 * th3 - 3 * th2 + 1) + dl_[i] * h * (th3 - 2 * th2 + th) +
           us_[i + 1] * (-2 * th3 + 3 * th2) + dr_[i] * h * (th3 - th2);
}

double Trajectory::derivative(double t) const {
    if (t < ts_.front() || t > ts_.back() || dl_.empty()) return 0.0;
    if (t == ts_.back()) return static_cast<double>(dr_.back());
    std::size_t i = locate(t);
    Real h = ts_[i + 1] - ts_[i];
    Real th = (t - ts_[i]) / h;
    Real th2 = th * th;
    return static_cast<double>(
        (us_[i] * (6 * th2 - 6 * th) + dl_[i] * h * (3 * th2 - 4 * th + 1) +
         us_[i + 1] * (-6 * th2 + 6 * th) + dr_[i] * h * (3 * th2 - 2 * th)) /
        h);
}

double theta_eval(const Trajectory& traj, double t) { return traj.value(t); }

}  // namespace fde
