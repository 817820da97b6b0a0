#include "fde/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fde {

struct CoeffFunction::Impl {
    virtual ~Impl() = default;
    virtual double eval(double t) const = 0;
    virtual CoeffKind kind() const = 0;
    virtual std::string name() const = 0;
};

namespace {

struct ConstantImpl final : CoeffFunction::Impl {
    double v;
    explicit ConstantImpl(double v) : v(v) {}
    double eval(double) const override { return v; }
    CoeffKind kind() const override { return CoeffKind::constant; }
    std::string name() const override { return "constant"; }
};

struct TableImpl final : CoeffFunction::Impl {
    std::vector<double> ts, vs;
    TableImpl(std::vector<double> t, std::vector<double> v)
        : ts(std::move(t)), vs(std::move(v)) {
        if (ts.empty() || ts.size() != vs.size())
            throw std::invalid_argument("coeff table: empty or mismatched columns");
        for (std::size_t i = 1; i < ts.size(); ++i)
            if (!(ts[i] > ts[i - 1]))
                throw std::invalid_argument("coeff table: knots must increase strictly");
    }
    double eval(double t) const override {
        if (t <= ts.front()) return vs.front();
        if (t >= ts.back()) return vs.back();
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
        double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
        return vs[i] + w * (vs[i + 1] - vs[i]);
    }
    CoeffKind kind() const override { return CoeffKind::table; }
    std::string name() const override { return "table"; }
};

struct PhiImpl final : CoeffFunction::Impl {
    double t0;
    explicit PhiImpl(double t0) : t0(t0) {}
    double eval(double t) const override {
        if (t > t0) return 1.0;
        double d = t0 + 1.0 - t;
        return 1.0 / (d * d);
    }
    CoeffKind kind() const override { return CoeffKind::builtin; }
    std::string name() const override { return "phi"; }
};

struct StepLeftImpl final : CoeffFunction::Impl {
    double t0, left, right;
    StepLeftImpl(double t0, double l, double r) : t0(t0), left(l), right(r) {}
    double eval(double t) const override { return t <= t0 ? left : right; }
    CoeffKind kind() const override { return CoeffKind::builtin; }
    std::string name() const override { return "step-left"; }
};

struct RetardedByImpl final : CoeffFunction::Impl {
    CoeffFunction delay;
    explicit RetardedByImpl(CoeffFunction d) : delay(std::move(d)) {}
    double eval(double t) const override { return t - delay(t); }
    CoeffKind kind() const override { return CoeffKind::builtin; }
    std::string name() const override { return "retarded-by"; }
};

struct SumImpl final : CoeffFunction::Impl {
    CoeffFunction a, b;
    SumImpl(CoeffFunction a, CoeffFunction b) : a(std::move(a)), b(std::move(b)) {}
    double eval(double t) const override { return a(t) + b(t); }
    CoeffKind kind() const override { return CoeffKind::builtin; }
    std::string name() const override { return "sum"; }
};

struct DifferenceImpl final : CoeffFunction::Impl {
    CoeffFunction a, b;
    DifferenceImpl(CoeffFunction a, CoeffFunction b) : a(std::move(a)), b(std::move(b)) {}
    double eval(double t) const override { return a(t) - b(t); }
    CoeffKind kind() const override { return CoeffKind::builtin; }
    std::string name() const override { return "difference"; }
};

struct ProductImpl final : CoeffFunction::Impl {
    CoeffFunction a, b;
    ProductImpl(CoeffFunction a, CoeffFunction b) : a(std::move(a)), b(std::move(b)) {}
    double eval(double t) const override { return a(t) * b(t); }
    CoeffKind kind() const override { return CoeffKind::builtin; }
    std::string name() const override { return "product"; }
};

}  // namespace

CoeffFunction::CoeffFunction() : impl_(std::make_shared<ConstantImpl>(0.0)) {}
CoeffFunction::CoeffFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

CoeffFunction CoeffFunction::constant(double v) {
    return CoeffFunction(std::make_shared<ConstantImpl>(v));
}
CoeffFunction CoeffFunction::table(std::vector<double> ts, std::vector<double> vs) {
    return CoeffFunction(std::make_shared<TableImpl>(std::move(ts), std::move(vs)));
}
CoeffFunction CoeffFunction::phi(double t0) {
    return CoeffFunction(std::make_shared<PhiImpl>(t0));
}
CoeffFunction CoeffFunction::step_left(double t0, double left, double right) {
    return CoeffFunction(std::make_shared<StepLeftImpl>(t0, left, right));
}
CoeffFunction CoeffFunction::retarded_by(CoeffFunction delay) {
    return CoeffFunction(std::make_shared<RetardedByImpl>(std::move(delay)));
}
CoeffFunction CoeffFunction::sum(CoeffFunction a, CoeffFunction b) {
    return CoeffFunction(std::make_shared<SumImpl>(std::move(a), std::move(b)));
}
CoeffFunction CoeffFunction::difference(CoeffFunction a, CoeffFunction b) {
    return CoeffFunction(std::make_shared<DifferenceImpl>(std::move(a), std::move(b)));
}
CoeffFunction CoeffFunction::product(CoeffFunction a, CoeffFunction b) {
    return CoeffFunction(std::make_shared<ProductImpl>(std::move(a), std::move(b)));
}

CoeffFunction CoeffFunction::nonnegative() const {
    CoeffFunction c(*this);
    c.require_nonneg_ = true;
    return c;
}
CoeffFunction CoeffFunction::retarded() const {
    CoeffFunction c(*this);
    c.require_retarded_ = true;
    return c;
}

double CoeffFunction::operator()(double t) const {
    double v = impl_->eval(t);
    if (require_nonneg_ && v < 0.0) {
        std::ostringstream os;
        os << "coefficient " << impl_->name() << " negative at t=" << t << " (value " << v << ")";
        throw std::domain_error(os.str());
    }
    if (require_retarded_ && v > t) {
        std::ostringstream os;
        os << "deviation map " << impl_->name() << " not retarded at t=" << t << " (maps to " << v << ")";
        throw std::domain_error(os.str());
    }
    return v;
}

CoeffKind CoeffFunction::kind() const { return impl_->kind(); }
std::string CoeffFunction::name() const { return impl_->name(); }

}  // namespace fde
