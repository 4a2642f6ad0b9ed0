#include "bandlab/test_function.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bandlab/quadrature.hpp"

namespace bandlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

struct TestFunction::Impl {
    virtual ~Impl() = default;
    virtual double value(double x) const = 0;
    virtual double deriv(double x) const = 0;
    virtual bool integrable() const = 0;
    virtual bool square_integrable() const { return integrable(); }
    virtual double sup() const = 0;
    virtual std::pair<double, double> support(double eps) const = 0;
    virtual std::string label() const = 0;
};

namespace {

struct PolyImpl final : TestFunction::Impl {
    std::vector<double> c;

    explicit PolyImpl(std::vector<double> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) c.push_back(0.0);
    }
    double value(double x) const override {
        double v = 0.0;
        for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
        return v;
    }
    double deriv(double x) const override {
        double v = 0.0;
        for (size_t i = c.size(); i-- > 1;) v = v * x + c[i] * static_cast<double>(i);
        return v;
    }
    bool constant() const {
        for (size_t i = 1; i < c.size(); ++i)
            if (c[i] != 0.0) return false;
        return true;
    }
    bool zero() const { return constant() && c[0] == 0.0; }
    bool integrable() const override { return zero(); }
    double sup() const override {
        if (constant()) return std::abs(c[0]);
        throw std::domain_error("polynomial test function is unbounded");
    }
    std::pair<double, double> support(double) const override {
        if (zero()) return {0.0, 0.0};
        throw std::domain_error("polynomial test function has no effective support");
    }
    std::string label() const override {
        std::ostringstream os;
        os << "polynomial[";
        for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        os << "]";
        return os.str();
    }
};

struct GaussImpl final : TestFunction::Impl {
    double center, width;
    GaussImpl(double c0, double w0) : center(c0), width(w0) {
        if (!(width > 0.0)) throw std::invalid_argument("gaussian_bump: width > 0");
    }
    double value(double x) const override {
        const double t = (x - center) / width;
        return std::exp(-0.5 * t * t);
    }
    double deriv(double x) const override {
        const double t = (x - center) / width;
        return -t / width * std::exp(-0.5 * t * t);
    }
    bool integrable() const override { return true; }
    double sup() const override { return 1.0; }
    std::pair<double, double> support(double eps) const override {
        const double r = width * std::sqrt(-2.0 * std::log(std::max(eps, 1e-300)));
        return {center - r, center + r};
    }
    std::string label() const override {
        return "gaussian_bump[" + std::to_string(center) + "," + std::to_string(width) + "]";
    }
};

struct BumpImpl final : TestFunction::Impl {
    double center, radius;
    BumpImpl(double c0, double r0) : center(c0), radius(r0) {
        if (!(radius > 0.0)) throw std::invalid_argument("smooth_bump: radius > 0");
    }
    double value(double x) const override {
        const double t = (x - center) / radius;
        const double d = 1.0 - t * t;
        if (d <= 0.0) return 0.0;
        return std::exp(1.0 - 1.0 / d);
    }
    double deriv(double x) const override {
        const double t = (x - center) / radius;
        const double d = 1.0 - t * t;
        if (d <= 0.0) return 0.0;
        return value(x) * (-2.0 * t / (d * d)) / radius;
    }
    bool integrable() const override { return true; }
    double sup() const override { return 1.0; }
    std::pair<double, double> support(double) const override {
        return {center - radius, center + radius};
    }
    std::string label() const override {
        return "smooth_bump[" + std::to_string(center) + "," + std::to_string(radius) + "]";
    }
};

struct SmoothedImpl final : TestFunction::Impl {
    std::shared_ptr<const TestFunction::Impl> base;
    double eta;

    SmoothedImpl(std::shared_ptr<const TestFunction::Impl> b, double e)
        : base(std::move(b)), eta(e) {
        if (!(eta > 0.0)) throw std::invalid_argument("poisson_smoothed: eta > 0");
        if (!base->integrable())
            throw std::invalid_argument("poisson_smoothed: base must be integrable");
    }
    // (phi * P_eta)(x) = pi^{-1} int phi(x - eta tan t) dt over (-pi/2, pi/2)
    double convolved(double x, bool derivative) const {
        auto f = [&](double t) {
            const double y = x - eta * std::tan(t);
            return derivative ? base->deriv(y) : base->value(y);
        };
        return gk_integrate(f, -0.5 * kPi, 0.5 * kPi, 1e-9 * kPi) / kPi;
    }
    double value(double x) const override { return convolved(x, false); }
    double deriv(double x) const override { return convolved(x, true); }
    bool integrable() const override { return true; }
    double sup() const override { return base->sup(); }
    std::pair<double, double> support(double eps) const override {
        const auto [lo, hi] = base->support(eps);
        // beyond the base support by T, the smoothed value is bounded by
        // sup|phi| * (1 - 2/pi atan(T/eta)) <= sup|phi| * 2 eta / (pi T)
        const double t = 2.0 * eta * base->sup() / (kPi * std::max(eps, 1e-300));
        return {lo - t, hi + t};
    }
    std::string label() const override {
        return "poisson_smoothed[" + base->label() + "," + std::to_string(eta) + "]";
    }
};

struct CustomImpl final : TestFunction::Impl {
    std::function<double(double)> f, df;
    bool l1;
    double supn;
    std::pair<double, double> supp;
    std::string name;

    double value(double x) const override { return f(x); }
    double deriv(double x) const override {
        if (!df) throw std::domain_error("custom test function has no derivative");
        return df(x);
    }
    bool integrable() const override { return l1; }
    double sup() const override { return supn; }
    std::pair<double, double> support(double) const override {
        if (!l1) throw std::domain_error("custom test function has no effective support");
        return supp;
    }
    std::string label() const override { return name; }
};

}  // namespace

double TestFunction::operator()(double x) const { return impl_->value(x); }
double TestFunction::derivative(double x) const { return impl_->deriv(x); }
bool TestFunction::integrable() const { return impl_->integrable(); }
bool TestFunction::square_integrable() const { return impl_->square_integrable(); }
double TestFunction::sup_norm() const { return impl_->sup(); }
std::pair<double, double> TestFunction::effective_support(double eps) const {
    return impl_->support(eps);
}
std::string TestFunction::describe() const { return impl_->label(); }

TestFunction TestFunction::polynomial(std::vector<double> coefficients) {
    return TestFunction(std::make_shared<PolyImpl>(std::move(coefficients)));
}
TestFunction TestFunction::gaussian_bump(double center, double width) {
    return TestFunction(std::make_shared<GaussImpl>(center, width));
}
TestFunction TestFunction::smooth_bump(double center, double radius) {
    return TestFunction(std::make_shared<BumpImpl>(center, radius));
}
TestFunction TestFunction::poisson_smoothed(TestFunction base, double eta) {
    return TestFunction(std::make_shared<SmoothedImpl>(base.impl_, eta));
}
TestFunction TestFunction::custom(std::function<double(double)> f,
                                  std::function<double(double)> df, bool integrable,
                                  double sup_norm, std::pair<double, double> support,
                                  std::string label) {
    auto impl = std::make_shared<CustomImpl>();
    impl->f = std::move(f);
    impl->df = std::move(df);
    impl->l1 = integrable;
    impl->supn = sup_norm;
    impl->supp = support;
    impl->name = std::move(label);
    return TestFunction(std::move(impl));
}

}  // namespace bandlab
