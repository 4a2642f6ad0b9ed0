#include "bandlab/distribution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bandlab/quadrature.hpp"

namespace bandlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = 1.7320508075688772;

double box_muller(EntryStream& s) {
    const double u1 = s.next_unit();
    const double u2 = s.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// log Gamma via Stirling series; enough accuracy for the t-density constant.
double log_gamma(double x) {
    // Lanczos g=7, n=9
    static const double c[9] = {0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,  12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5)
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    x -= 1.0;
    double a = c[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += c[i] / (x + i);
    return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

DistributionFamily distribution_family_from_string(const std::string& name) {
    if (name == "gaussian") return DistributionFamily::gaussian;
    if (name == "rademacher") return DistributionFamily::rademacher;
    if (name == "uniform") return DistributionFamily::uniform;
    if (name == "student_t") return DistributionFamily::student_t;
    throw std::invalid_argument("unknown distribution family: " + name);
}

std::string to_string(DistributionFamily family) {
    switch (family) {
        case DistributionFamily::gaussian: return "gaussian";
        case DistributionFamily::rademacher: return "rademacher";
        case DistributionFamily::uniform: return "uniform";
        case DistributionFamily::student_t: return "student_t";
    }
    throw std::logic_error("bad DistributionFamily");
}

EntryDistribution::EntryDistribution(DistributionFamily family, double nu)
    : family_(family), nu_(nu) {
    if (family == DistributionFamily::student_t) {
        // needs nu > 4 + eps after unit-variance standardization
        if (!(nu > 4.0 + epsilon()))
            throw std::invalid_argument("student_t: nu must exceed 4 + epsilon");
    }
}

std::string EntryDistribution::name() const {
    if (family_ == DistributionFamily::student_t)
        return "student_t(" + std::to_string(static_cast<int>(nu_)) + ")";
    return to_string(family_);
}

double EntryDistribution::kappa4() const {
    switch (family_) {
        case DistributionFamily::gaussian: return 0.0;
        case DistributionFamily::rademacher: return -2.0;
        case DistributionFamily::uniform: return -1.2;
        case DistributionFamily::student_t: return 6.0 / (nu_ - 4.0);
    }
    throw std::logic_error("bad DistributionFamily");
}

double EntryDistribution::epsilon() const {
    if (family_ == DistributionFamily::student_t) return 2.5;
    return 1.0;
}

double EntryDistribution::moment_bound() const {
    switch (family_) {
        case DistributionFamily::gaussian: return 4.0;   // E|Z|^5 ~ 3.19
        case DistributionFamily::rademacher: return 1.0;
        case DistributionFamily::uniform: return 2.0;    // E|w|^5 = 9 sqrt3/6 ~ 2.6? bounded by 3^{2.5}/6
        case DistributionFamily::student_t: return 3.0;  // E|w|^{6.5} ~ 2.44 for nu=9
    }
    throw std::logic_error("bad DistributionFamily");
}

double EntryDistribution::sample(EntryStream& stream) const {
    switch (family_) {
        case DistributionFamily::gaussian:
            return box_muller(stream);
        case DistributionFamily::rademacher:
            return (stream.next_u64() & 1u) ? 1.0 : -1.0;
        case DistributionFamily::uniform:
            return (2.0 * stream.next_unit() - 1.0) * kSqrt3;
        case DistributionFamily::student_t: {
            // t = Z / sqrt(chi2_nu / nu), standardized by sqrt((nu-2)/nu).
            // Integer nu: chi2 as a sum of squared normals keeps the draw
            // count fixed (counter-stream friendly).
            const int n = static_cast<int>(nu_);
            const double z = box_muller(stream);
            double chi2 = 0.0;
            for (int i = 0; i < n; ++i) {
                const double g = box_muller(stream);
                chi2 += g * g;
            }
            const double t = z / std::sqrt(chi2 / nu_);
            return t * std::sqrt((nu_ - 2.0) / nu_);
        }
    }
    throw std::logic_error("bad DistributionFamily");
}

double EntryDistribution::density(double x) const {
    switch (family_) {
        case DistributionFamily::gaussian:
            return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
        case DistributionFamily::uniform:
            return std::abs(x) <= kSqrt3 ? 1.0 / (2.0 * kSqrt3) : 0.0;
        case DistributionFamily::student_t: {
            // standardized: x = t sqrt((nu-2)/nu), t ~ t_nu
            const double s = std::sqrt(nu_ / (nu_ - 2.0));  // dt/dx
            const double t = x * s;
            const double logc = log_gamma(0.5 * (nu_ + 1.0)) - log_gamma(0.5 * nu_) -
                                0.5 * std::log(nu_ * kPi);
            return s * std::exp(logc - 0.5 * (nu_ + 1.0) * std::log1p(t * t / nu_));
        }
        case DistributionFamily::rademacher:
            throw std::domain_error("rademacher law is atomic, no density");
    }
    throw std::logic_error("bad DistributionFamily");
}

double EntryDistribution::truncated_mean(double b) const {
    if (!(b > 0.0)) throw std::invalid_argument("truncated_mean: b > 0 required");
    if (symmetric()) return 0.0;
    return truncated_mean_quadrature(b);
}

double EntryDistribution::truncated_mean_quadrature(double b) const {
    const double cut = std::sqrt(b);
    if (family_ == DistributionFamily::rademacher)
        return cut >= 1.0 ? 0.0 : 0.0;  // +1 and -1 atoms cancel either way
    return gk_integrate([this](double x) { return x * density(x); }, -cut, cut, 1e-13);
}

double truncate_center(double x, double b, const EntryDistribution& dist) {
    if (!(b > 0.0)) throw std::invalid_argument("truncate_center: b > 0 required");
    const double kept = std::abs(x) <= std::sqrt(b) ? x : 0.0;
    return kept - dist.truncated_mean(b);
}

}  // namespace bandlab
