#include "bandlab/profile.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "bandlab/quadrature.hpp"

namespace bandlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

ProfileFamily profile_family_from_string(const std::string& name) {
    if (name == "box") return ProfileFamily::box;
    if (name == "triangle") return ProfileFamily::triangle;
    if (name == "epanechnikov") return ProfileFamily::epanechnikov;
    throw std::invalid_argument("unknown profile family: " + name);
}

std::string to_string(ProfileFamily family) {
    switch (family) {
        case ProfileFamily::box: return "box";
        case ProfileFamily::triangle: return "triangle";
        case ProfileFamily::epanechnikov: return "epanechnikov";
    }
    throw std::logic_error("bad ProfileFamily");
}

// Lazily extended table of u^{*m}(0). Anchored by closed forms for small m
// (box and triangle are sinc-power integrals, epanechnikov m<=2 is
// elementary); higher orders by quadrature of u^(k)^m, whose tail beyond K
// is bounded by (A/k^q)^m.
class ProfileMoments {
  public:
    ProfileMoments(ProfileFamily family, double (*fourier)(double), double amp, int pow)
        : family_(family), fourier_(fourier), tail_amp_(amp), tail_pow_(pow) {
        switch (family_) {
            case ProfileFamily::box:
                table_ = {0.5, 0.5, 3.0 / 8.0, 1.0 / 3.0};
                break;
            case ProfileFamily::triangle:
                // int sinc^{2m} closed forms: pi, 2pi/3, 11pi/20.
                table_ = {1.0, 2.0 / 3.0, 11.0 / 20.0};
                break;
            case ProfileFamily::epanechnikov:
                table_ = {0.75, 0.6};
                break;
        }
    }

    double get(int m) {
        if (m < 1) throw std::invalid_argument("convolution_moment: m >= 1");
        std::lock_guard<std::mutex> lock(mtx_);
        while (static_cast<int>(table_.size()) < m) extend();
        return table_[m - 1];
    }

  private:
    void extend() {
        const int m = static_cast<int>(table_.size()) + 1;
        // Tail of (1/pi) int_K^inf |u^|^m dk <= A^m K^{1-mq} / (pi (mq-1)).
        const double tol = 1e-14;
        const double mq = static_cast<double>(m) * tail_pow_;
        double kmax = std::pow(std::pow(tail_amp_, m) / (kPi * (mq - 1.0) * tol), 1.0 / (mq - 1.0));
        kmax = std::max(kmax, 16.0 * kPi);
        const int panels = static_cast<int>(std::ceil(kmax / kPi));
        KahanSum acc;
        for (int p = 0; p < panels; ++p) {
            acc.add(gl_integrate([this, m](double k) { return std::pow(fourier_(k), m); },
                                 p * kPi, (p + 1) * kPi, 12));
        }
        table_.push_back(acc.value() / kPi);
    }

    ProfileFamily family_;
    double (*fourier_)(double);
    double tail_amp_;
    int tail_pow_;
    std::mutex mtx_;
    std::vector<double> table_;
};

namespace {

double box_value(double x) { return std::abs(x) <= 1.0 ? 0.5 : 0.0; }
double triangle_value(double x) {
    const double a = std::abs(x);
    return a <= 1.0 ? 1.0 - a : 0.0;
}
double epanechnikov_value(double x) {
    const double a = std::abs(x);
    return a <= 1.0 ? 0.75 * (1.0 - x * x) : 0.0;
}

double box_fourier(double k) {
    const double a = std::abs(k);
    if (a < 1e-4) {
        const double k2 = k * k;
        return 1.0 - k2 / 6.0 * (1.0 - k2 / 20.0);
    }
    return std::sin(k) / k;
}

double triangle_fourier(double k) {
    const double s = box_fourier(0.5 * k);  // sin(k/2)/(k/2)
    return s * s;
}

double epanechnikov_fourier(double k) {
    const double a = std::abs(k);
    if (a < 0.5) {
        // 1 - k^2/10 + k^4/280 - k^6/15120 + k^8/1330560
        const double k2 = k * k;
        return 1.0 + k2 * (-0.1 + k2 * (1.0 / 280.0 + k2 * (-1.0 / 15120.0 + k2 / 1330560.0)));
    }
    return 3.0 * (std::sin(k) - k * std::cos(k)) / (k * k * k);
}

std::shared_ptr<ProfileMoments> moments_for(ProfileFamily family) {
    static std::shared_ptr<ProfileMoments> box_m =
        std::make_shared<ProfileMoments>(ProfileFamily::box, &box_fourier, 1.0, 1);
    static std::shared_ptr<ProfileMoments> tri_m =
        std::make_shared<ProfileMoments>(ProfileFamily::triangle, &triangle_fourier, 4.0, 2);
    static std::shared_ptr<ProfileMoments> epa_m =
        std::make_shared<ProfileMoments>(ProfileFamily::epanechnikov, &epanechnikov_fourier, 6.0, 2);
    switch (family) {
        case ProfileFamily::box: return box_m;
        case ProfileFamily::triangle: return tri_m;
        case ProfileFamily::epanechnikov: return epa_m;
    }
    throw std::logic_error("bad ProfileFamily");
}

}  // namespace

BandProfile::BandProfile(ProfileFamily family)
    : family_(family), moments_(moments_for(family)) {}

double BandProfile::value(double x) const {
    switch (family_) {
        case ProfileFamily::box: return box_value(x);
        case ProfileFamily::triangle: return triangle_value(x);
        case ProfileFamily::epanechnikov: return epanechnikov_value(x);
    }
    throw std::logic_error("bad ProfileFamily");
}

double BandProfile::fourier(double k) const {
    switch (family_) {
        case ProfileFamily::box: return box_fourier(k);
        case ProfileFamily::triangle: return triangle_fourier(k);
        case ProfileFamily::epanechnikov: return epanechnikov_fourier(k);
    }
    throw std::logic_error("bad ProfileFamily");
}

double BandProfile::u0() const { return value(0.0); }

double BandProfile::uu() const {
    switch (family_) {
        case ProfileFamily::box: return 0.5;
        case ProfileFamily::triangle: return 2.0 / 3.0;
        case ProfileFamily::epanechnikov: return 0.6;
    }
    throw std::logic_error("bad ProfileFamily");
}

double BandProfile::second_moment() const {
    switch (family_) {
        case ProfileFamily::box: return 1.0 / 3.0;
        case ProfileFamily::triangle: return 1.0 / 6.0;
        case ProfileFamily::epanechnikov: return 0.2;
    }
    throw std::logic_error("bad ProfileFamily");
}

double BandProfile::convolution_moment(int m) const { return moments_->get(m); }

double BandProfile::tail_amplitude() const {
    switch (family_) {
        case ProfileFamily::box: return 1.0;
        case ProfileFamily::triangle: return 4.0;
        case ProfileFamily::epanechnikov: return 6.0;
    }
    throw std::logic_error("bad ProfileFamily");
}

int BandProfile::tail_power() const { return family_ == ProfileFamily::box ? 1 : 2; }

double BandProfile::normalization_check() const {
    return gk_integrate([this](double x) { return value(x); }, -support_radius(),
                        support_radius(), 1e-12);
}

}  // namespace bandlab
