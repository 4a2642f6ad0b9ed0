#pragma once

#include <memory>
#include <string>
#include <vector>

namespace bandlab {

enum class ProfileFamily { box, triangle, epanechnikov };

ProfileFamily profile_family_from_string(const std::string& name);
std::string to_string(ProfileFamily family);

// Band shape function u: even, nonnegative, unit mass, supported on
// [-C*, C*]. Three named kernels with closed-form Fourier transforms:
//
//   box           u(x) = 1/2            on [-1,1]
//   triangle      u(x) = 1 - |x|        on [-1,1]
//   epanechnikov  u(x) = 3/4 (1 - x^2)  on [-1,1]
//
// Arbitrary tabulated profiles are not accepted.
class BandProfile {
  public:
    explicit BandProfile(ProfileFamily family);

    ProfileFamily family() const { return family_; }
    std::string name() const { return to_string(family_); }

    double value(double x) const;            // u(x)
    double fourier(double k) const;          // u^(k) = int e^{ikx} u(x) dx
    double support_radius() const { return 1.0; }  // C*
    double u0() const;                        // u(0)
    double uu() const;                        // (u,u) = int u^2
    double second_moment() const;             // int x^2 u(x) dx

    // Diagonal of the m-fold self-convolution, u^{*m}(0). Equals
    // (2 pi)^{-1} int u^(k)^m dk; the profile-shape channel of every limiting
    // formula. m >= 1. Values are cached.
    double convolution_moment(int m) const;

    // |u^(k)| <= tail_amplitude / k^tail_power for k >= 1.
    double tail_amplitude() const;
    int tail_power() const;

    // Quadrature of int u over the support (normalization check value).
    double normalization_check() const;

  private:
    ProfileFamily family_;
    std::shared_ptr<class ProfileMoments> moments_;
};

}  // namespace bandlab
