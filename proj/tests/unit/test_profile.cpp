#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bandlab/profile.hpp"
#include "bandlab/quadrature.hpp"

using namespace bandlab;

namespace {
const ProfileFamily kFamilies[] = {ProfileFamily::box, ProfileFamily::triangle,
                                   ProfileFamily::epanechnikov};
}

TEST_CASE("profiles are even, bounded, normalized") {
    for (auto fam : kFamilies) {
        const BandProfile u(fam);
        CAPTURE(u.name());
        CHECK(u.normalization_check() == doctest::Approx(1.0).epsilon(1e-10));
        for (double x = 0.0; x <= 1.5; x += 0.01) {
            CHECK(u.value(x) == u.value(-x));
            CHECK(u.value(x) >= 0.0);
            CHECK(u.value(x) <= 1.0);
        }
        CHECK(u.value(1.01) == 0.0);
        CHECK(u.value(-3.0) == 0.0);
    }
}

TEST_CASE("fourier transform: real, even, bounded by u^(0) = 1") {
    for (auto fam : kFamilies) {
        const BandProfile u(fam);
        CAPTURE(u.name());
        CHECK(u.fourier(0.0) == doctest::Approx(1.0).epsilon(1e-14));
        for (double k = 0.01; k < 60.0; k *= 1.07) {
            CHECK(u.fourier(k) == doctest::Approx(u.fourier(-k)).epsilon(1e-14));
            CHECK(std::abs(u.fourier(k)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("closed-form transforms match direct quadrature") {
    for (auto fam : kFamilies) {
        const BandProfile u(fam);
        CAPTURE(u.name());
        for (double k : {0.3, 1.0, 2.7, 7.9, 19.0}) {
            const double direct = gk_integrate(
                [&](double x) { return u.value(x) * std::cos(k * x); }, -1.0, 1.0, 1e-12);
            CHECK(u.fourier(k) == doctest::Approx(direct).epsilon(1e-10));
        }
    }
}

TEST_CASE("box transform is sin(k)/k including the small-k series") {
    const BandProfile box(ProfileFamily::box);
    CHECK(box.fourier(2.0) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
    CHECK(box.fourier(1e-6) == doctest::Approx(1.0 - 1e-12 / 6.0).epsilon(1e-15));
    const BandProfile tri(ProfileFamily::triangle);
    const double k = 3.1;
    const double s = std::sin(0.5 * k) / (0.5 * k);
    CHECK(tri.fourier(k) == doctest::Approx(s * s).epsilon(1e-14));
}

TEST_CASE("profile value at matrix index arguments") {
    const BandProfile box(ProfileFamily::box);
    const double b = 8.0;
    CHECK(box.value(0.0 / b) == 0.5);        // i == j
    CHECK(box.value(2.0 * b / b) == 0.0);    // |i-j| = 2b, outside
    const BandProfile tri(ProfileFamily::triangle);
    CHECK(tri.value((b / 2.0) / b) == 0.5);  // |i-j| = b/2
}

TEST_CASE("convolution moments: closed-form anchors") {
    const BandProfile box(ProfileFamily::box);
    CHECK(box.convolution_moment(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(box.convolution_moment(2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(box.convolution_moment(3) == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
    CHECK(box.convolution_moment(4) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    const BandProfile tri(ProfileFamily::triangle);
    CHECK(tri.convolution_moment(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tri.convolution_moment(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(tri.convolution_moment(3) == doctest::Approx(11.0 / 20.0).epsilon(1e-14));
    const BandProfile epa(ProfileFamily::epanechnikov);
    CHECK(epa.convolution_moment(1) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(epa.convolution_moment(2) == doctest::Approx(0.6).epsilon(1e-14));
}

// Independent x-space oracle: u^{*m}(0) by nested quadrature of the iterated
// convolution, no Fourier transform involved.
TEST_CASE("convolution moments match x-space convolution quadrature") {
    for (auto fam : kFamilies) {
        const BandProfile u(fam);
        CAPTURE(u.name());
        auto u2 = [&](double t) {
            return gk_integrate([&](double s) { return u.value(s) * u.value(t - s); }, -1.0,
                                1.0, 1e-11);
        };
        const double c3 = gk_integrate([&](double t) { return u2(t) * u.value(-t); }, -1.0,
                                       1.0, 1e-9);
        CHECK(u.convolution_moment(3) == doctest::Approx(c3).epsilon(1e-7));
        const double c4 =
            gk_integrate([&](double t) { return u2(t) * u2(-t); }, -2.0, 2.0, 1e-9);
        CHECK(u.convolution_moment(4) == doctest::Approx(c4).epsilon(1e-7));
    }
}

TEST_CASE("u(0), (u,u), second moment") {
    const BandProfile epa(ProfileFamily::epanechnikov);
    CHECK(epa.u0() == doctest::Approx(0.75));
    CHECK(epa.uu() == doctest::Approx(
        gk_integrate([&](double x) { return epa.value(x) * epa.value(x); }, -1, 1, 1e-12)));
    CHECK(epa.second_moment() == doctest::Approx(
        gk_integrate([&](double x) { return x * x * epa.value(x); }, -1, 1, 1e-12)));
}

TEST_CASE("unknown family names are rejected") {
    CHECK_THROWS_AS((void)profile_family_from_string("tabulated"), std::invalid_argument);
}
