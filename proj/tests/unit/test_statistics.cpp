#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bandlab/quadrature.hpp"
#include "bandlab/statistics.hpp"

using namespace bandlab;

namespace {
constexpr double kPi = std::numbers::pi;

Spectrum random_spectrum(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ur(-2.0, 2.0);
    Spectrum s;
    s.eigenvalues.resize(n);
    for (auto& l : s.eigenvalues) l = ur(rng);
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
}

TestFunction cauchy(double center, double gamma) {
    return TestFunction::custom(
        [=](double x) { return poisson_kernel(x - center, gamma); },
        [=](double x) {
            const double d = x - center;
            return -2.0 * gamma * d / (kPi * std::pow(d * d + gamma * gamma, 2.0));
        },
        true, 1.0 / (kPi * gamma), {center - gamma * 4e4, center + gamma * 4e4},
        "cauchy");
}

}  // namespace

TEST_CASE("evaluate_les: counting and trace identities") {
    std::mt19937_64 rng(4);
    const auto s = random_spectrum(64, rng);
    CHECK(evaluate_les(s, TestFunction::constant(1.0)) == doctest::Approx(64.0));
    double sq = 0.0;
    for (double l : s.eigenvalues) sq += l * l;
    CHECK(evaluate_les(s, TestFunction::polynomial({0, 0, 1})) == doctest::Approx(sq));
}

TEST_CASE("evaluate_les is linear") {
    std::mt19937_64 rng(9);
    const auto s = random_spectrum(32, rng);
    const auto phi = TestFunction::gaussian_bump(0.3, 0.7);
    const auto psi = TestFunction::polynomial({1, 2, 3});
    const auto combo = TestFunction::custom(
        [=](double x) { return 2.0 * phi(x) - 0.5 * psi(x); }, nullptr, false, 0.0,
        {0, 0}, "combo");
    CHECK(evaluate_les(s, combo) ==
          doctest::Approx(2.0 * evaluate_les(s, phi) - 0.5 * evaluate_les(s, psi))
              .epsilon(1e-12));
}

TEST_CASE("center_scale: examples") {
    CHECK_THROWS_AS(center_scale({1.0}, 4.0, 16), std::invalid_argument);

    auto all_same = center_scale({5.0, 5.0, 5.0}, 4.0, 16);
    for (const auto& s : all_same) CHECK(s.value == 0.0);

    auto two = center_scale({0.0, 2.0}, 1.0, 4);
    CHECK(two[0].value == doctest::Approx(-0.5));
    CHECK(two[1].value == doctest::Approx(0.5));
    CHECK(two[0].replica_id == 0);
    CHECK(two[1].replica_id == 1);

    std::mt19937_64 rng(8);
    std::vector<double> vals(101);
    for (auto& v : vals) v = std::normal_distribution<double>(3.0, 2.0)(rng);
    auto cs = center_scale(vals, 9.0, 81);
    KahanSum mean;
    for (const auto& s : cs) mean.add(s.value);
    CHECK(std::abs(mean.value()) < 1e-12);
}

TEST_CASE("poisson kernel values and normalization") {
    CHECK(poisson_kernel(0.0, 1.0) == doctest::Approx(1.0 / kPi));
    const double eta = 0.37;
    CHECK(poisson_kernel(eta, eta) == doctest::Approx(1.0 / (2.0 * kPi * eta)));
    const double mass =
        gk_integrate([&](double x) { return poisson_kernel(x, eta); }, -4000.0, 4000.0, 1e-9);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS(poisson_kernel(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("poisson smoothing: semigroup property of the kernel family") {
    const double eta = 0.4, etap = 0.25;
    const auto smoothed = poisson_smooth(cauchy(0.0, etap), eta);
    for (double x : {-1.0, 0.0, 0.55, 2.0}) {
        CHECK(smoothed(x) == doctest::Approx(poisson_kernel(x, eta + etap)).epsilon(1e-7));
    }
}

TEST_CASE("poisson smoothing: approximate identity as eta -> 0") {
    const auto phi = TestFunction::gaussian_bump(0.2, 0.8);
    const auto smoothed = poisson_smooth(phi, 1e-4);
    for (double x : {-0.5, 0.2, 1.0}) {
        CHECK(smoothed(x) == doctest::Approx(phi(x)).epsilon(1e-3));
    }
}

TEST_CASE("poisson smoothing rejects polynomials") {
    CHECK_THROWS_AS(poisson_smooth(TestFunction::polynomial({0, 1}), 0.1),
                    std::invalid_argument);
}

TEST_CASE("smoothing commutes with shifts") {
    const double eta = 0.15, shift = 0.6;
    const auto base = TestFunction::smooth_bump(0.0, 1.2);
    const auto shifted = TestFunction::smooth_bump(shift, 1.2);
    const auto a = poisson_smooth(base, eta);
    const auto b = poisson_smooth(shifted, eta);
    for (double x : {-0.8, 0.0, 0.4, 1.3}) {
        CHECK(a(x) == doctest::Approx(b(x + shift)).epsilon(1e-7));
    }
}

TEST_CASE("resolvent_les: exchange of convolution on a single atom") {
    Spectrum s;
    s.eigenvalues = {0.0};
    const double eta = 0.3, etap = 0.2;
    const double got = resolvent_les(s, cauchy(0.0, etap), eta);
    CHECK(got == doctest::Approx(1.0 / (kPi * (eta + etap))).epsilon(1e-6));
}

TEST_CASE("resolvent_les is positive for nonnegative phi") {
    std::mt19937_64 rng(12);
    const auto s = random_spectrum(25, rng);
    CHECK(resolvent_les(s, TestFunction::smooth_bump(0.0, 1.5), 0.25) > 0.0);
}

TEST_CASE("resolvent route equals smooth-then-sum route") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 4; ++trial) {
        const auto s = random_spectrum(40, rng);
        const auto phi = trial % 2 == 0 ? TestFunction::smooth_bump(0.2, 1.4)
                                        : TestFunction::gaussian_bump(-0.3, 0.8);
        for (double eta : {0.1, 0.3}) {
            const double a = resolvent_les(s, phi, eta);
            const double b = evaluate_les(s, poisson_smooth(phi, eta));
            CHECK(std::abs(a - b) <= 1e-6);
        }
    }
}

TEST_CASE("sobolev norm: zero function") {
    CHECK(sobolev_norm(TestFunction::constant(0.0), 2.5) == 0.0);
}

TEST_CASE("sobolev norm of the unit gaussian matches direct quadrature") {
    // phi^(k) = sqrt(2 pi) e^{-k^2/2}; norm^2 = 2 pi int (1+2|k|)^{2s} e^{-k^2} dk
    const double s = 2.5;
    const double direct = std::sqrt(
        2.0 * kPi *
        gk_integrate([&](double k) { return std::pow(1.0 + 2.0 * std::abs(k), 2.0 * s) *
                                             std::exp(-k * k); },
                     -14.0, 14.0, 1e-10));
    const double fftv = sobolev_norm(TestFunction::gaussian_bump(0.0, 1.0), s);
    CHECK(fftv == doctest::Approx(direct).epsilon(1e-5));
}

TEST_CASE("sobolev norm: homogeneity and monotonicity in s") {
    const auto phi = TestFunction::gaussian_bump(0.4, 1.3);
    const auto phi3 = TestFunction::custom([=](double x) { return 3.0 * phi(x); },
                                           [=](double x) { return 3.0 * phi.derivative(x); },
                                           true, 3.0, phi.effective_support(1e-15), "3phi");
    CHECK(sobolev_norm(phi3, 2.5) ==
          doctest::Approx(3.0 * sobolev_norm(phi, 2.5)).epsilon(1e-10));
    CHECK(sobolev_norm(phi, 2.0) <= sobolev_norm(phi, 2.5));
    CHECK(sobolev_norm(phi, 2.5) <= sobolev_norm(phi, 3.0));
}

TEST_CASE("sobolev norm rejects polynomials") {
    CHECK_THROWS_AS(sobolev_norm(TestFunction::polynomial({0, 0, 1}), 2.5),
                    std::invalid_argument);
}
