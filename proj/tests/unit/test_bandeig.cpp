#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bandlab/bandeig.hpp"
#include "bandlab/statistics.hpp"
#include "bandlab/theory.hpp"
#include "dense_oracle.hpp"

using namespace bandlab;

namespace {

BandMatrix random_band(int n, int w, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    BandMatrix m(n, w);
    for (int d = 0; d <= w; ++d)
        for (int i = 0; i + d < n; ++i) m.diagonal(d)[i] = nd(rng);
    return m;
}

// shared desk-scale fixture: one n=2000, b=50 gaussian spectrum
const Spectrum& big_spectrum() {
    static const Spectrum s = [] {
        BandMatrixSpec spec{2000, 50.0, BandProfile(ProfileFamily::box),
                            EntryDistribution::gaussian(), 2024};
        return eigenvalues(sample_band_matrix(spec));
    }();
    return s;
}

}  // namespace

TEST_CASE("diagonal matrix passes through") {
    BandMatrix m(6, 0);
    for (int i = 0; i < 6; ++i) m.diagonal(0)[i] = i - 2.5;
    const auto t = reduce_to_tridiagonal(m);
    for (int i = 0; i < 6; ++i) CHECK(t.diag[i] == m.diagonal(0)[i]);
    for (double e : t.offdiag) CHECK(e == 0.0);
}

TEST_CASE("tridiagonal input is returned bit-for-bit") {
    std::mt19937_64 rng(5);
    const auto m = random_band(40, 1, rng);
    const auto t = reduce_to_tridiagonal(m);
    for (int i = 0; i < 40; ++i) CHECK(t.diag[i] == m.diagonal(0)[i]);
    for (int i = 0; i < 39; ++i) CHECK(t.offdiag[i] == m.diagonal(1)[i]);
}

TEST_CASE("reduction preserves the spectrum (30x30, w=4)") {
    std::mt19937_64 rng(17);
    const auto m = random_band(30, 4, rng);
    const auto t = reduce_to_tridiagonal(m);
    const auto s = tridiag_eigenvalues(t);
    const auto ref = bandlab::testing::jacobi_eigenvalues(m.densify());
    const double scale = std::max(std::abs(ref.front()), std::abs(ref.back()));
    for (int i = 0; i < 30; ++i)
        CHECK(std::abs(s.eigenvalues[i] - ref[i]) <= 1e-10 * scale);
}

TEST_CASE("constant diagonal gives a flat spectrum") {
    Tridiagonal t;
    t.diag.assign(12, 3.25);
    t.offdiag.assign(11, 0.0);
    const auto s = tridiag_eigenvalues(t);
    for (double lam : s.eigenvalues) CHECK(lam == 3.25);
}

TEST_CASE("discrete Laplacian spectrum matches the closed form") {
    const int n = 200;
    Tridiagonal t;
    t.diag.assign(n, 2.0);
    t.offdiag.assign(n - 1, -1.0);
    const auto s = tridiag_eigenvalues(t);
    for (int k = 1; k <= n; ++k) {
        const double exact = 2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1));
        CHECK(std::abs(s.eigenvalues[k - 1] - exact) <= 1e-10);
    }
}

TEST_CASE("random 40x40 tridiagonal vs dense oracle") {
    std::mt19937_64 rng(99);
    const auto m = random_band(40, 1, rng);
    const auto s = eigenvalues(m);
    const auto ref = bandlab::testing::jacobi_eigenvalues(m.densify());
    for (int i = 0; i < 40; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(ref[i]).epsilon(1e-10));
}

TEST_CASE("zero matrix") {
    BandMatrix m(10, 3);
    const auto s = eigenvalues(m);
    for (double lam : s.eigenvalues) CHECK(lam == 0.0);
}

TEST_CASE("n=50 band matrix vs dense oracle") {
    std::mt19937_64 rng(123);
    const auto m = random_band(50, 6, rng);
    const auto s = eigenvalues(m);
    const auto ref = bandlab::testing::jacobi_eigenvalues(m.densify());
    const double scale = std::max(std::abs(ref.front()), std::abs(ref.back()));
    for (int i = 0; i < 50; ++i)
        CHECK(std::abs(s.eigenvalues[i] - ref[i]) <= 1e-10 * scale);
}

TEST_CASE("dense-oracle equivalence over 200 random instances") {
    std::mt19937_64 rng(31337);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 63);
        int w = static_cast<int>(rng() % 9);
        if (w >= n) w = n - 1;
        const auto m = random_band(n, w, rng);
        const auto s = eigenvalues(m);
        const auto ref = bandlab::testing::jacobi_eigenvalues(m.densify());
        const double scale =
            std::max({std::abs(ref.front()), std::abs(ref.back()), 1e-12});
        for (int i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(s.eigenvalues[i] - ref[i]) / scale);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("trace and Frobenius conservation are enforced") {
    std::mt19937_64 rng(2);
    const auto m = random_band(64, 5, rng);
    const auto s = eigenvalues(m);
    double sum = 0.0, sq = 0.0;
    for (double lam : s.eigenvalues) {
        sum += lam;
        sq += lam * lam;
    }
    CHECK(sum == doctest::Approx(m.trace()).epsilon(1e-10));
    CHECK(sq == doctest::Approx(m.frobenius_sq()).epsilon(1e-10));
}

TEST_CASE("periodized matrices take the dense path") {
    BandMatrixSpec spec{100, 4.0, BandProfile(ProfileFamily::box),
                        EntryDistribution::gaussian(), 8};
    const auto p = sample_periodized(spec);
    const auto s = eigenvalues(p);
    const auto ref = bandlab::testing::jacobi_eigenvalues(p.densify());
    for (int i = 0; i < 100; ++i)
        CHECK(s.eigenvalues[i] == doctest::Approx(ref[i]).epsilon(1e-9));
}

TEST_CASE("semicircle law at desk scale: binned TV distance <= 0.05") {
    const auto& s = big_spectrum();
    const int bins = 40;
    const double lo = -2.0, hi = 2.0;
    std::vector<double> emp(bins, 0.0);
    for (double lam : s.eigenvalues) {
        if (lam < lo || lam >= hi) continue;
        emp[static_cast<int>((lam - lo) / (hi - lo) * bins)] += 1.0 / s.n();
    }
    double tv = 0.0;
    for (int i = 0; i < bins; ++i) {
        const double a = lo + (hi - lo) * i / bins;
        const double b = lo + (hi - lo) * (i + 1) / bins;
        const double th = gk_integrate([](double x) { return semicircle_density(x); }, a, b, 1e-10);
        tv += 0.5 * std::abs(emp[i] - th);
    }
    CHECK(tv <= 0.05);
}

TEST_CASE("stieltjes trace basics and Herglotz property") {
    Spectrum one;
    one.eigenvalues = {0.0};
    const auto v = stieltjes_trace(one, {0.0, 1.0});
    CHECK(v.real() == doctest::Approx(0.0));
    CHECK(v.imag() == doctest::Approx(1.0));

    Spectrum zeros;
    zeros.eigenvalues.assign(7, 0.0);
    const auto w = stieltjes_trace(zeros, {0.0, 0.25});
    CHECK(w.imag() == doctest::Approx(7.0 / 0.25));

    CHECK_THROWS_AS(stieltjes_trace(one, {1.0, 0.0}), std::invalid_argument);

    const auto& s = big_spectrum();
    for (double re : {-1.5, 0.0, 2.5}) {
        for (double im : {0.1, 0.7, 3.0}) {
            CHECK(stieltjes_trace(s, {re, im}).imag() > 0.0);
        }
    }
}

TEST_CASE("normalized stieltjes trace approaches g at desk scale") {
    const auto& s = big_spectrum();
    const auto gn = stieltjes_trace(s, {0.0, 2.0}) / 2000.0;
    const auto g = stieltjes_g({0.0, 2.0});
    CHECK(std::abs(gn - g) <= 0.02);
}

TEST_CASE("sweep cap triggers on non-finite input") {
    Tridiagonal t;
    t.diag = {std::nan(""), 1.0};
    t.offdiag = {1.0};
    CHECK_THROWS(tridiag_eigenvalues(t));
}
