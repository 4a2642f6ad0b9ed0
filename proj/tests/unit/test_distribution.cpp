#include <doctest.h>

#include <cmath>

#include "bandlab/distribution.hpp"
#include "bandlab/quadrature.hpp"

using namespace bandlab;

namespace {

struct MomentEstimate {
    double mean, var, m4, m65;
};

MomentEstimate estimate(const EntryDistribution& dist, int draws) {
    KahanSum s1, s2, s4, s65;
    for (int i = 0; i < draws; ++i) {
        EntryStream stream(99, entry_key(0, static_cast<std::uint64_t>(i)));
        const double w = dist.sample(stream);
        s1.add(w);
        s2.add(w * w);
        s4.add(w * w * w * w);
        s65.add(std::pow(std::abs(w), 4.0 + dist.epsilon()));
    }
    const double n = draws;
    return {s1.value() / n, s2.value() / n, s4.value() / n, s65.value() / n};
}

}  // namespace

TEST_CASE("moment conditions hold for every family") {
    const EntryDistribution dists[] = {
        EntryDistribution::gaussian(), EntryDistribution::rademacher(),
        EntryDistribution::uniform(), EntryDistribution::student_t(9)};
    for (const auto& d : dists) {
        CAPTURE(d.name());
        const auto m = estimate(d, 1'000'000);
        CHECK(std::abs(m.mean) < 5e-3);
        CHECK(m.var == doctest::Approx(1.0).epsilon(0.01));
        CHECK(m.m4 == doctest::Approx(3.0 + d.kappa4()).epsilon(0.03));
        CHECK(m.m65 <= d.moment_bound());
    }
}

TEST_CASE("kappa4 values") {
    CHECK(EntryDistribution::gaussian().kappa4() == 0.0);
    CHECK(EntryDistribution::rademacher().kappa4() == -2.0);
    CHECK(EntryDistribution::uniform().kappa4() == doctest::Approx(-1.2));
    CHECK(EntryDistribution::student_t(9).kappa4() == doctest::Approx(1.2));
}

TEST_CASE("student_t needs nu > 4 + epsilon") {
    CHECK_THROWS_AS(EntryDistribution::student_t(6.0), std::invalid_argument);
    CHECK_NOTHROW(EntryDistribution::student_t(9.0));
}

TEST_CASE("densities integrate to one with unit variance") {
    for (const auto& d : {EntryDistribution::gaussian(), EntryDistribution::uniform(),
                          EntryDistribution::student_t(9)}) {
        CAPTURE(d.name());
        const double lim = 60.0;
        CHECK(gk_integrate([&](double x) { return d.density(x); }, -lim, lim, 1e-10) ==
              doctest::Approx(1.0).epsilon(1e-8));
        CHECK(gk_integrate([&](double x) { return x * x * d.density(x); }, -lim, lim,
                           1e-10) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("truncated mean is zero for the symmetric families, in quadrature too") {
    for (const auto& d : {EntryDistribution::gaussian(), EntryDistribution::uniform(),
                          EntryDistribution::student_t(9)}) {
        CAPTURE(d.name());
        CHECK(d.truncated_mean(9.0) == 0.0);
        CHECK(std::abs(d.truncated_mean_quadrature(9.0)) < 1e-12);
    }
}

TEST_CASE("truncate_center examples") {
    const auto rad = EntryDistribution::rademacher();
    CHECK(truncate_center(1.0, 4.0, rad) == 1.0);       // |1| <= 2, zero centering
    CHECK(truncate_center(3.0, 4.0, rad) == 0.0);       // clipped, centering zero
    const auto t9 = EntryDistribution::student_t(9);
    CHECK(truncate_center(2.0, 9.0, t9) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(truncate_center(1.0, -1.0, rad), std::invalid_argument);
}
