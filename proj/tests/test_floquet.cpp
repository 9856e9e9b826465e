#include <cmath>
#include <complex>
#include <numbers>

#include "asense/errors.hpp"
#include "asense/floquet.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace asense;
using asense::testing::Gen;

namespace {

const double kDetM = std::exp(-std::numbers::pi);

}  // namespace

TEST_CASE("multipliers of simple matrices") {
    const Multipliers diag = multipliers({0.5, 0.0, 0.0, 2.0});
    CHECK(diag[0] == std::complex<double>(2.0, 0.0));
    CHECK(diag[1] == std::complex<double>(0.5, 0.0));

    const Multipliers rot = multipliers({0.0, -1.0, 1.0, 0.0});
    CHECK(rot[0].real() == doctest::Approx(0.0));
    CHECK(rot[0].imag() == doctest::Approx(1.0));
    CHECK(rot[1].imag() == doctest::Approx(-1.0));
    CHECK(spectralRadius(rot) == doctest::Approx(1.0));

    const Multipliers neg = multipliers({-3.0, 0.0, 0.0, 1.0});
    CHECK(neg[0].real() == doctest::Approx(-3.0));
    CHECK(spectralRadius(neg) == doctest::Approx(3.0));
}

TEST_CASE("multipliers satisfy Vieta and the discriminant is tr^2 - 4 det") {
    Gen g(31);
    for (int i = 0; i < 500; ++i) {
        const Mat2 m{g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2)};
        const Multipliers mu = multipliers(m);
        const std::complex<double> sum = mu[0] + mu[1];
        const std::complex<double> prod = mu[0] * mu[1];
        CHECK(sum.real() == doctest::Approx(m.trace()).scale(1.0));
        CHECK(std::fabs(sum.imag()) < 1e-12);
        CHECK(prod.real() == doctest::Approx(m.det()).scale(1.0));
        CHECK(std::fabs(prod.imag()) < 1e-12);
        CHECK(std::abs(mu[0]) >= std::abs(mu[1]));
        const double tr = m.trace();
        CHECK(characteristicDiscriminant(m) == doctest::Approx(tr * tr - 4.0 * m.det()).scale(1.0));
    }
}

TEST_CASE("tiny multiplier keeps full relative accuracy") {
    const Multipliers mu = multipliers({1.0, 0.0, 0.0, 1e-12});
    CHECK(mu[1].real() == doctest::Approx(1e-12).epsilon(1e-12));
}

TEST_CASE("delta = 0 monodromy equals the analytic exponential") {
    const Mat2 m = monodromy(0.0);
    CHECK(m.a11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.a12 == doctest::Approx(1.0 - kDetM).epsilon(1e-10));
    CHECK(std::fabs(m.a21) < 1e-14);
    CHECK(m.a22 == doctest::Approx(kDetM).epsilon(1e-10));
    const Multipliers mu = multipliers(m);
    CHECK(std::abs(mu[0] - 1.0) < 1e-8);
    CHECK(std::abs(mu[1] - kDetM) < 1e-8);
}

TEST_CASE("monodromy determinant is exp(-pi) for every delta") {
    Gen g(32);
    for (int i = 0; i < 25; ++i) {
        const double delta = g.uniform(0.0, 8.0);
        CHECK(monodromy(delta).det() == doctest::Approx(kDetM).epsilon(1e-9));
    }
    CHECK_THROWS_AS((void)monodromy(-0.1), ValidationError);
}

TEST_CASE("RK4 and Dormand-Prince monodromies agree") {
    StepperConfig dp = StepperConfig::monodromy();
    dp.method = Method::DP45;
    dp.h = std::numbers::pi / 50.0;
    for (double delta : {0.3, 1.0, 2.5, 3.2, 5.0}) {
        const Mat2 r = monodromy(delta);
        const Mat2 d = monodromy(delta, dp);
        CHECK((r - d).maxAbs() < 1e-9);
    }
}

TEST_CASE("analyze fills every field") {
    const FloquetResult r = analyze(1.0);
    CHECK(r.delta == 1.0);
    CHECK_FALSE(r.error);
    CHECK(r.discriminant < 0.0);
    CHECK(r.stable);
    CHECK(r.spectralRadius == doctest::Approx(std::exp(-std::numbers::pi / 2)).epsilon(1e-6));

    const FloquetResult bad = analyze(-1.0);
    CHECK(bad.error.has_value());
    CHECK(std::isnan(bad.spectralRadius));
    CHECK_FALSE(bad.stable);
}

TEST_CASE("delta grid is inclusive and validated") {
    CHECK(deltaGrid(0.0, 4.0, 0.01).size() == 401);
    CHECK(deltaGrid(0.0, 1.0, 0.3).size() == 4);
    CHECK(deltaGrid(0.0, 4.0, 0.01).back() == doctest::Approx(4.0));
    CHECK_THROWS_AS((void)deltaGrid(1.0, 0.0, 0.1), ValidationError);
    CHECK_THROWS_AS((void)deltaGrid(0.0, 1.0, 0.0), ValidationError);
    CHECK_THROWS_AS((void)deltaGrid(-1.0, 1.0, 0.1), ValidationError);
}

TEST_CASE("sweep finds the complex window and the stability boundary") {
    const auto sweep = sweepDelta(0.0, 4.0, 0.01, StepperConfig::monodromy(), 4);
    REQUIRE(sweep.size() == 401);

    const auto changes = discriminantSignChanges(sweep);
    REQUIRE(changes.size() == 2);
    CHECK(changes[0].midpoint() == doctest::Approx(0.54).epsilon(0.02 / 0.54));
    CHECK(changes[1].midpoint() == doctest::Approx(1.94).epsilon(0.02 / 1.94));

    const double inside = std::exp(-std::numbers::pi / 2);
    for (const auto& r : sweep) {
        if (r.discriminant < 0.0) {
            CHECK(std::abs(r.multipliers[0]) == doctest::Approx(inside).epsilon(1e-6));
            CHECK(std::abs(r.multipliers[1]) == doctest::Approx(inside).epsilon(1e-6));
        }
    }

    const auto last = largestStableDelta(sweep);
    REQUIRE(last);
    CHECK(*last > 3.15);
    CHECK(*last < 3.25);
}

TEST_CASE("parallel sweep is bit-identical to the serial one") {
    const auto serial = sweepDelta(0.0, 4.0, 0.05, StepperConfig::monodromy(), 1);
    const auto parallel = sweepDelta(0.0, 4.0, 0.05, StepperConfig::monodromy(), 8);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].monodromy == parallel[i].monodromy);
    }
}

TEST_CASE("bisection locates the critical gain") {
    const double star = findCriticalDelta(3.0, 3.5, 1e-6);
    CHECK(star > 3.15);
    CHECK(star < 3.25);
    CHECK(spectralRadius(multipliers(monodromy(star - 1e-5))) < 1.0);
    CHECK(spectralRadius(multipliers(monodromy(star + 1e-5))) > 1.0);
    CHECK_THROWS_AS((void)findCriticalDelta(3.3, 3.5, 1e-6), BracketInvalid);
    CHECK_THROWS_AS((void)findCriticalDelta(2.0, 3.0, 1e-6), BracketInvalid);
}
