#include <cmath>
#include <numbers>

#include "asense/errors.hpp"
#include "asense/floquet.hpp"
#include "asense/lyapunov.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace asense;
using asense::testing::Gen;

namespace {

const double kSqrt7 = std::sqrt(7.0);

// det Q(t) = delta cos^2 t ((eta - 1) - delta (sin t - eta cos t / 2)^2), so
// the sampled certificate holds exactly up to this delta.
double exactBound(double eta) { return 4.0 * (eta - 1.0) / (eta * eta + 4.0); }

}  // namespace

TEST_CASE("Q(t) equals -(P A + A^T P) / 2") {
    Gen g(41);
    for (int i = 0; i < 500; ++i) {
        const double t = g.uniform(-10, 10);
        const double delta = g.uniform(0, 5);
        const double eta = g.uniform(1.01, 8);
        const Mat2 p = lyapunovP(eta);
        const Mat2 a = linearizedA(t, delta);
        const Mat2 oracle = -0.5 * (p * a + a.transpose() * p);
        const Mat2 q = qMatrix(t, delta, eta);
        CHECK((q - oracle).maxAbs() < 1e-12);
        CHECK(q.a12 == q.a21);
    }
}

TEST_CASE("analytic bounds") {
    const AnalyticBounds b = analyticBounds();
    CHECK(b.deltaDagger == doctest::Approx(2.0 / 3.0 * (kSqrt7 - 2.0)).epsilon(1e-14));
    CHECK(b.etaDagger == doctest::Approx(1.0 + kSqrt7).epsilon(1e-14));
    CHECK(b.deltaDagger == doctest::Approx(0.4305009).epsilon(1e-7));
    CHECK(b.etaDagger == doctest::Approx(3.6457513).epsilon(1e-7));
    CHECK(deltaBoundForEta(b.etaDagger) == doctest::Approx(b.deltaDagger).epsilon(1e-14));

    // etaDagger maximises the bound.
    Gen g(42);
    for (int i = 0; i < 1000; ++i) {
        CHECK(deltaBoundForEta(g.uniform(1.0, 50.0)) <= b.deltaDagger + 1e-15);
    }
}

TEST_CASE("certificate holds up to the analytic bound") {
    const double eta = analyticBounds().etaDagger;
    for (double delta : {0.0, 0.1, 0.2, 0.3, 0.4, 0.4305009}) {
        const LyapunovCert c = certify(delta, eta);
        CHECK(c.verified);
        CHECK(c.worstDetQ >= -kDetQTolerance);
        CHECK(c.worstTraceQ > 0.0);
        CHECK(c.P == lyapunovP(eta));
    }
    // The analytic bound is sufficient, not tight.
    CHECK(certify(0.45, eta).verified);
    const LyapunovCert over = certify(exactBound(eta) + 0.01, eta);
    CHECK_FALSE(over.verified);
    CHECK(over.worstDetQ < 0.0);
}

TEST_CASE("closed-form det Q") {
    Gen g(45);
    for (int i = 0; i < 500; ++i) {
        const double t = g.uniform(-5, 5);
        const double delta = g.uniform(0, 3);
        const double eta = g.uniform(1.01, 8);
        const double s = std::sin(t);
        const double c = std::cos(t);
        const double w = s - 0.5 * eta * c;
        const double expected = delta * c * c * ((eta - 1.0) - delta * w * w);
        CHECK(qMatrix(t, delta, eta).det() == doctest::Approx(expected).scale(1.0));
    }
}

TEST_CASE("det Q is minimal where cos t vanishes") {
    // Q(pi/2) = [[0, 0], [0, eta - 1]] for every delta, so det Q touches zero there.
    for (double delta : {0.1, 0.3, 0.43}) {
        const double eta = analyticBounds().etaDagger;
        const Mat2 q = qMatrix(std::numbers::pi / 2, delta, eta);
        CHECK(std::fabs(q.a11) < 1e-15);
        CHECK(std::fabs(q.a12) < 1e-15);
        CHECK(q.a22 == doctest::Approx(eta - 1.0));
        const LyapunovCert c = certify(delta, eta);
        CHECK(c.argminT == doctest::Approx(std::numbers::pi / 2).epsilon(1e-3));
        CHECK(std::fabs(c.worstDetQ) < 1e-6);
    }
}

TEST_CASE("sampled certificate agrees with the exact bound for random (delta, eta)") {
    Gen g(43);
    for (int i = 0; i < 200; ++i) {
        const double eta = g.uniform(1.2, 10.0);
        CHECK(deltaBoundForEta(eta) <= exactBound(eta));
        const double bound = exactBound(eta);
        const double below = bound * g.uniform(0.0, 0.98);
        const double above = bound * g.uniform(1.05, 2.0);
        CHECK(certify(below, eta, 2000).verified);
        CHECK_FALSE(certify(above, eta, 2000).verified);
    }
}

TEST_CASE("certified deltas are Floquet stable") {
    Gen g(44);
    const AnalyticBounds b = analyticBounds();
    for (int i = 0; i < 30; ++i) {
        const double delta = g.uniform(0.0, b.deltaDagger);
        REQUIRE(certify(delta, b.etaDagger).verified);
        CHECK(analyze(delta).spectralRadius < 1.0);
    }
}

TEST_CASE("certify validates its inputs") {
    CHECK_THROWS_AS((void)certify(0.1, 1.0), ValidationError);
    CHECK_THROWS_AS((void)certify(-0.1, 3.0), ValidationError);
    CHECK_THROWS_AS((void)certify(0.1, 3.0, 999), ValidationError);
    CHECK_THROWS_AS((void)certify(std::nan(""), 3.0), ValidationError);
}

TEST_CASE("V-dot along the linearised flow matches dV/dt and never increases V") {
    const double delta = 0.4;
    const double eta = analyticBounds().etaDagger;
    StepperConfig cfg;
    cfg.h = 1e-3;
    const Trajectory traj = linearizedTrajectory(delta, {1.0, -0.5}, 0.3, 12.0, cfg);
    const auto samples = vDotAlongFlow(traj, delta, eta);
    REQUIRE(samples.size() == traj.samples.size());
    for (std::size_t i = 1; i + 1 < samples.size(); i += 97) {
        const double fd = (samples[i + 1].v - samples[i - 1].v) / (samples[i + 1].t - samples[i - 1].t);
        CHECK(samples[i].vDot == doctest::Approx(fd).epsilon(1e-5).scale(1e-6));
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        CHECK(samples[i].vDot <= 1e-12);
        CHECK(samples[i].v <= samples[i - 1].v + 1e-12);
    }
    CHECK(samples.back().v < 0.01 * samples.front().v);
}

TEST_CASE("V-dot rejects trajectories from another delta") {
    const Trajectory traj = linearizedTrajectory(0.2, {1.0, 0.0}, 0.0, 1.0);
    CHECK_THROWS_AS((void)vDotAlongFlow(traj, 0.3, 3.0), ParamMismatch);
    Trajectory untagged = traj;
    untagged.params.reset();
    CHECK_THROWS_AS((void)vDotAlongFlow(untagged, 0.2, 3.0), ParamMismatch);
}
