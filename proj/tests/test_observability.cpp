#include <cmath>
#include <vector>

#include "asense/observability.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace asense;
using asense::testing::Gen;

TEST_CASE("quadratic scene gives condition 2 z^2 exactly") {
    Gen g(51);
    const ScalarField id = ScalarField::identity();
    for (int i = 0; i < 1000; ++i) {
        const State s{g.uniform(-10, 10), g.uniform(-10, 10)};
        CHECK(nonlinearCondition(s, id) == 2.0 * s.z * s.z);
    }
    const ObservabilityReport r = observabilityReport({0.0, 1.0}, id);
    CHECK(r.nonlinearCondition == 2.0);
    CHECK(r.locallyObservable);
    CHECK(r.gamma == id.descriptor());
    CHECK_FALSE(observabilityReport({1.0, 0.0}, id).locallyObservable);
}

TEST_CASE("hyperbolic scene degenerates everywhere") {
    Gen g(52);
    for (int k = 0; k < 100; ++k) {
        const double c0 = g.uniform(0.5, 3.0);
        const double c1 = g.uniform(-2.0, 2.0);
        const ScalarField h = ScalarField::hyperbolic(c1, c0);
        for (int i = 0; i <= 200; ++i) {
            // Stay on the branch where c1 x + c0 keeps its sign.
            const double x = -0.2 + 0.4 * i / 200.0;
            const double z = g.uniform(-3, 3);
            const double scale = z * z * 2.0 * h.first(x) * h.first(x);
            CHECK(std::fabs(nonlinearCondition({x, z}, h)) <= 1e-10 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("linearised rank is 1 off zero and 0 at zero") {
    Gen g(53);
    for (int i = 0; i < 100; ++i) {
        double gamma = g.uniform(-5, 5);
        if (gamma == 0.0) {
            gamma = 1.0;
        }
        CHECK(linearObservabilityRank(gamma) == 1);
    }
    CHECK(linearObservabilityRank(0.0) == 0);
}

TEST_CASE("observability rank by minors") {
    CHECK(observabilityRank({0, 1, 0, -1}, 1.0, 0.0) == 2);
    CHECK(observabilityRank({0, 1, 0, -1}, 0.0, 1.0) == 1);
    CHECK(observabilityRank({0, 1, -1, 0}, 0.0, 1.0) == 2);
    CHECK(observabilityRank({2, 0, 0, 3}, 0.0, 0.0) == 0);
    CHECK(observabilityRank({2, 0, 0, 3}, 1.0, 1.0) == 2);
    CHECK(observabilityRank({2, 0, 0, 2}, 1.0, 1.0) == 1);
}

TEST_CASE("random feedbacks cannot tell x apart on the z = 0 slice") {
    const ImpossibilityStats stats = impossibilityCheck(7, 200, 200);
    CHECK(stats.evaluations == 40000);
    CHECK(stats.maxDiscrepancy == 0.0);
}

TEST_CASE("random feedbacks do see x once z is nonzero") {
    // Guards the impossibility check against being vacuous.
    std::mt19937_64 rng(54);
    int sensitive = 0;
    for (int i = 0; i < 50; ++i) {
        const GenericFeedback fb = randomFeedback(rng);
        const std::vector<double> q(fb.stateDim, 0.3);
        const CoupledRate r0 = coupledField(fb, {0.0, 1.0}, q, 0.7);
        const CoupledRate r1 = coupledField(fb, {1.5, 1.0}, q, 0.7);
        sensitive += (r0.plant.z != r1.plant.z || r0.controller != r1.controller) ? 1 : 0;
    }
    CHECK(sensitive > 40);
}

TEST_CASE("coupled field checks the controller dimension and is deterministic") {
    std::mt19937_64 rng(55);
    const GenericFeedback fb = randomFeedback(rng, 3);
    CHECK(fb.stateDim >= 1);
    CHECK(fb.stateDim <= 3);
    const std::vector<double> wrong(fb.stateDim + 1, 0.0);
    CHECK_THROWS((void)coupledField(fb, {0, 0}, wrong, 0.0));

    const ImpossibilityStats a = impossibilityCheck(99, 20, 20);
    const ImpossibilityStats b = impossibilityCheck(99, 20, 20);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.maxDiscrepancy == b.maxDiscrepancy);
}

TEST_CASE("smooth maps are reproducible from the seed") {
    std::mt19937_64 r1(5);
    std::mt19937_64 r2(5);
    const SmoothMap m1 = SmoothMap::random(r1, 3, 4);
    const SmoothMap m2 = SmoothMap::random(r2, 3, 4);
    const std::vector<double> v{0.1, -0.4, 2.0};
    CHECK(m1(v) == m2(v));
    CHECK(m1.inputDim() == 3);
    CHECK(std::isfinite(m1(v)));
}
