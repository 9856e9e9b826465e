#pragma once

#include <vector>

#include "asense/dynamics.hpp"
#include "asense/integrate.hpp"
#include "asense/mat2.hpp"

namespace asense {

/// Quadratic-form weight [[1, 1], [1, eta]] of V = x^T P x / 2.
[[nodiscard]] constexpr Mat2 lyapunovP(double eta) noexcept { return {1.0, 1.0, 1.0, eta}; }

/// Q(t) = -(P A(t) + A(t)^T P) / 2, written out in closed form.
[[nodiscard]] Mat2 qMatrix(double t, double delta, double eta) noexcept;

/// Upper bound on delta for which det Q(t) >= 0 is guaranteed at weight eta:
/// 4 (eta - 1) / (eta^2 + 2 eta + 4).
[[nodiscard]] double deltaBoundForEta(double eta) noexcept;

struct AnalyticBounds {
    double deltaDagger;  ///< 2/3 (sqrt 7 - 2), the maximum of deltaBoundForEta
    double etaDagger;    ///< 1 + sqrt 7, where the maximum is attained
};

[[nodiscard]] AnalyticBounds analyticBounds() noexcept;

struct LyapunovCert {
    double eta{0.0};
    double delta{0.0};
    Mat2 P{};
    double worstDetQ{0.0};
    double worstTraceQ{0.0};
    /// Sample time at which worstDetQ occurred.
    double argminT{0.0};
    bool verified{false};
};

/// Tolerance on det Q below zero that still counts as semidefinite; Q is
/// exactly singular once per half period.
inline constexpr double kDetQTolerance = 1e-10;

/// Samples Q(t) at nSamples uniform points of [0, pi] (endpoints included) and
/// certifies V-dot <= 0 when det Q >= -kDetQTolerance and trace Q > 0 throughout.
/// Throws ValidationError unless eta > 1, delta >= 0 and nSamples >= 1000.
[[nodiscard]] LyapunovCert certify(double delta, double eta, int nSamples = 10000);

struct LyapunovSample {
    double t{0.0};
    double v{0.0};
    double vDot{0.0};
};

/// V = x^T P x / 2 and V-dot = -x^T Q(t) x at every sample of a trajectory of
/// the linearised system. Throws ParamMismatch when the trajectory was not
/// generated at this delta.
[[nodiscard]] std::vector<LyapunovSample> vDotAlongFlow(const Trajectory& traj, double delta, double eta);

/// Solution of dx/dt = A(t) x for the linearisation at delta, tagged with
/// SystemParams::fromDelta(delta).
[[nodiscard]] Trajectory linearizedTrajectory(double delta, const State& x0, double t0, double tEnd,
                                              const StepperConfig& cfg = StepperConfig::simulation());

}  // namespace asense
