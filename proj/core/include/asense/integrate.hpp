#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "asense/dynamics.hpp"
#include "asense/mat2.hpp"

namespace asense {

enum class Method { RK4, DP45 };

struct StepperConfig {
    double h{1e-3};
    Method method{Method::RK4};
    double escapeRadius{1e6};
    // Dormand-Prince only: local error tolerances for the adaptive substeps
    // taken inside each output interval of width h.
    double rtol{1e-10};
    double atol{1e-12};

    /// Throws ValidationError unless h > 0 and escapeRadius > 0.
    void validate() const;

    /// h = 1e-3, the nonlinear simulation default.
    static StepperConfig simulation() { return {}; }
    /// h = pi / 2000, the monodromy default.
    static StepperConfig monodromy();
};

struct Sample {
    double t{0.0};
    State s{};
};

/// Uniformly sampled solution of a planar nonautonomous ODE.
struct Trajectory {
    std::vector<Sample> samples;
    std::optional<SystemParams> params;
    double t0{0.0};
    double stepSize{0.0};
    /// Set when integration stopped because the state left the escape ball.
    bool escaped{false};
};

using StateField = std::function<State(double t, const State& s)>;
using MatrixField = std::function<Mat2(double t)>;

[[nodiscard]] constexpr State apply(const Mat2& m, const State& v) noexcept {
    return {m.a11 * v.x + m.a12 * v.z, m.a21 * v.x + m.a22 * v.z};
}

/// One classical Runge-Kutta step; V needs V + V and double * V.
template <class V, class F>
[[nodiscard]] V rk4Step(F&& f, double t, const V& y, double h) {
    const double half = 0.5 * h;
    const V k1 = f(t, y);
    const V k2 = f(t + half, y + half * k1);
    const V k3 = f(t + half, y + half * k2);
    const V k4 = f(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Number of steps of width h needed to cover [t0, tEnd]; the last may be partial.
[[nodiscard]] long stepCount(double t0, double tEnd, double h);

/// Integrates ds/dt = field(t, s) from (t0, s0) to tEnd, sampling every h.
/// Throws NonFiniteState if the field returns NaN/Inf. Stops early, with
/// Trajectory::escaped set, once |s| exceeds cfg.escapeRadius.
[[nodiscard]] Trajectory integrateState(const StateField& field, const State& s0, double t0, double tEnd,
                                        const StepperConfig& cfg, std::optional<SystemParams> params = {});

/// Solves dPhi/dt = A(t) Phi with Phi(t0) = M0 and returns Phi(tEnd).
[[nodiscard]] Mat2 integrateMatrixODE(const MatrixField& a, const Mat2& m0, double t0, double tEnd,
                                      const StepperConfig& cfg);

}  // namespace asense
