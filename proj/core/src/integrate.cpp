#include "asense/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "asense/errors.hpp"

namespace asense {
namespace {

std::array<double, 2> components(const State& s) { return {s.x, s.z}; }
std::array<double, 4> components(const Mat2& m) { return {m.a11, m.a12, m.a21, m.a22}; }

bool finite(const State& s) { return s.isFinite(); }
bool finite(const Mat2& m) { return m.isFinite(); }

// Wraps a field so that any non-finite evaluation raises NonFiniteState.
template <class V, class F>
auto checked(const F& f) {
    return [&f](double t, const V& y) {
        const V dy = f(t, y);
        if (!finite(dy)) {
            throw NonFiniteState("vector field returned a non-finite value at t=" + std::to_string(t), t);
        }
        return dy;
    };
}

template <class V>
double scaledError(const V& err, const V& y0, const V& y1, double atol, double rtol) {
    const auto e = components(err);
    const auto a = components(y0);
    const auto b = components(y1);
    double worst = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double scale = atol + rtol * std::max(std::fabs(a[i]), std::fabs(b[i]));
        worst = std::max(worst, std::fabs(e[i]) / scale);
    }
    return worst;
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double magnitude(const State& s) { return s.norm(); }
double magnitude(const Mat2& m) { return m.maxAbs(); }

// Advances y from ta to tb with error-controlled Dormand-Prince substeps,
// returning early once the state magnitude exceeds `escape`.
template <class V, class F>
V dp45Interval(const F& f, double ta, double tb, V y, double atol, double rtol, double escape, double& reached) {
    double t = ta;
    double dt = tb - ta;
    V k1 = f(t, y);
    while (t < tb) {
        if (t + dt > tb) {
            dt = tb - t;
        }
        const V k2 = f(t + c2 * dt, y + dt * (a21 * k1));
        const V k3 = f(t + c3 * dt, y + dt * (a31 * k1 + a32 * k2));
        const V k4 = f(t + c4 * dt, y + dt * (a41 * k1 + a42 * k2 + a43 * k3));
        const V k5 = f(t + c5 * dt, y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const V k6 = f(t + dt, y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const V yNew = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const V k7 = f(t + dt, yNew);
        const V err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = scaledError(err, y, yNew, atol, rtol);
        if (en <= 1.0) {
            const bool last = (t + dt >= tb);
            t = last ? tb : t + dt;
            y = yNew;
            k1 = k7;
            if (!(magnitude(y) <= escape)) {
                reached = t;
                return y;
            }
        }
        const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
        dt *= factor;
        if (dt <= 1e-14 * (std::fabs(t) + 1.0)) {
            throw std::runtime_error("Dormand-Prince step size underflow at t=" + std::to_string(t));
        }
    }
    reached = tb;
    return y;
}

template <class V, class F>
V advance(const F& f, double ta, double tb, const V& y, const StepperConfig& cfg, double escape, double& reached) {
    if (cfg.method == Method::RK4) {
        reached = tb;
        return rk4Step(f, ta, y, tb - ta);
    }
    return dp45Interval(f, ta, tb, y, cfg.atol, cfg.rtol, escape, reached);
}

void validateSpan(double t0, double tEnd) {
    if (!std::isfinite(t0) || !std::isfinite(tEnd) || !(tEnd > t0)) {
        throw ValidationError("integration requires finite t0 < tEnd");
    }
}

}  // namespace

void StepperConfig::validate() const {
    if (!std::isfinite(h) || h <= 0.0) {
        throw ValidationError("step size h must be finite and > 0");
    }
    if (!(escapeRadius > 0.0)) {
        throw ValidationError("escape radius must be > 0");
    }
    if (method == Method::DP45 && (!(rtol > 0.0) || !(atol > 0.0))) {
        throw ValidationError("Dormand-Prince tolerances must be > 0");
    }
}

StepperConfig StepperConfig::monodromy() {
    StepperConfig cfg;
    cfg.h = std::numbers::pi / 2000.0;
    return cfg;
}

long stepCount(double t0, double tEnd, double h) {
    // Absorb rounding so that (tEnd - t0) / h landing a hair above an
    // integer does not produce a spurious sliver step.
    const double n = std::ceil((tEnd - t0) / h * (1.0 - 1e-12));
    return std::max(1L, static_cast<long>(n));
}

Trajectory integrateState(const StateField& field, const State& s0, double t0, double tEnd,
                          const StepperConfig& cfg, std::optional<SystemParams> params) {
    cfg.validate();
    validateSpan(t0, tEnd);
    if (!s0.isFinite()) {
        throw NonFiniteState("initial state is not finite", t0);
    }

    const long n = stepCount(t0, tEnd, cfg.h);
    Trajectory traj;
    traj.params = params;
    traj.t0 = t0;
    traj.stepSize = cfg.h;
    traj.samples.reserve(static_cast<std::size_t>(n) + 1);
    traj.samples.push_back({t0, s0});

    const auto f = checked<State>(field);
    State s = s0;
    for (long i = 0; i < n; ++i) {
        const double ta = t0 + static_cast<double>(i) * cfg.h;
        const double tb = (i + 1 == n) ? tEnd : t0 + static_cast<double>(i + 1) * cfg.h;
        double reached = tb;
        s = advance(f, ta, tb, s, cfg, cfg.escapeRadius, reached);
        if (!s.isFinite()) {
            traj.escaped = true;
            break;
        }
        // reached < tb only when an adaptive substep left the escape ball early.
        traj.samples.push_back({reached, s});
        if (s.norm() > cfg.escapeRadius) {
            traj.escaped = true;
            break;
        }
    }
    return traj;
}

Mat2 integrateMatrixODE(const MatrixField& a, const Mat2& m0, double t0, double tEnd, const StepperConfig& cfg) {
    cfg.validate();
    validateSpan(t0, tEnd);
    const auto flow = [&a](double t, const Mat2& m) { return a(t) * m; };
    const auto f = checked<Mat2>(flow);
    const long n = stepCount(t0, tEnd, cfg.h);
    Mat2 m = m0;
    for (long i = 0; i < n; ++i) {
        const double ta = t0 + static_cast<double>(i) * cfg.h;
        const double tb = (i + 1 == n) ? tEnd : t0 + static_cast<double>(i + 1) * cfg.h;
        double reached = tb;
        m = advance(f, ta, tb, m, cfg, std::numeric_limits<double>::infinity(), reached);
    }
    if (!m.isFinite()) {
        throw NonFiniteState("matrix flow overflowed", tEnd);
    }
    return m;
}

}  // namespace asense
