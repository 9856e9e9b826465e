#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "asense/mat2.hpp"

namespace asense {

/// Plant state: position x and velocity z.
struct State {
    double x{0.0};
    double z{0.0};

    [[nodiscard]] double norm() const noexcept { return std::hypot(x, z); }
    [[nodiscard]] bool isFinite() const noexcept { return std::isfinite(x) && std::isfinite(z); }

    friend constexpr bool operator==(const State&, const State&) = default;
};

constexpr State operator+(const State& l, const State& r) noexcept { return {l.x + r.x, l.z + r.z}; }
constexpr State operator-(const State& l, const State& r) noexcept { return {l.x - r.x, l.z - r.z}; }
constexpr State operator*(double s, const State& v) noexcept { return {s * v.x, s * v.z}; }

/// Feedback gain k, sensing amplitude a and the derived delta = k a^2.
class SystemParams {
public:
    /// Throws ValidationError unless k >= 0 and a > 0 (both finite).
    SystemParams(double k, double a);

    /// Parameters realising a given delta for the linear analysis, which
    /// depends on (k, a) only through delta. Uses a = 1, k = delta so that
    /// delta round-trips exactly.
    static SystemParams fromDelta(double delta);

    [[nodiscard]] double k() const noexcept { return k_; }
    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }

    friend bool operator==(const SystemParams&, const SystemParams&) = default;

private:
    double k_;
    double a_;
    double delta_;
};

/// Augmented measurement: y1 = x z (scene rate under a quadratic scene), y2 = z.
struct Output {
    double y1{0.0};
    double y2{0.0};
};

[[nodiscard]] constexpr Output measure(const State& s) noexcept { return {s.x * s.z, s.z}; }

/// gamma(x) = ds/dx of the sensory scene, with user-supplied first and second derivatives.
class ScalarField {
public:
    using Fn = std::function<double(double)>;

    ScalarField(std::string descriptor, Fn value, Fn first, Fn second);

    /// gamma(x) = x, i.e. a locally quadratic scene s(x) = x^2 / 2.
    static ScalarField identity();
    /// gamma(x) = 1 / (c1 x + c0).
    static ScalarField hyperbolic(double c1, double c0);

    [[nodiscard]] double value(double x) const { return value_(x); }
    [[nodiscard]] double first(double x) const { return first_(x); }
    [[nodiscard]] double second(double x) const { return second_(x); }
    [[nodiscard]] const std::string& descriptor() const noexcept { return descriptor_; }

private:
    std::string descriptor_;
    Fn value_;
    Fn first_;
    Fn second_;
};

/// Normalised mass-damper: (z, -z + u).
[[nodiscard]] constexpr State openLoopField(const State& s, double u) noexcept { return {s.z, -s.z + u}; }

/// alpha(t) = a cos t - a sin t.
[[nodiscard]] double activeSensingInput(double t, double a) noexcept;

/// (a sin t, a cos t).
[[nodiscard]] State referenceOrbit(double t, double a) noexcept;

/// Time derivative of referenceOrbit, (a cos t, -a sin t).
[[nodiscard]] State referenceOrbitRate(double t, double a) noexcept;

/// alpha(t) - k (F(y) - F(y*)) with F(y) = y1 y2.
[[nodiscard]] double controlLaw(const State& s, double t, const SystemParams& p) noexcept;

/// Closed-loop vector field; 2 pi periodic in t.
[[nodiscard]] State closedLoopField(const State& s, double t, const SystemParams& p) noexcept;

/// Jacobian of the closed loop along the reference orbit; pi periodic in t.
[[nodiscard]] Mat2 linearizedA(double t, double delta) noexcept;
[[nodiscard]] inline Mat2 linearizedA(double t, const SystemParams& p) noexcept { return linearizedA(t, p.delta()); }

}  // namespace asense
