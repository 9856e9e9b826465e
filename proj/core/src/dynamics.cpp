#include "asense/dynamics.hpp"

#include <sstream>
#include <utility>

#include "asense/errors.hpp"

namespace asense {

SystemParams::SystemParams(double k, double a) : k_(k), a_(a), delta_(k * a * a) {
    if (!std::isfinite(k) || k < 0.0) {
        throw ValidationError("feedback gain k must be finite and >= 0");
    }
    if (!std::isfinite(a) || a <= 0.0) {
        throw ValidationError("sensing amplitude a must be finite and > 0");
    }
}

SystemParams SystemParams::fromDelta(double delta) { return SystemParams(delta, 1.0); }

ScalarField::ScalarField(std::string descriptor, Fn value, Fn first, Fn second)
    : descriptor_(std::move(descriptor)), value_(std::move(value)), first_(std::move(first)),
      second_(std::move(second)) {}

ScalarField ScalarField::identity() {
    return ScalarField(
        "identity", [](double x) { return x; }, [](double) { return 1.0; }, [](double) { return 0.0; });
}

ScalarField ScalarField::hyperbolic(double c1, double c0) {
    std::ostringstream name;
    name.precision(17);
    name << "hyperbolic(c1=" << c1 << ",c0=" << c0 << ")";
    return ScalarField(
        name.str(), [c1, c0](double x) { return 1.0 / (c1 * x + c0); },
        [c1, c0](double x) {
            const double w = c1 * x + c0;
            return -c1 / (w * w);
        },
        [c1, c0](double x) {
            const double w = c1 * x + c0;
            return 2.0 * c1 * c1 / (w * w * w);
        });
}

double activeSensingInput(double t, double a) noexcept { return a * std::cos(t) - a * std::sin(t); }

State referenceOrbit(double t, double a) noexcept { return {a * std::sin(t), a * std::cos(t)}; }

State referenceOrbitRate(double t, double a) noexcept { return {a * std::cos(t), -a * std::sin(t)}; }

double controlLaw(const State& s, double t, const SystemParams& p) noexcept {
    const double a = p.a();
    const double sn = std::sin(t);
    const double cs = std::cos(t);
    const Output y = measure(s);
    const double fy = y.y1 * y.y2;
    const double fyRef = a * a * a * sn * cs * cs;
    return (a * cs - a * sn) - p.k() * (fy - fyRef);
}

State closedLoopField(const State& s, double t, const SystemParams& p) noexcept {
    return openLoopField(s, controlLaw(s, t, p));
}

Mat2 linearizedA(double t, double delta) noexcept {
    const double c = std::cos(t);
    return {0.0, 1.0, -delta * c * c, -1.0 - delta * std::sin(2.0 * t)};
}

}  // namespace asense
