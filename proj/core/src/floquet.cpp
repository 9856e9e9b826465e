#include "asense/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "asense/dynamics.hpp"
#include "asense/errors.hpp"
#include "asense/parallel.hpp"

namespace asense {
namespace {

bool before(const std::complex<double>& l, const std::complex<double>& r) {
    const double ml = std::abs(l);
    const double mr = std::abs(r);
    if (ml != mr) {
        return ml > mr;
    }
    if (l.real() != r.real()) {
        return l.real() > r.real();
    }
    return l.imag() > r.imag();
}

}  // namespace

Mat2 monodromy(double delta, const StepperConfig& cfg) {
    if (!std::isfinite(delta) || delta < 0.0) {
        throw ValidationError("delta must be finite and >= 0");
    }
    return integrateMatrixODE([delta](double t) { return linearizedA(t, delta); }, Mat2::identity(), 0.0,
                              std::numbers::pi, cfg);
}

double characteristicDiscriminant(const Mat2& m) noexcept {
    // tr^2 - 4 det rewritten to avoid cancelling the product of the diagonal.
    const double d = m.a11 - m.a22;
    return d * d + 4.0 * m.a12 * m.a21;
}

Multipliers multipliers(const Mat2& m) {
    const double tr = m.trace();
    const double det = m.det();
    const double disc = characteristicDiscriminant(m);
    Multipliers mu;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        // Larger-magnitude root first, the other from Vieta, so no subtraction of close values.
        const double big = 0.5 * (tr >= 0.0 ? tr + root : tr - root);
        const double small = big != 0.0 ? det / big : 0.0;
        mu = {std::complex<double>(big, 0.0), std::complex<double>(small, 0.0)};
    } else {
        const double re = 0.5 * tr;
        const double im = 0.5 * std::sqrt(-disc);
        mu = {std::complex<double>(re, im), std::complex<double>(re, -im)};
    }
    if (before(mu[1], mu[0])) {
        std::swap(mu[0], mu[1]);
    }
    return mu;
}

double spectralRadius(const Multipliers& mu) noexcept { return std::max(std::abs(mu[0]), std::abs(mu[1])); }

FloquetResult analyze(double delta, const StepperConfig& cfg) {
    FloquetResult r;
    r.delta = delta;
    try {
        r.monodromy = monodromy(delta, cfg);
        r.multipliers = multipliers(r.monodromy);
        r.discriminant = characteristicDiscriminant(r.monodromy);
        r.spectralRadius = spectralRadius(r.multipliers);
        r.stable = r.spectralRadius < 1.0;
    } catch (const std::exception& e) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        r.monodromy = {nan, nan, nan, nan};
        r.multipliers = {std::complex<double>(nan, nan), std::complex<double>(nan, nan)};
        r.discriminant = nan;
        r.spectralRadius = nan;
        r.stable = false;
        r.error = e.what();
    }
    return r;
}

std::vector<double> deltaGrid(double deltaMin, double deltaMax, double step) {
    if (!std::isfinite(deltaMin) || !std::isfinite(deltaMax) || deltaMin < 0.0 || !(deltaMin < deltaMax)) {
        throw ValidationError("delta range requires 0 <= deltaMin < deltaMax");
    }
    if (!std::isfinite(step) || step <= 0.0) {
        throw ValidationError("delta step must be finite and > 0");
    }
    const auto n = static_cast<std::size_t>(std::floor((deltaMax - deltaMin) / step + 1e-9));
    std::vector<double> grid(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        grid[i] = deltaMin + static_cast<double>(i) * step;
    }
    return grid;
}

std::vector<FloquetResult> sweepDelta(double deltaMin, double deltaMax, double step, const StepperConfig& cfg,
                                      unsigned threads) {
    cfg.validate();
    const std::vector<double> grid = deltaGrid(deltaMin, deltaMax, step);
    std::vector<FloquetResult> out(grid.size());
    parallelFor(
        grid.size(), threads, [&](std::size_t i) { out[i] = analyze(grid[i], cfg); }, 4);
    return out;
}

double findCriticalDelta(double lo, double hi, double tol, const StepperConfig& cfg) {
    if (!(lo < hi) || lo < 0.0 || !std::isfinite(hi)) {
        throw ValidationError("critical-delta bracket requires 0 <= lo < hi");
    }
    if (!(tol > 0.0)) {
        throw ValidationError("bisection tolerance must be > 0");
    }
    const auto radius = [&cfg](double d) { return spectralRadius(multipliers(monodromy(d, cfg))); };
    if (!(radius(lo) < 1.0) || !(radius(hi) > 1.0)) {
        throw BracketInvalid("bracket needs spectral radius < 1 at lo and > 1 at hi");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (radius(mid) < 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<SignChange> discriminantSignChanges(const std::vector<FloquetResult>& sweep) {
    std::vector<SignChange> out;
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        const double prev = sweep[i - 1].discriminant;
        const double cur = sweep[i].discriminant;
        if (std::isnan(prev) || std::isnan(cur)) {
            continue;
        }
        if ((prev < 0.0) != (cur < 0.0)) {
            out.push_back({sweep[i - 1].delta, sweep[i].delta});
        }
    }
    return out;
}

std::optional<double> largestStableDelta(const std::vector<FloquetResult>& sweep) {
    std::optional<double> best;
    for (const auto& r : sweep) {
        if (!r.error && r.stable && (!best || r.delta > *best)) {
            best = r.delta;
        }
    }
    return best;
}

}  // namespace asense
