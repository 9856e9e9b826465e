#include "asense/doa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "asense/errors.hpp"
#include "asense/parallel.hpp"

namespace asense {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double coordinate(const Interval& r, std::size_t n, std::size_t i) noexcept {
    if (n <= 1) {
        return r.lo;
    }
    return r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void validateAxis(const Interval& r, std::size_t n, const char* name) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
        throw ValidationError(std::string(name) + " range must be finite with lo <= hi");
    }
    if (n == 0) {
        throw ValidationError(std::string(name) + " grid count must be positive");
    }
    if (n == 1 && r.lo != r.hi) {
        throw ValidationError(std::string(name) + " grid needs >= 2 points unless the range is a single point");
    }
    if (n >= 2 && r.lo == r.hi) {
        throw ValidationError(std::string(name) + " range is degenerate but grid count is >= 2");
    }
}

}  // namespace

std::string_view toString(CellClass c) noexcept {
    switch (c) {
    case CellClass::Converges: return "converges";
    case CellClass::Diverges: return "diverges";
    case CellClass::Undecided: return "undecided";
    }
    return "unknown";
}

DoaConfig DoaConfig::defaults() { return defaults(SystemParams(1.0, 1.0 / std::numbers::sqrt2)); }

DoaConfig DoaConfig::defaults(const SystemParams& params, std::size_t t0Count) {
    DoaConfig cfg;
    cfg.params = params;
    cfg.t0Samples = uniformT0Samples(t0Count);
    cfg.horizon = 100.0 * kTwoPi;
    cfg.convergenceTol = 0.05 * params.a();
    cfg.escapeRadius = 1e3;
    return cfg;
}

void DoaConfig::validate() const {
    validateAxis(xRange, nx, "x");
    validateAxis(zRange, nz, "z");
    if (t0Samples.empty()) {
        throw ValidationError("at least one t0 sample is required");
    }
    for (double t0 : t0Samples) {
        if (!(t0 >= 0.0 && t0 < kTwoPi)) {
            throw ValidationError("every t0 sample must lie in [0, 2 pi)");
        }
    }
    if (!std::isfinite(horizon) || horizon < kTwoPi) {
        throw ValidationError("horizon must cover at least one period (2 pi)");
    }
    if (!(convergenceTol > 0.0) || !(convergenceTol < params.a())) {
        throw ValidationError("convergence tolerance must lie in (0, a)");
    }
    const double extent = std::max({std::fabs(xRange.lo), std::fabs(xRange.hi), std::fabs(zRange.lo),
                                    std::fabs(zRange.hi)});
    if (!std::isfinite(escapeRadius) || !(escapeRadius > extent)) {
        throw ValidationError("escape radius must exceed the grid extent");
    }
    if (!(stiffnessBudget > 0.0) || !(stiffnessBudget <= 2.5)) {
        throw ValidationError("stiffness budget must lie in (0, 2.5]");
    }
    if (stepsPerPeriod < 16) {
        throw ValidationError("stepsPerPeriod must be >= 16");
    }
}

double DoaConfig::stepSize() const noexcept { return kTwoPi / static_cast<double>(stepsPerPeriod); }
double DoaConfig::xAt(std::size_t ix) const noexcept { return coordinate(xRange, nx, ix); }
double DoaConfig::zAt(std::size_t iz) const noexcept { return coordinate(zRange, nz, iz); }

std::vector<double> uniformT0Samples(std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) {
        out[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(count);
    }
    return out;
}

PhaseTable::PhaseTable(double t0, const DoaConfig& cfg)
    : t0_(t0), h_(cfg.stepSize()), k_(cfg.params.k()), a_(cfg.params.a()), tol2_(cfg.convergenceTol * cfg.convergenceTol),
      escape2_(cfg.escapeRadius * cfg.escapeRadius),
      totalSteps_(static_cast<long>(std::ceil(cfg.horizon / cfg.stepSize() * (1.0 - 1e-12)))),
      period_(cfg.stepsPerPeriod), budget_(cfg.stiffnessBudget) {
    const double a = cfg.params.a();
    const double k = cfg.params.k();
    const auto halfSteps = static_cast<std::size_t>(2 * period_);
    forcing_.resize(halfSteps);
    reference_.resize(halfSteps);
    for (std::size_t m = 0; m < halfSteps; ++m) {
        const double t = t0 + 0.5 * h_ * static_cast<double>(m);
        const double s = std::sin(t);
        const double c = std::cos(t);
        // Time-dependent part of the closed loop: k a^3 sin t cos^2 t + alpha(t).
        forcing_[m] = k * a * a * a * s * c * c + (a * c - a * s);
        reference_[m] = {a * s, a * c};
    }
}

CellClass PhaseTable::classify(const State& s0) const noexcept {
    const double k = k_;
    const double a = a_;
    const double h = h_;
    const double half = 0.5 * h;
    const double* forcing = forcing_.data();
    const auto wrap = static_cast<std::size_t>(2 * period_);

    auto field = [k](double x, double z, double f, double& dx, double& dz) {
        dx = z;
        dz = -z - k * x * z * z + f;
    };
    const double budget = budget_;
    // Spectral radius of the closed-loop Jacobian [[0, 1], [-k z^2, -1 - 2 k x z]].
    auto jacobianRadius = [k](double x, double z) {
        const double halfTrace = -0.5 - k * x * z;
        const double det = k * z * z;
        const double disc = halfTrace * halfTrace - det;
        return disc >= 0.0 ? std::fabs(halfTrace) + std::sqrt(disc) : std::sqrt(det);
    };
    auto forcingAt = [k, a](double t) {
        const double s = std::sin(t);
        const double c = std::cos(t);
        return k * a * a * a * s * c * c + (a * c - a * s);
    };

    double x = s0.x;
    double z = s0.z;
    if (!(x * x + z * z <= escape2_)) {
        return CellClass::Diverges;
    }

    long streak = 0;
    std::size_t m = 0;  // half-step index of the current sample time, modulo one period
    for (long i = 0;; ++i) {
        const State& ref = reference_[m];
        const double ex = x - ref.x;
        const double ez = z - ref.z;
        streak = (ex * ex + ez * ez < tol2_) ? streak + 1 : 0;
        // streak samples span streak - 1 steps; one period is period_ steps.
        if (streak > period_) {
            return CellClass::Converges;
        }
        if (i == totalSteps_) {
            return CellClass::Undecided;
        }

        const std::size_t mNext = (m + 2 == wrap) ? 0 : m + 2;
        double k1x, k1z, k2x, k2z, k3x, k3z, k4x, k4z;
        if (h * jacobianRadius(x, z) <= budget) {
            const double f0 = forcing[m];
            const double f1 = forcing[m + 1];
            const double f2 = forcing[mNext];
            field(x, z, f0, k1x, k1z);
            field(x + half * k1x, z + half * k1z, f1, k2x, k2z);
            field(x + half * k2x, z + half * k2z, f1, k3x, k3z);
            field(x + h * k3x, z + h * k3z, f2, k4x, k4z);
            x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            z += (h / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        } else {
            // Large excursion: split the step so that every substep satisfies
            // the stiffness budget, evaluating the forcing directly.
            const double tStep = t0_ + h * static_cast<double>(i);
            double t = 0.0;
            double fa = forcing[m];
            while (t < h) {
                const double sub = std::min(h - t, budget / jacobianRadius(x, z));
                const bool last = t + sub >= h;
                const double sh = 0.5 * sub;
                const double fm = forcingAt(tStep + t + sh);
                const double fb = last ? forcing[mNext] : forcingAt(tStep + t + sub);
                field(x, z, fa, k1x, k1z);
                field(x + sh * k1x, z + sh * k1z, fm, k2x, k2z);
                field(x + sh * k2x, z + sh * k2z, fm, k3x, k3z);
                field(x + sub * k3x, z + sub * k3z, fb, k4x, k4z);
                x += (sub / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
                z += (sub / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
                t = last ? h : t + sub;
                fa = fb;
                if (!(x * x + z * z <= escape2_)) {
                    return CellClass::Diverges;
                }
            }
        }
        m = mNext;

        if (!(x * x + z * z <= escape2_)) {
            return CellClass::Diverges;
        }
    }
}

CellClass classifyCell(const State& s0, double t0, const DoaConfig& cfg) {
    cfg.validate();
    return PhaseTable(t0, cfg).classify(s0);
}

DoaGrid assembleGrid(const DoaConfig& cfg, std::vector<std::vector<CellClass>> perT0) {
    const std::size_t cells = cfg.cellCount();
    DoaGrid grid;
    grid.config = cfg;
    grid.perT0 = std::move(perT0);
    grid.conservative.assign(cells, 0);
    grid.alwaysDiverges.assign(cells, 0);
    grid.t0Dependent.assign(cells, 0);
    grid.undecided.assign(cells, 0);
    for (std::size_t c = 0; c < cells; ++c) {
        bool allConverge = true;
        bool anyConverge = false;
        bool allDiverge = true;
        for (const auto& raster : grid.perT0) {
            const CellClass cls = raster.at(c);
            allConverge = allConverge && cls == CellClass::Converges;
            anyConverge = anyConverge || cls == CellClass::Converges;
            allDiverge = allDiverge && cls == CellClass::Diverges;
        }
        grid.conservative[c] = allConverge ? 1 : 0;
        grid.alwaysDiverges[c] = allDiverge ? 1 : 0;
        grid.t0Dependent[c] = (anyConverge && !allConverge) ? 1 : 0;
        grid.undecided[c] = (!anyConverge && !allDiverge) ? 1 : 0;
    }
    return grid;
}

DoaGrid computeGrid(const DoaConfig& cfg, unsigned threads) {
    cfg.validate();
    const std::size_t cells = cfg.cellCount();
    const std::size_t phases = cfg.t0Samples.size();

    std::vector<PhaseTable> tables;
    tables.reserve(phases);
    for (double t0 : cfg.t0Samples) {
        tables.emplace_back(t0, cfg);
    }

    std::vector<std::vector<CellClass>> perT0(phases, std::vector<CellClass>(cells, CellClass::Undecided));
    parallelFor(
        phases * cells, threads,
        [&](std::size_t w) {
            const std::size_t j = w / cells;
            const std::size_t c = w % cells;
            const State s0{cfg.xAt(c % cfg.nx), cfg.zAt(c / cfg.nx)};
            perT0[j][c] = tables[j].classify(s0);
        },
        256);
    return assembleGrid(cfg, std::move(perT0));
}

}  // namespace asense
