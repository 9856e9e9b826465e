#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "asense/dynamics.hpp"

namespace asense {

enum class CellClass : std::uint8_t { Converges = 0, Diverges = 1, Undecided = 2 };

[[nodiscard]] std::string_view toString(CellClass c) noexcept;

struct Interval {
    double lo{0.0};
    double hi{0.0};
};

/// Grid, horizon and thresholds for domain-of-attraction estimation.
///
/// Integration uses fixed RK4 steps of width 2 pi / stepsPerPeriod counted
/// from each t0, so the forcing repeats exactly every stepsPerPeriod steps.
struct DoaConfig {
    Interval xRange{-4.0, 4.0};
    Interval zRange{-4.0, 4.0};
    std::size_t nx{200};
    std::size_t nz{200};
    std::vector<double> t0Samples;
    double horizon{0.0};
    double convergenceTol{0.0};
    double escapeRadius{1e3};
    int stepsPerPeriod{512};
    /// Largest h * (Jacobian spectral radius) for one RK4 step; larger
    /// excursions are split into substeps.
    double stiffnessBudget{0.5};
    SystemParams params{1.0, 1.0};

    /// k = 1, a = 1/sqrt(2), [-4, 4]^2 at 200 x 200, 16 phases, 100 periods,
    /// tolerance 0.05 a, escape radius 1e3.
    [[nodiscard]] static DoaConfig defaults();
    [[nodiscard]] static DoaConfig defaults(const SystemParams& params, std::size_t t0Count = 16);

    /// Throws ValidationError when any invariant fails.
    void validate() const;

    [[nodiscard]] double stepSize() const noexcept;
    [[nodiscard]] double xAt(std::size_t ix) const noexcept;
    [[nodiscard]] double zAt(std::size_t iz) const noexcept;
    [[nodiscard]] std::size_t cellCount() const noexcept { return nx * nz; }
    [[nodiscard]] std::size_t index(std::size_t ix, std::size_t iz) const noexcept { return iz * nx + ix; }
};

/// count phases 2 pi j / count, j = 0..count-1.
[[nodiscard]] std::vector<double> uniformT0Samples(std::size_t count);

/// Per-phase precomputation: forcing and reference orbit at every half step
/// of one period starting at t0.
class PhaseTable {
public:
    PhaseTable(double t0, const DoaConfig& cfg);

    [[nodiscard]] CellClass classify(const State& s0) const noexcept;
    [[nodiscard]] double t0() const noexcept { return t0_; }

private:
    double t0_;
    double h_;
    double k_;
    double a_;
    double tol2_;
    double escape2_;
    long totalSteps_;
    int period_;
    double budget_;
    std::vector<double> forcing_;
    std::vector<State> reference_;
};

/// Integrates the closed loop from (s0, t0). Diverges once |s| exceeds the
/// escape radius or turns non-finite; Converges once the distance to the
/// reference orbit has stayed below convergenceTol over a full period;
/// Undecided when the horizon runs out first.
[[nodiscard]] CellClass classifyCell(const State& s0, double t0, const DoaConfig& cfg);

struct DoaGrid {
    DoaConfig config;
    /// perT0[j][cell] for the j-th t0 sample; cells indexed by DoaConfig::index.
    std::vector<std::vector<CellClass>> perT0;
    /// Converges for every t0.
    std::vector<std::uint8_t> conservative;
    /// Diverges for every t0.
    std::vector<std::uint8_t> alwaysDiverges;
    /// Converges for some but not all t0.
    std::vector<std::uint8_t> t0Dependent;
    /// Never converges and does not diverge for every t0.
    std::vector<std::uint8_t> undecided;
};

/// Builds the aggregate rasters from per-phase classifications.
[[nodiscard]] DoaGrid assembleGrid(const DoaConfig& cfg, std::vector<std::vector<CellClass>> perT0);

/// Classifies every (cell, t0) pair on up to `threads` workers.
[[nodiscard]] DoaGrid computeGrid(const DoaConfig& cfg, unsigned threads = 1);

}  // namespace asense
