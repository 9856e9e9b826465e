#pragma once

#include <iosfwd>
#include <vector>

#include "asense/doa.hpp"
#include "asense/dynamics.hpp"
#include "asense/floquet.hpp"
#include "asense/integrate.hpp"

namespace asense {

/// Columns t, x, z, u where u is the closed-loop control at each sample.
void writeTrajectoryCsv(std::ostream& os, const Trajectory& traj, const SystemParams& params);

/// Columns delta, m11, m12, m21, m22, re1, im1, re2, im2, specrad, stable.
void writeFloquetCsv(std::ostream& os, const std::vector<FloquetResult>& sweep);

/// Long format: one row per (cell, t0) with columns x0, z0, t0, class.
void writeDoaLongCsv(std::ostream& os, const DoaGrid& grid);

/// One row per cell: x0, z0, conservativeFlag, alwaysDivergesFlag, dependentFlag.
void writeDoaSummaryCsv(std::ostream& os, const DoaGrid& grid);

/// Distance from s to the reference orbit at time t.
[[nodiscard]] double orbitDistance(const State& s, double t, double a) noexcept;

}  // namespace asense
