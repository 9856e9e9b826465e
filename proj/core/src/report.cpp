#include "asense/report.hpp"

#include <ostream>

#include "asense/csv.hpp"

namespace asense {

double orbitDistance(const State& s, double t, double a) noexcept { return (s - referenceOrbit(t, a)).norm(); }

void writeTrajectoryCsv(std::ostream& os, const Trajectory& traj, const SystemParams& params) {
    CsvWriter csv(os, {"t", "x", "z", "u"});
    for (const auto& smp : traj.samples) {
        csv.field(smp.t).field(smp.s.x).field(smp.s.z).field(controlLaw(smp.s, smp.t, params));
        csv.endRow();
    }
}

void writeFloquetCsv(std::ostream& os, const std::vector<FloquetResult>& sweep) {
    CsvWriter csv(os, {"delta", "m11", "m12", "m21", "m22", "re1", "im1", "re2", "im2", "specrad", "stable"});
    for (const auto& r : sweep) {
        csv.field(r.delta)
            .field(r.monodromy.a11)
            .field(r.monodromy.a12)
            .field(r.monodromy.a21)
            .field(r.monodromy.a22)
            .field(r.multipliers[0].real())
            .field(r.multipliers[0].imag())
            .field(r.multipliers[1].real())
            .field(r.multipliers[1].imag())
            .field(r.spectralRadius)
            .field(static_cast<long long>(r.stable ? 1 : 0));
        csv.endRow();
    }
}

void writeDoaLongCsv(std::ostream& os, const DoaGrid& grid) {
    const DoaConfig& cfg = grid.config;
    CsvWriter csv(os, {"x0", "z0", "t0", "class"});
    for (std::size_t j = 0; j < grid.perT0.size(); ++j) {
        for (std::size_t iz = 0; iz < cfg.nz; ++iz) {
            for (std::size_t ix = 0; ix < cfg.nx; ++ix) {
                csv.field(cfg.xAt(ix)).field(cfg.zAt(iz)).field(cfg.t0Samples[j]);
                csv.field(toString(grid.perT0[j][cfg.index(ix, iz)]));
                csv.endRow();
            }
        }
    }
}

void writeDoaSummaryCsv(std::ostream& os, const DoaGrid& grid) {
    const DoaConfig& cfg = grid.config;
    CsvWriter csv(os, {"x0", "z0", "conservativeFlag", "alwaysDivergesFlag", "dependentFlag"});
    for (std::size_t iz = 0; iz < cfg.nz; ++iz) {
        for (std::size_t ix = 0; ix < cfg.nx; ++ix) {
            const std::size_t c = cfg.index(ix, iz);
            csv.field(cfg.xAt(ix)).field(cfg.zAt(iz));
            csv.field(static_cast<long long>(grid.conservative[c]));
            csv.field(static_cast<long long>(grid.alwaysDiverges[c]));
            csv.field(static_cast<long long>(grid.t0Dependent[c]));
            csv.endRow();
        }
    }
}

}  // namespace asense
