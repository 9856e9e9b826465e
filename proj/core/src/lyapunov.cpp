#include "asense/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "asense/errors.hpp"

namespace asense {

Mat2 qMatrix(double t, double delta, double eta) noexcept {
    const double c = std::cos(t);
    const double s2 = std::sin(2.0 * t);
    const double off = 0.5 * delta * (s2 + eta * c * c);
    return {delta * c * c, off, off, delta * eta * s2 + (eta - 1.0)};
}

double deltaBoundForEta(double eta) noexcept { return 4.0 * (eta - 1.0) / (eta * eta + 2.0 * eta + 4.0); }

AnalyticBounds analyticBounds() noexcept {
    const double sqrt7 = std::sqrt(7.0);
    return {2.0 / 3.0 * (sqrt7 - 2.0), 1.0 + sqrt7};
}

LyapunovCert certify(double delta, double eta, int nSamples) {
    if (!std::isfinite(eta) || !(eta > 1.0)) {
        throw ValidationError("eta must be finite and > 1");
    }
    if (!std::isfinite(delta) || delta < 0.0) {
        throw ValidationError("delta must be finite and >= 0");
    }
    if (nSamples < 1000) {
        throw ValidationError("certification needs at least 1000 samples");
    }

    LyapunovCert cert;
    cert.eta = eta;
    cert.delta = delta;
    cert.P = lyapunovP(eta);
    cert.worstDetQ = std::numeric_limits<double>::infinity();
    cert.worstTraceQ = std::numeric_limits<double>::infinity();

    const double dt = std::numbers::pi / static_cast<double>(nSamples - 1);
    for (int i = 0; i < nSamples; ++i) {
        const double t = static_cast<double>(i) * dt;
        const Mat2 q = qMatrix(t, delta, eta);
        const double det = q.det();
        if (det < cert.worstDetQ) {
            cert.worstDetQ = det;
            cert.argminT = t;
        }
        cert.worstTraceQ = std::fmin(cert.worstTraceQ, q.trace());
    }
    cert.verified = cert.worstDetQ >= -kDetQTolerance && cert.worstTraceQ > 0.0;
    return cert;
}

std::vector<LyapunovSample> vDotAlongFlow(const Trajectory& traj, double delta, double eta) {
    if (!traj.params) {
        throw ParamMismatch("trajectory carries no system parameters");
    }
    if (traj.params->delta() != delta) {
        throw ParamMismatch("trajectory delta " + std::to_string(traj.params->delta()) +
                            " differs from requested delta " + std::to_string(delta));
    }
    const Mat2 p = lyapunovP(eta);
    std::vector<LyapunovSample> out;
    out.reserve(traj.samples.size());
    for (const auto& smp : traj.samples) {
        const State px = apply(p, smp.s);
        const State qx = apply(qMatrix(smp.t, delta, eta), smp.s);
        out.push_back({smp.t, 0.5 * (smp.s.x * px.x + smp.s.z * px.z), -(smp.s.x * qx.x + smp.s.z * qx.z)});
    }
    return out;
}

Trajectory linearizedTrajectory(double delta, const State& x0, double t0, double tEnd, const StepperConfig& cfg) {
    const SystemParams params = SystemParams::fromDelta(delta);
    return integrateState([delta](double t, const State& s) { return apply(linearizedA(t, delta), s); }, x0, t0,
                          tEnd, cfg, params);
}

}  // namespace asense
