#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <locale>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "asense/doa.hpp"
#include "asense/dynamics.hpp"
#include "asense/errors.hpp"
#include "asense/floquet.hpp"
#include "asense/integrate.hpp"
#include "asense/lyapunov.hpp"
#include "asense/observability.hpp"
#include "asense/parallel.hpp"
#include "asense/report.hpp"
#include "json_config.hpp"

namespace asense::cli {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class Writer>
void writeFile(const std::string& path, Writer&& write) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    os.imbue(std::locale::classic());
    write(os);
    os.flush();
    if (!os) {
        throw IoError("failed while writing '" + path + "'");
    }
}

std::string num(double v) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s.precision(6);
    s << v;
    return s.str();
}

struct SimulateOptions {
    double k{1.0};
    double a{1.0 / std::numbers::sqrt2};
    double x0{1.0};
    double z0{1.0};
    double t0{0.0};
    double tEnd{60.0};
    double h{1e-3};
    double escapeRadius{1e6};
    std::string method{"rk4"};
    long every{1};
    std::string output;
};

struct FloquetOptions {
    double deltaMin{0.0};
    double deltaMax{4.0};
    double step{0.01};
    double h{std::numbers::pi / 2000.0};
    double criticalTol{1e-4};
    std::string output;
};

struct LyapunovOptions {
    double delta{0.0};
    std::string eta{"auto"};
    int samples{10000};
    std::string output;
};

struct DoaOptions {
    double k{1.0};
    double a{1.0 / std::numbers::sqrt2};
    double xMin{-4.0};
    double xMax{4.0};
    double zMin{-4.0};
    double zMax{4.0};
    std::size_t nx{200};
    std::size_t nz{200};
    std::size_t t0Count{16};
    std::vector<double> t0;
    double periods{100.0};
    std::optional<double> tol;
    double escapeRadius{1e3};
    int stepsPerPeriod{512};
    double stiffnessBudget{0.5};
    std::string output;
    std::string summary;
};

struct ObservabilityOptions {
    double x{0.0};
    double z{1.0};
    std::string gamma{"identity"};
    double c1{1.0};
    double c0{1.0};
    std::uint64_t seed{1};
    std::size_t controllers{100};
    std::size_t probes{100};
    std::string output;
};

int runSimulate(const SimulateOptions& o, std::ostream& out) {
    const SystemParams params(o.k, o.a);
    StepperConfig cfg;
    cfg.h = o.h;
    cfg.escapeRadius = o.escapeRadius;
    cfg.method = o.method == "dp45" ? Method::DP45 : Method::RK4;
    cfg.validate();
    if (!std::isfinite(o.x0) || !std::isfinite(o.z0)) {
        throw ValidationError("initial state must be finite");
    }
    if (!std::isfinite(o.t0) || !std::isfinite(o.tEnd) || !(o.tEnd > o.t0)) {
        throw ValidationError("t-end must exceed t0");
    }
    if (o.every < 1) {
        throw ValidationError("--every must be >= 1");
    }

    const Trajectory traj = integrateState(
        [&params](double t, const State& s) { return closedLoopField(s, t, params); }, State{o.x0, o.z0}, o.t0,
        o.tEnd, cfg, params);

    Trajectory thinned = traj;
    if (o.every > 1) {
        thinned.samples.clear();
        const auto step = static_cast<std::size_t>(o.every);
        for (std::size_t i = 0; i < traj.samples.size(); i += step) {
            thinned.samples.push_back(traj.samples[i]);
        }
        if ((traj.samples.size() - 1) % step != 0) {
            thinned.samples.push_back(traj.samples.back());
        }
    }
    writeFile(o.output, [&](std::ostream& os) { writeTrajectoryCsv(os, thinned, params); });

    const Sample& last = traj.samples.back();
    double tailDistance = 0.0;
    for (auto it = traj.samples.rbegin(); it != traj.samples.rend() && it->t >= last.t - kTwoPi; ++it) {
        tailDistance = std::max(tailDistance, orbitDistance(it->s, it->t, params.a()));
    }
    out << "simulate: " << thinned.samples.size() << " rows to " << o.output << "; t=" << num(last.t)
        << ", orbit distance over final period <= " << num(tailDistance)
        << (traj.escaped ? ", ESCAPED" : "") << '\n';
    return kOk;
}

int runFloquet(const FloquetOptions& o, unsigned threads, std::ostream& out) {
    StepperConfig cfg = StepperConfig::monodromy();
    cfg.h = o.h;
    cfg.validate();
    (void)deltaGrid(o.deltaMin, o.deltaMax, o.step);
    if (!(o.criticalTol > 0.0)) {
        throw ValidationError("--critical-tol must be > 0");
    }

    const auto sweep = sweepDelta(o.deltaMin, o.deltaMax, o.step, cfg, threads);
    writeFile(o.output, [&](std::ostream& os) { writeFloquetCsv(os, sweep); });

    std::optional<double> critical;
    for (std::size_t i = 1; i < sweep.size() && !critical; ++i) {
        if (sweep[i - 1].stable && !sweep[i].stable && !sweep[i].error) {
            try {
                critical = findCriticalDelta(sweep[i - 1].delta, sweep[i].delta, o.criticalTol, cfg);
            } catch (const BracketInvalid&) {
            }
        }
    }
    std::size_t failures = 0;
    for (const auto& r : sweep) {
        failures += r.error ? 1 : 0;
    }

    out << "floquet: " << sweep.size() << " points to " << o.output << "; delta*="
        << (critical ? num(*critical) : std::string("none"));
    out << "; complex window edges:";
    for (const auto& change : discriminantSignChanges(sweep)) {
        out << ' ' << num(change.midpoint());
    }
    if (failures > 0) {
        out << "; " << failures << " failed points";
    }
    out << '\n';
    return kOk;
}

int runLyapunov(const LyapunovOptions& o, std::ostream& out) {
    double eta = 0.0;
    if (o.eta == "auto") {
        eta = analyticBounds().etaDagger;
    } else {
        try {
            std::size_t used = 0;
            eta = std::stod(o.eta, &used);
            if (used != o.eta.size()) {
                throw std::invalid_argument(o.eta);
            }
        } catch (const std::exception&) {
            throw ValidationError("--eta must be a number or 'auto'");
        }
    }
    const LyapunovCert cert = certify(o.delta, eta, o.samples);
    writeFile(o.output, [&](std::ostream& os) { os << toJson(cert).dump(2) << '\n'; });
    out << "lyapunov: delta=" << num(cert.delta) << " eta=" << num(cert.eta)
        << " verified=" << (cert.verified ? "true" : "false") << " min det Q=" << num(cert.worstDetQ)
        << " at t=" << num(cert.argminT) << '\n';
    return kOk;
}

int runDoa(const DoaOptions& o, unsigned threads, std::ostream& out) {
    const SystemParams params(o.k, o.a);
    DoaConfig cfg = DoaConfig::defaults(params, o.t0Count);
    if (!o.t0.empty()) {
        cfg.t0Samples = o.t0;
    }
    cfg.xRange = {o.xMin, o.xMax};
    cfg.zRange = {o.zMin, o.zMax};
    cfg.nx = o.nx;
    cfg.nz = o.nz;
    cfg.horizon = o.periods * kTwoPi;
    if (o.tol) {
        cfg.convergenceTol = *o.tol;
    }
    cfg.escapeRadius = o.escapeRadius;
    cfg.stepsPerPeriod = o.stepsPerPeriod;
    cfg.stiffnessBudget = o.stiffnessBudget;
    cfg.validate();

    const DoaGrid grid = computeGrid(cfg, threads);
    writeFile(o.output, [&](std::ostream& os) { writeDoaLongCsv(os, grid); });
    if (!o.summary.empty()) {
        writeFile(o.summary, [&](std::ostream& os) { writeDoaSummaryCsv(os, grid); });
    }

    std::size_t conservative = 0, diverges = 0, dependent = 0, undecided = 0;
    for (std::size_t c = 0; c < cfg.cellCount(); ++c) {
        conservative += grid.conservative[c];
        diverges += grid.alwaysDiverges[c];
        dependent += grid.t0Dependent[c];
        undecided += grid.undecided[c];
    }
    out << "doa: " << cfg.nx << "x" << cfg.nz << " cells x " << cfg.t0Samples.size() << " t0 to " << o.output
        << "; conservative=" << conservative << " always-diverges=" << diverges << " t0-dependent=" << dependent
        << " undecided=" << undecided << '\n';
    return kOk;
}

int runObservability(const ObservabilityOptions& o, std::ostream& out) {
    if (!std::isfinite(o.x) || !std::isfinite(o.z)) {
        throw ValidationError("state must be finite");
    }
    std::optional<ScalarField> gamma;
    if (o.gamma == "identity") {
        gamma = ScalarField::identity();
    } else {
        if (!std::isfinite(o.c1) || !std::isfinite(o.c0) || o.c1 * o.x + o.c0 == 0.0) {
            throw ValidationError("hyperbolic gamma needs finite c1, c0 with c1 x + c0 != 0");
        }
        gamma = ScalarField::hyperbolic(o.c1, o.c0);
    }
    const ObservabilityReport report = observabilityReport(State{o.x, o.z}, *gamma);
    const ImpossibilityStats stats = impossibilityCheck(o.seed, o.controllers, o.probes);

    nlohmann::json doc = toJson(report);
    doc["impossibility"] = {{"seed", o.seed},
                            {"controllers", o.controllers},
                            {"probes", o.probes},
                            {"evaluations", stats.evaluations},
                            {"maxDiscrepancy", stats.maxDiscrepancy}};
    writeFile(o.output, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    out << "observability: rank=" << report.linearRank << " condition=" << num(report.nonlinearCondition)
        << " locallyObservable=" << (report.locallyObservable ? "true" : "false")
        << " impossibility max discrepancy=" << num(stats.maxDiscrepancy) << " over " << stats.evaluations
        << " probes\n";
    return kOk;
}

}  // namespace

nlohmann::json toJson(const LyapunovCert& cert) {
    return {{"delta", cert.delta},         {"eta", cert.eta},
            {"verified", cert.verified},   {"worstDetQ", cert.worstDetQ},
            {"worstTraceQ", cert.worstTraceQ}, {"argminT", cert.argminT}};
}

nlohmann::json toJson(const ObservabilityReport& report) {
    return {{"point", {{"x", report.point.x}, {"z", report.point.z}}},
            {"gamma", report.gamma},
            {"linearRank", report.linearRank},
            {"nonlinearCondition", report.nonlinearCondition},
            {"locallyObservable", report.locallyObservable}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Active-sensing limit-cycle analysis", args.empty() ? "asense" : args.front()};
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with option values; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads for sweeps and grids (0 = all cores)")
        ->capture_default_str();

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Integrate the closed loop and write t,x,z,u CSV");
    simulate->add_option("--k", sim.k, "Feedback gain")->capture_default_str();
    simulate->add_option("--a", sim.a, "Sensing amplitude")->capture_default_str();
    simulate->add_option("--x0", sim.x0, "Initial position")->capture_default_str();
    simulate->add_option("--z0", sim.z0, "Initial velocity")->capture_default_str();
    simulate->add_option("--t0", sim.t0, "Initial time")->capture_default_str();
    simulate->add_option("--t-end", sim.tEnd, "Final time")->capture_default_str();
    simulate->add_option("--dt", sim.h, "Step size")->capture_default_str();
    simulate->add_option("--escape-radius", sim.escapeRadius, "Stop once |state| exceeds this")
        ->capture_default_str();
    simulate->add_option("--method", sim.method, "rk4 or dp45")
        ->check(CLI::IsMember({"rk4", "dp45"}))
        ->capture_default_str();
    simulate->add_option("--every", sim.every, "Write every N-th sample (the last is always kept)")
        ->capture_default_str();
    simulate->add_option("-o,--output", sim.output, "Trajectory CSV path")->required();

    FloquetOptions flo;
    auto* floquet = app.add_subcommand("floquet", "Sweep delta and write monodromy/multiplier CSV");
    floquet->add_option("--delta-min", flo.deltaMin)->capture_default_str();
    floquet->add_option("--delta-max", flo.deltaMax)->capture_default_str();
    floquet->add_option("--step", flo.step)->capture_default_str();
    floquet->add_option("--dt", flo.h, "RK4 step for the monodromy")->capture_default_str();
    floquet->add_option("--critical-tol", flo.criticalTol, "Bisection width for delta*")->capture_default_str();
    floquet->add_option("-o,--output", flo.output, "Sweep CSV path")->required();

    LyapunovOptions lya;
    auto* lyapunov = app.add_subcommand("lyapunov", "Certify V-dot <= 0 and write the certificate JSON");
    lyapunov->add_option("--delta", lya.delta)->required();
    lyapunov->add_option("--eta", lya.eta, "Weight in P, or 'auto' for 1 + sqrt(7)")->capture_default_str();
    lyapunov->add_option("--samples", lya.samples)->capture_default_str();
    lyapunov->add_option("-o,--output", lya.output, "Certificate JSON path")->required();

    DoaOptions doaOpt;
    auto* doa = app.add_subcommand("doa", "Classify a grid of initial conditions over initial times");
    doa->add_option("--k", doaOpt.k)->capture_default_str();
    doa->add_option("--a", doaOpt.a)->capture_default_str();
    doa->add_option("--x-min", doaOpt.xMin)->capture_default_str();
    doa->add_option("--x-max", doaOpt.xMax)->capture_default_str();
    doa->add_option("--z-min", doaOpt.zMin)->capture_default_str();
    doa->add_option("--z-max", doaOpt.zMax)->capture_default_str();
    doa->add_option("--nx", doaOpt.nx)->capture_default_str();
    doa->add_option("--nz", doaOpt.nz)->capture_default_str();
    doa->add_option("--t0-count", doaOpt.t0Count, "Uniform initial-time samples on [0, 2 pi)")
        ->capture_default_str();
    doa->add_option("--t0", doaOpt.t0, "Explicit initial times (overrides --t0-count)");
    doa->add_option("--periods", doaOpt.periods, "Horizon in periods of 2 pi")->capture_default_str();
    doa->add_option("--tol", doaOpt.tol, "Orbit-distance threshold (default 0.05 a)");
    doa->add_option("--escape-radius", doaOpt.escapeRadius)->capture_default_str();
    doa->add_option("--steps-per-period", doaOpt.stepsPerPeriod)->capture_default_str();
    doa->add_option("--stiffness-budget", doaOpt.stiffnessBudget)->capture_default_str();
    doa->add_option("-o,--output", doaOpt.output, "Long-format CSV path")->required();
    doa->add_option("--summary", doaOpt.summary, "Per-cell summary CSV path");

    ObservabilityOptions obs;
    auto* observability = app.add_subcommand("observability", "Observability report and impossibility check");
    observability->add_option("--x", obs.x)->capture_default_str();
    observability->add_option("--z", obs.z)->capture_default_str();
    observability->add_option("--gamma", obs.gamma, "identity or hyperbolic")
        ->check(CLI::IsMember({"identity", "hyperbolic"}))
        ->capture_default_str();
    observability->add_option("--c1", obs.c1, "Hyperbolic gamma slope")->capture_default_str();
    observability->add_option("--c0", obs.c0, "Hyperbolic gamma offset")->capture_default_str();
    observability->add_option("--seed", obs.seed)->capture_default_str();
    observability->add_option("--controllers", obs.controllers, "Random feedbacks to test")
        ->capture_default_str();
    observability->add_option("--probes", obs.probes, "Random (q, x shift, t) per feedback")->capture_default_str();
    observability->add_option("-o,--output", obs.output, "Report JSON path")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) {
            reversed.pop_back();
        }
        app.parse(reversed);
    } catch (const CLI::FileError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const unsigned workers = resolveThreads(threads);
        if (simulate->parsed()) {
            return runSimulate(sim, out);
        }
        if (floquet->parsed()) {
            return runFloquet(flo, workers, out);
        }
        if (lyapunov->parsed()) {
            return runLyapunov(lya, out);
        }
        if (doa->parsed()) {
            return runDoa(doaOpt, workers, out);
        }
        if (observability->parsed()) {
            return runObservability(obs, out);
        }
        err << "error: no subcommand\n";
        return kUsage;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
}

}  // namespace asense::cli
