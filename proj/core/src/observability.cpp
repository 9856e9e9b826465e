#include "asense/observability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asense {
namespace {

constexpr double kRankThreshold = 1e-12;

// Shared input layout for random maps: (y1, y2, q..., t).
std::vector<double> feedbackInputs(const Output& y, std::span<const double> q, double t) {
    std::vector<double> v;
    v.reserve(q.size() + 3);
    v.push_back(y.y1);
    v.push_back(y.y2);
    v.insert(v.end(), q.begin(), q.end());
    v.push_back(t);
    return v;
}

}  // namespace

int observabilityRank(const Mat2& a, double c1, double c2) noexcept {
    // Rows: C and C A.
    const double r11 = c1;
    const double r12 = c2;
    const double r21 = c1 * a.a11 + c2 * a.a21;
    const double r22 = c1 * a.a12 + c2 * a.a22;
    const double largest = std::fmax(std::fmax(std::fabs(r11), std::fabs(r12)), std::fmax(std::fabs(r21), std::fabs(r22)));
    if (!(largest > kRankThreshold)) {
        return 0;
    }
    const double minor = r11 * r22 - r12 * r21;
    return std::fabs(minor) > kRankThreshold * std::fmax(1.0, largest * largest) ? 2 : 1;
}

int linearObservabilityRank(double gammaStar) noexcept {
    return observabilityRank(Mat2{0.0, 1.0, 0.0, -1.0}, 0.0, gammaStar);
}

double nonlinearCondition(const State& s, const ScalarField& gamma) {
    const double g = gamma.value(s.x);
    const double g1 = gamma.first(s.x);
    const double g2 = gamma.second(s.x);
    return s.z * s.z * (2.0 * g1 * g1 - g * g2);
}

ObservabilityReport observabilityReport(const State& s, const ScalarField& gamma) {
    ObservabilityReport r;
    r.point = s;
    r.gamma = gamma.descriptor();
    r.linearRank = linearObservabilityRank(gamma.value(s.x));
    r.nonlinearCondition = nonlinearCondition(s, gamma);
    r.locallyObservable = std::fabs(r.nonlinearCondition) > kObservabilityThreshold;
    return r;
}

CoupledRate coupledField(const GenericFeedback& fb, const State& s, std::span<const double> q, double t) {
    if (q.size() != fb.stateDim) {
        throw std::invalid_argument("controller state has the wrong dimension");
    }
    const Output y = measure(s);
    CoupledRate rate;
    rate.plant = openLoopField(s, fb.law(y, q, t));
    rate.controller = fb.dynamics(q, y, t);
    return rate;
}

double impossibilityWitness(const GenericFeedback& fb, std::span<const double> q, double xShift, double t) {
    const CoupledRate base = coupledField(fb, State{0.0, 0.0}, q, t);
    const CoupledRate shifted = coupledField(fb, State{xShift, 0.0}, q, t);
    double sum = 0.0;
    const State dp = base.plant - shifted.plant;
    sum += dp.x * dp.x + dp.z * dp.z;
    for (std::size_t i = 0; i < base.controller.size(); ++i) {
        const double d = base.controller[i] - shifted.controller[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

SmoothMap SmoothMap::random(std::mt19937_64& rng, std::size_t inputDim, std::size_t terms) {
    std::uniform_int_distribution<int> kindDist(0, 4);
    std::uniform_real_distribution<double> coefDist(-2.0, 2.0);
    std::uniform_real_distribution<double> weightDist(-1.5, 1.5);
    SmoothMap map;
    map.inputDim_ = inputDim;
    map.terms_.reserve(terms);
    for (std::size_t i = 0; i < terms; ++i) {
        Term term;
        term.kind = static_cast<Kind>(kindDist(rng));
        term.coef = coefDist(rng);
        term.bias = weightDist(rng);
        term.weights.resize(inputDim);
        for (double& w : term.weights) {
            w = weightDist(rng);
        }
        map.terms_.push_back(std::move(term));
    }
    return map;
}

double SmoothMap::operator()(std::span<const double> v) const {
    if (v.size() != inputDim_) {
        throw std::invalid_argument("SmoothMap input has the wrong dimension");
    }
    double out = 0.0;
    for (const Term& term : terms_) {
        double arg = term.bias;
        for (std::size_t i = 0; i < v.size(); ++i) {
            arg += term.weights[i] * v[i];
        }
        double phi = 0.0;
        switch (term.kind) {
        case Kind::Linear: phi = arg; break;
        case Kind::Square: phi = arg * arg; break;
        case Kind::Cube: phi = arg * arg * arg; break;
        case Kind::Sine: phi = std::sin(arg); break;
        case Kind::Cosine: phi = std::cos(arg); break;
        }
        out += term.coef * phi;
    }
    return out;
}

GenericFeedback randomFeedback(std::mt19937_64& rng, std::size_t maxStateDim) {
    std::uniform_int_distribution<std::size_t> dimDist(1, std::max<std::size_t>(1, maxStateDim));
    std::uniform_int_distribution<std::size_t> termDist(1, 4);
    const std::size_t dim = dimDist(rng);
    const std::size_t inputs = dim + 3;

    std::vector<SmoothMap> rates;
    rates.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        rates.push_back(SmoothMap::random(rng, inputs, termDist(rng)));
    }
    SmoothMap law = SmoothMap::random(rng, inputs, termDist(rng));

    GenericFeedback fb;
    fb.stateDim = dim;
    fb.dynamics = [rates = std::move(rates)](std::span<const double> q, const Output& y, double t) {
        const std::vector<double> v = feedbackInputs(y, q, t);
        std::vector<double> dq(rates.size());
        for (std::size_t i = 0; i < rates.size(); ++i) {
            dq[i] = rates[i](v);
        }
        return dq;
    };
    fb.law = [law = std::move(law)](const Output& y, std::span<const double> q, double t) {
        return law(feedbackInputs(y, q, t));
    };
    return fb;
}

ImpossibilityStats impossibilityCheck(std::uint64_t seed, std::size_t controllers, std::size_t probes) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> qDist(0.0, 2.0);
    std::uniform_real_distribution<double> shiftDist(-10.0, 10.0);
    std::uniform_real_distribution<double> timeDist(0.0, 100.0);

    ImpossibilityStats stats;
    std::vector<double> q;
    for (std::size_t c = 0; c < controllers; ++c) {
        const GenericFeedback fb = randomFeedback(rng);
        q.resize(fb.stateDim);
        for (std::size_t p = 0; p < probes; ++p) {
            for (double& qi : q) {
                qi = qDist(rng);
            }
            const double shift = shiftDist(rng);
            const double t = timeDist(rng);
            const double w = impossibilityWitness(fb, q, shift, t);
            // NaN must stick so that it cannot be mistaken for agreement.
            if (std::isnan(w) || w > stats.maxDiscrepancy) {
                stats.maxDiscrepancy = w;
            }
            ++stats.evaluations;
        }
    }
    return stats;
}

}  // namespace asense
