#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "asense/dynamics.hpp"
#include "asense/mat2.hpp"

namespace asense {

/// Rank of the observability matrix [C; C A] for a 2-state, 1-output pair,
/// using explicit minors with threshold 1e-12.
[[nodiscard]] int observabilityRank(const Mat2& a, double c1, double c2) noexcept;

/// Rank for the linearisation about (x*, 0): A = [[0, 1], [0, -1]], C = [0, gamma*].
[[nodiscard]] int linearObservabilityRank(double gammaStar) noexcept;

/// z^2 (2 gamma'(x)^2 - gamma(x) gamma''(x)); nonzero is sufficient for local observability.
[[nodiscard]] double nonlinearCondition(const State& s, const ScalarField& gamma);

inline constexpr double kObservabilityThreshold = 1e-9;

struct ObservabilityReport {
    State point{};
    std::string gamma;
    int linearRank{0};
    double nonlinearCondition{0.0};
    bool locallyObservable{false};
};

[[nodiscard]] ObservabilityReport observabilityReport(const State& s, const ScalarField& gamma);

/// Dynamic time-varying output feedback  dq/dt = g(q, y, t),  u = k(y, q, t).
struct GenericFeedback {
    using Dynamics = std::function<std::vector<double>(std::span<const double> q, const Output& y, double t)>;
    using Law = std::function<double(const Output& y, std::span<const double> q, double t)>;

    std::size_t stateDim{0};
    Dynamics dynamics;
    Law law;
};

/// Rate of the plant coupled to a feedback, with the augmented output y = (x z, z).
struct CoupledRate {
    State plant{};
    std::vector<double> controller;
};

[[nodiscard]] CoupledRate coupledField(const GenericFeedback& fb, const State& s, std::span<const double> q,
                                       double t);

/// Norm of the difference between the coupled vector fields at (0, 0, q) and
/// (xShift, 0, q). The output cannot see x when z = 0, so this is always 0.
[[nodiscard]] double impossibilityWitness(const GenericFeedback& fb, std::span<const double> q, double xShift,
                                          double t);

/// Random smooth map R^n -> R: a sum of terms coef * phi(w . v + b) with phi a
/// low-degree monomial, sine or cosine.
class SmoothMap {
public:
    enum class Kind : std::uint8_t { Linear, Square, Cube, Sine, Cosine };

    static SmoothMap random(std::mt19937_64& rng, std::size_t inputDim, std::size_t terms);

    [[nodiscard]] double operator()(std::span<const double> v) const;
    [[nodiscard]] std::size_t inputDim() const noexcept { return inputDim_; }

private:
    struct Term {
        Kind kind;
        double coef;
        double bias;
        std::vector<double> weights;
    };

    std::size_t inputDim_{0};
    std::vector<Term> terms_;
};

/// Feedback whose g and k are independent random SmoothMaps of (y1, y2, q, t).
/// Controller dimension is drawn from [1, maxStateDim].
[[nodiscard]] GenericFeedback randomFeedback(std::mt19937_64& rng, std::size_t maxStateDim = 4);

struct ImpossibilityStats {
    std::size_t evaluations{0};
    double maxDiscrepancy{0.0};
};

/// Draws `controllers` random feedbacks and `probes` random (q, xShift, t)
/// per feedback, all from `seed`, and records the largest witness value.
[[nodiscard]] ImpossibilityStats impossibilityCheck(std::uint64_t seed, std::size_t controllers,
                                                    std::size_t probes);

}  // namespace asense
