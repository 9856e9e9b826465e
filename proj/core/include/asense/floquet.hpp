#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "asense/integrate.hpp"
#include "asense/mat2.hpp"

namespace asense {

/// Eigenvalues of a 2x2 matrix, ordered by modulus (desc) then real part (desc).
using Multipliers = std::array<std::complex<double>, 2>;

struct FloquetResult {
    double delta{0.0};
    Mat2 monodromy{};
    Multipliers multipliers{};
    /// (m11 - m22)^2 + 4 m12 m21; negative inside the complex-conjugate window.
    double discriminant{0.0};
    double spectralRadius{0.0};
    bool stable{false};
    /// Set when the monodromy integration failed for this point.
    std::optional<std::string> error;
};

/// Phi(pi) for dPhi/dt = A(t) Phi, Phi(0) = I, where A is the linearisation about the orbit.
[[nodiscard]] Mat2 monodromy(double delta, const StepperConfig& cfg = StepperConfig::monodromy());

/// Roots of lambda^2 - tr(M) lambda + det(M).
[[nodiscard]] Multipliers multipliers(const Mat2& m);

/// Discriminant of the characteristic polynomial in cancellation-free form.
[[nodiscard]] double characteristicDiscriminant(const Mat2& m) noexcept;

[[nodiscard]] double spectralRadius(const Multipliers& mu) noexcept;

/// Full analysis at one delta. Integration failures are recorded in
/// FloquetResult::error instead of thrown.
[[nodiscard]] FloquetResult analyze(double delta, const StepperConfig& cfg = StepperConfig::monodromy());

/// Uniform grid deltaMin, deltaMin + step, ... up to deltaMax (inclusive when it lands on the grid).
[[nodiscard]] std::vector<double> deltaGrid(double deltaMin, double deltaMax, double step);

/// Evaluates analyze() at every grid point; points may run on up to
/// `threads` workers and the result order is always the grid order.
[[nodiscard]] std::vector<FloquetResult> sweepDelta(double deltaMin, double deltaMax, double step,
                                                    const StepperConfig& cfg = StepperConfig::monodromy(),
                                                    unsigned threads = 1);

/// Bisects spectralRadius(delta) - 1 on [lo, hi] down to width tol and returns
/// the midpoint. Throws BracketInvalid unless lo is stable and hi is unstable.
[[nodiscard]] double findCriticalDelta(double lo, double hi, double tol,
                                       const StepperConfig& cfg = StepperConfig::monodromy());

/// Boundaries of the complex-conjugate window located on a sweep: midpoints
/// between adjacent grid points where the discriminant changes sign.
struct SignChange {
    double lo{0.0};
    double hi{0.0};
    [[nodiscard]] double midpoint() const noexcept { return 0.5 * (lo + hi); }
};
[[nodiscard]] std::vector<SignChange> discriminantSignChanges(const std::vector<FloquetResult>& sweep);

/// Largest grid delta with spectral radius < 1, if any.
[[nodiscard]] std::optional<double> largestStableDelta(const std::vector<FloquetResult>& sweep);

}  // namespace asense
