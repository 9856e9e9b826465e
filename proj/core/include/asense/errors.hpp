#pragma once

#include <stdexcept>
#include <string>

namespace asense {

/// Raised when a vector field evaluation produces NaN or Inf.
class NonFiniteState : public std::runtime_error {
public:
    NonFiniteState(const std::string& what, double t) : std::runtime_error(what), time_(t) {}
    [[nodiscard]] double time() const noexcept { return time_; }

private:
    double time_;
};

/// Bisection was asked to refine a bracket without a stable/unstable sign change.
class BracketInvalid : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A trajectory was analysed under parameters other than the ones that produced it.
class ParamMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A precondition on user-supplied parameters failed.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace asense
