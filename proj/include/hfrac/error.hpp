#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hfrac {

/// Gamma pole or h-factorial argument outside the zero convention.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// An operator was handed fewer grid points than it needs.
struct InsufficientPoints : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Two grid functions that must share a grid (or a shape) do not.
struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A power inequality that needs y >= 0 got a negative sample.
struct NonnegativityViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotPositiveDefinite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Iterative linear algebra ran out of sweeps.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inner implicit solve failed at a given time step.
class SolveError : public std::runtime_error {
public:
    SolveError(std::size_t step, const std::string& what)
        : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Runtime failure while evaluating a parsed expression (division by zero).
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hfrac
