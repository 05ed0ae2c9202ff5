#pragma once

#include <stdexcept>
#include <string>

namespace gisinlab {

// Invalid user-supplied parameters or preconditions. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure of a run (not a physics verdict). CLI exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Division by a vanishing density produced NaN/Inf, or nodes on the
// effective support of the data.
struct SingularityError : NumericalError {
    explicit SingularityError(const std::string& msg) : NumericalError(msg) {}
};

// A run failed its accuracy audit (norm drift, non-converging extrapolation).
struct AccuracyError : NumericalError {
    explicit AccuracyError(const std::string& msg) : NumericalError(msg) {}
};

// The Gaussian ansatz left its domain of validity (lost positive-definiteness).
struct BreakdownError : NumericalError {
    explicit BreakdownError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace gisinlab
