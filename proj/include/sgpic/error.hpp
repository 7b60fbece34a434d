#pragma once

#include <stdexcept>
#include <string>

namespace sgpic {

/// Invalid run description or construction parameters (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// API misuse: index out of range, size mismatch.
struct UsageError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Pipeline ordering violated (e.g. deposition before boundary conditions).
struct LogicError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Numerical failure during a run (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SamplingError : NumericalError {
    using NumericalError::NumericalError;
};

struct FittingError : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace sgpic
