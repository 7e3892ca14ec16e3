#pragma once

#include <stdexcept>
#include <string>

namespace maxproc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad or out-of-contract arguments (exit code 2 in the CLI).
struct InvalidParams : Error {
    using Error::Error;
};

// Series evaluation hit max_terms without meeting the stop rule.
struct NonConvergence : Error {
    using Error::Error;
};

// Root bracketing found no sign change on the search interval.
struct BracketFailure : Error {
    using Error::Error;
};

// Laplace-transform argument beyond the analytic continuation region.
struct PoleRegion : Error {
    using Error::Error;
};

// Grid operands with incompatible steps.
struct GridMismatch : Error {
    using Error::Error;
};

// Convolution of two grids that both carry an r^{-1/2} part.
struct DoubleSingularity : Error {
    using Error::Error;
};

// Grid or time step too coarse for the requested parameters.
struct ResolutionTooCoarse : Error {
    using Error::Error;
};

// Leading kernel moment of the marching scheme degenerated.
struct SingularStep : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of the formula.
struct DomainError : Error {
    using Error::Error;
};

// An estimator was given too few samples.
struct InsufficientData : Error {
    using Error::Error;
};

}  // namespace maxproc
