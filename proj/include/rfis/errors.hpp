#pragma once

#include <stdexcept>
#include <string>

namespace rfis {

enum class ErrorCode {
    NonMonotoneNodes,
    ShapeMismatch,
    NonFiniteHeight,
    ExpansionViolation,
    IndexOutOfRange,
    ScalingOutOfRange,
    OutOfDomain,
    HomogeneityRequired,
    EmptyStartSet,
    UniformSumViolation,
    NotNonnegative,
    NoConvergence,
    LevelMismatch,
    DegenerateRegression,
    HypothesisViolation,
    CycleInPositionRecursion,
    ParseError,
    ValidationError,
    IoError,
    UsageError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Thrown by compute_uniform_sums when a corner sum disagrees with the
// reference sum already established for the same part pair (r, t).
class UniformSumError : public Error {
public:
    UniformSumError(int r, int t, int alpha, int beta, int corner_x, int corner_y,
                    double value, double expected);

    int r, t;                 // 1-based part indices
    int alpha, beta;          // node offsets of the domain rectangle
    int corner_x, corner_y;   // 0 = alpha/beta corner, 1 = alpha+K/beta+K corner
    double value, expected;
};

}  // namespace rfis
