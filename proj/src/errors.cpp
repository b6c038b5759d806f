#include "rfis/errors.hpp"

#include <sstream>

namespace rfis {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonMonotoneNodes: return "NonMonotoneNodes";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NonFiniteHeight: return "NonFiniteHeight";
        case ErrorCode::ExpansionViolation: return "ExpansionViolation";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::ScalingOutOfRange: return "ScalingOutOfRange";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::HomogeneityRequired: return "HomogeneityRequired";
        case ErrorCode::EmptyStartSet: return "EmptyStartSet";
        case ErrorCode::UniformSumViolation: return "UniformSumViolation";
        case ErrorCode::NotNonnegative: return "NotNonnegative";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::LevelMismatch: return "LevelMismatch";
        case ErrorCode::DegenerateRegression: return "DegenerateRegression";
        case ErrorCode::HypothesisViolation: return "HypothesisViolation";
        case ErrorCode::CycleInPositionRecursion: return "CycleInPositionRecursion";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "UnknownError";
}

namespace {

std::string uniform_sum_message(int r, int t, int alpha, int beta, int corner_x,
                                int corner_y, double value, double expected) {
    std::ostringstream os;
    os.precision(17);
    os << "uniform sum violation at (r,t)=(" << r << "," << t << "), domain (alpha,beta)=("
       << alpha << "," << beta << "), corner (" << corner_x << "," << corner_y
       << "): sum " << value << " != " << expected;
    return os.str();
}

}  // namespace

UniformSumError::UniformSumError(int r_, int t_, int alpha_, int beta_, int corner_x_,
                                 int corner_y_, double value_, double expected_)
    : Error(ErrorCode::UniformSumViolation,
            uniform_sum_message(r_, t_, alpha_, beta_, corner_x_, corner_y_, value_, expected_)),
      r(r_), t(t_), alpha(alpha_), beta(beta_), corner_x(corner_x_), corner_y(corner_y_),
      value(value_), expected(expected_) {}

}  // namespace rfis
