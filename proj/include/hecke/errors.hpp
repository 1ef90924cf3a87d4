#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

enum class ErrorCode {
    DivisionByZeroJet,
    NoConvergence,
    InconsistentFit,
    UnsupportedConfiguration,
    SingularPeriods,
    PathThroughBranchPoint,
    ThetaZero,
    ConstraintViolated,
    DenZero,
    DegenerateConstraints,
    IllConditionedBasis,
    PoleHit,
    JetOrderTooLow,
    ZeroEll,
    HashMismatch,
    NotFound,
    InvalidInput,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what)
        : std::runtime_error(std::string(to_string(c)) + ": " + what), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace hecke
