#include "hecke/errors.hpp"

namespace hecke {

const char* to_string(ErrorCode c)
{
    switch (c) {
    case ErrorCode::DivisionByZeroJet: return "DivisionByZeroJet";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InconsistentFit: return "InconsistentFit";
    case ErrorCode::UnsupportedConfiguration: return "UnsupportedConfiguration";
    case ErrorCode::SingularPeriods: return "SingularPeriods";
    case ErrorCode::PathThroughBranchPoint: return "PathThroughBranchPoint";
    case ErrorCode::ThetaZero: return "ThetaZero";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::DenZero: return "DenZero";
    case ErrorCode::DegenerateConstraints: return "DegenerateConstraints";
    case ErrorCode::IllConditionedBasis: return "IllConditionedBasis";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::JetOrderTooLow: return "JetOrderTooLow";
    case ErrorCode::ZeroEll: return "ZeroEll";
    case ErrorCode::HashMismatch: return "HashMismatch";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

} // namespace hecke
