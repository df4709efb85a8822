#include "oddcover/error.hpp"

namespace oddcover
{

std::string_view to_string(ErrorCode code)
{
    switch (code) {
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::InvalidPermutation: return "InvalidPermutation";
        case ErrorCode::EmptyGeneratorList: return "EmptyGeneratorList";
        case ErrorCode::OddInput: return "OddInput";
        case ErrorCode::NotASquare: return "NotASquare";
        case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
        case ErrorCode::InvalidProfile: return "InvalidProfile";
        case ErrorCode::InvalidTuple: return "InvalidTuple";
        case ErrorCode::TransitivityNotFound: return "TransitivityNotFound";
        case ErrorCode::NotTransitive: return "NotTransitive";
        case ErrorCode::NotOddProfile: return "NotOddProfile";
        case ErrorCode::ConditionsFailed: return "ConditionsFailed";
        case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorCode::ResumeCursorMismatch: return "ResumeCursorMismatch";
        case ErrorCode::InvalidShard: return "InvalidShard";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DegenerateLattice: return "DegenerateLattice";
        case ErrorCode::ResidueSumNonzero: return "ResidueSumNonzero";
        case ErrorCode::PathTooCloseToPole: return "PathTooCloseToPole";
        case ErrorCode::SolveFailed: return "SolveFailed";
        case ErrorCode::CertificateFailed: return "CertificateFailed";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace oddcover
