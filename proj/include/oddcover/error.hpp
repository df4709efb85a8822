#ifndef ODDCOVER_ERROR_HPP
#define ODDCOVER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace oddcover
{

enum class ErrorCode
{
    DegreeMismatch,
    InvalidPermutation,
    EmptyGeneratorList,
    OddInput,
    NotASquare,
    DegreeTooSmall,
    InvalidProfile,
    InvalidTuple,
    TransitivityNotFound,
    NotTransitive,
    NotOddProfile,
    ConditionsFailed,
    SearchSpaceTooLarge,
    ResumeCursorMismatch,
    InvalidShard,
    DimensionMismatch,
    DegenerateLattice,
    ResidueSumNonzero,
    PathTooCloseToPole,
    SolveFailed,
    CertificateFailed,
    ParseError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace oddcover

#endif
