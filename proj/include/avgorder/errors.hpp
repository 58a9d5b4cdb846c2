#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace avgorder {

enum class ErrorKind {
    ParseError,
    ZeroGenerator,
    NonPositive,
    Unfactorable,
    TrivialGroup,
    SupportTooLarge,
    DimensionMismatch,
    NotSquareFree,
    NotDivisor,
    NonIntegralDegree,
    PrecisionUnreachable,
    DomainError,
    SegmentTooLarge,
    LimitTooLarge,
    ZeroResidue,
    NotPrimeGenerators,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// True for errors caused by bad user input (as opposed to a failed computation).
bool is_input_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace avgorder
