#include "avgorder/errors.hpp"

namespace avgorder {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ZeroGenerator: return "ZeroGenerator";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::Unfactorable: return "Unfactorable";
    case ErrorKind::TrivialGroup: return "TrivialGroup";
    case ErrorKind::SupportTooLarge: return "SupportTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSquareFree: return "NotSquareFree";
    case ErrorKind::NotDivisor: return "NotDivisor";
    case ErrorKind::NonIntegralDegree: return "NonIntegralDegree";
    case ErrorKind::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SegmentTooLarge: return "SegmentTooLarge";
    case ErrorKind::LimitTooLarge: return "LimitTooLarge";
    case ErrorKind::ZeroResidue: return "ZeroResidue";
    case ErrorKind::NotPrimeGenerators: return "NotPrimeGenerators";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::ZeroGenerator:
    case ErrorKind::NonPositive:
    case ErrorKind::Unfactorable:
    case ErrorKind::TrivialGroup:
    case ErrorKind::SupportTooLarge:
    case ErrorKind::LimitTooLarge:
    case ErrorKind::NotPrimeGenerators:
    case ErrorKind::InvalidArgument:
        return true;
    default:
        return false;
    }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

} // namespace avgorder
