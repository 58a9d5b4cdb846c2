#pragma once

#include <optional>
#include <string>

#include "avgorder/errors.hpp"
#include "avgorder/high_precision.hpp"

namespace avgorder::test {

// Kind of the avgorder::Error thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<ErrorKind> thrown_kind(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

inline double to_double(const HighPrecisionReal& x)
{
    return x.convert_to<double>();
}

} // namespace avgorder::test
