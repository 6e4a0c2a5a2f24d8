#pragma once

#include <stdexcept>
#include <string>

namespace ifslab {

/// Failure categories shared by every module. The numeric values are part of
/// the C API (see ifslab.h) and must not be reordered.
enum class ErrorCode : int {
    InvalidAlphabet = 1,
    Index = 2,
    Domain = 3,
    MalformedInterval = 4,
    Empty = 5,
    Parameter = 6,
    Overflow = 7,
    Precondition = 8,
    Structure = 9,
    Convergence = 10,
    Degeneracy = 11,
    Unsupported = 12,
    Shape = 13,
    Usage = 14,
    Budget = 15,
    DegenerateOutput = 16,
    Construction = 17,
    Io = 18,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace ifslab
