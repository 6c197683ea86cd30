#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbimorse {

enum class ErrorCode {
    MalformedPermutation,
    ClosureExceedsCap,
    UnknownPoint,
    WeightNotOrbitConstant,
    ShapeMismatch,
    NotAComplex,
    CancellationFailure,
    InvarianceFailure,
    GaugeFailure,
    SignNotOrbitConstant,
    IndexMismatch,
    NotOrientable,
    DivisibilityViolation,
    IndexOutOfRange,
    NotRegular,
    NotASubcomplex,
    ActionNotSimplicial,
    ParseError,
    IoError,
    InternalError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace orbimorse
