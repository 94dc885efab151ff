#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hapnav {

enum class ErrorCode {
    DegeneratePose,
    DegenerateTarget,
    NotUnit,
    NegativeDistance,
    OutOfRange,
    TooFewSamples,
    DegenerateRig,
    OutOfRangeAngle,
    TrialNotActive,
    ZeroLengthPath,
    SchemaMismatch,
    EmptyFile,
    EmptyGroup,
    InvalidArgument,
    IoError,
    ParseError,
    BindFailure,
    ProtocolViolation,
};

/// Stable snake_case identifier, used in CLI exit lines and wire error messages.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hapnav
