#include "hapnav/errors.hpp"

namespace hapnav {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DegeneratePose: return "degenerate_pose";
        case ErrorCode::DegenerateTarget: return "degenerate_target";
        case ErrorCode::NotUnit: return "not_unit";
        case ErrorCode::NegativeDistance: return "negative_distance";
        case ErrorCode::OutOfRange: return "out_of_range";
        case ErrorCode::TooFewSamples: return "too_few_samples";
        case ErrorCode::DegenerateRig: return "degenerate_rig";
        case ErrorCode::OutOfRangeAngle: return "out_of_range_angle";
        case ErrorCode::TrialNotActive: return "trial_not_active";
        case ErrorCode::ZeroLengthPath: return "zero_length_path";
        case ErrorCode::SchemaMismatch: return "schema_mismatch";
        case ErrorCode::EmptyFile: return "empty_file";
        case ErrorCode::EmptyGroup: return "empty_group";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::IoError: return "io_error";
        case ErrorCode::ParseError: return "parse_error";
        case ErrorCode::BindFailure: return "bind_failure";
        case ErrorCode::ProtocolViolation: return "protocol_violation";
    }
    return "unknown";
}

}  // namespace hapnav
