#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hapnav/feedback.hpp"
#include "hapnav/session.hpp"

namespace hapnav {

inline constexpr int kTrialLogVersion = 1;

/// Six fractional digits, the exact form intensities take in logs and on the wire.
std::string format_intensity(double value);

/// One JSON object per line: a header, then samples, frames and events in that order.
/// The layout is documented in docs/trial_log.md.
void write_trial_log(std::ostream& out, const TrialRecord& record);
std::string trial_log_string(const TrialRecord& record);
void save_trial_log(const TrialRecord& record, const std::filesystem::path& path);

/// Frames are read back from their six-digit form. Throws Error(ParseError),
/// Error(EmptyFile) or Error(SchemaMismatch).
TrialRecord read_trial_log(std::istream& in, const std::string& source_name = "<stream>");
TrialRecord load_trial_log(const std::filesystem::path& path);

struct ReplayReport {
    bool match = false;
    std::size_t frames_compared = 0;
    std::string detail;  ///< first difference, empty on a match
};

/// Feeds the logged samples through a fresh session and compares every frame
/// in its six-digit form, the events, the outcome and the completion time.
ReplayReport replay(const TrialRecord& record);

/// All *.jsonl trial logs under `dir` (non-recursive), sorted by file name.
std::vector<std::filesystem::path> list_trial_logs(const std::filesystem::path& dir);

}  // namespace hapnav
