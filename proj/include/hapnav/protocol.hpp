#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hapnav/calibration.hpp"
#include "hapnav/feedback.hpp"
#include "hapnav/session.hpp"
#include "hapnav/simagent.hpp"

namespace hapnav {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::string_view kEngineVersion = "hapnav 1.0.0";
inline constexpr std::size_t kMaxLineBytes = 64 * 1024;

/// Shared, read-only settings of a running gateway.
struct GatewayConfig {
    CalibrationData calibration = CalibrationData::identity();
    EngineConfig engine{};
    AgentParams agent{};
    std::uint64_t seed = 0;
};

/// One-line wire encodings. Intensities travel as six-digit decimal strings.
std::string encode_frame(const VibrationFrame& frame);
std::string encode_event(const SessionEvent& event);
std::string encode_error(std::string_view code, std::string_view message);
/// Inverse of encode_frame. Throws Error(ParseError).
VibrationFrame decode_frame(std::string_view line);

struct HandlerOutput {
    std::vector<std::string> lines;  ///< each without the trailing newline
    bool close = false;
};

/// Per-connection protocol state machine, independent of any transport:
/// hello, configure, then pose* until the trial ends, then configure again.
///
/// Errors that leave the trial intact (bad JSON, unknown type, pose before
/// configure, invalid values) answer with an error and keep the connection.
/// A second hello, a configure during an active trial, or a bad version on
/// hello answer with an error and close.
class ProtocolHandler {
public:
    using TrialSink = std::function<void(const TrialRecord&)>;

    explicit ProtocolHandler(std::shared_ptr<const GatewayConfig> config, TrialSink on_trial_end = {});
    ~ProtocolHandler();
    ProtocolHandler(ProtocolHandler&&) noexcept;
    ProtocolHandler& operator=(ProtocolHandler&&) noexcept;

    HandlerOutput handle_line(std::string_view line);
    /// A line longer than kMaxLineBytes: framing is lost, so the connection closes.
    HandlerOutput oversize_line();
    /// Transport went away; an active trial is finalized as aborted at the last pose time.
    void disconnect();

    bool trial_active() const;
    int trials_completed() const;

private:
    struct State;
    std::unique_ptr<State> state_;
};

}  // namespace hapnav
