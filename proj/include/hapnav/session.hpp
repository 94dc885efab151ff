#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hapnav/calibration.hpp"
#include "hapnav/condition.hpp"
#include "hapnav/feedback.hpp"
#include "hapnav/geometry.hpp"

namespace hapnav {

/// Engine constants shared by the session, the simulator and the gateway.
struct EngineConfig {
    IntensityLaw law{};
    double attain_radius_cm = kAttainRadiusCm;
    double arm_radius_cm = kAttainRadiusCm;  ///< hand must be this close to the board center to start
    double buzz_s = 1.0;
    double tick_s = 1.0 / 30.0;
    double timeout_s = 120.0;

    void validate() const;
};

struct PoseSample {
    double t = 0.0;  ///< seconds
    PlanePoint hand{};
    PlanePoint wrist{};
    bool valid = true;

    bool operator==(const PoseSample&) const = default;
};

inline constexpr int kTrialsPerParticipant = 48;
inline constexpr int kRepetitions = 3;

struct TrialPlan {
    int participant = 1;
    int index = 1;  ///< 1..48 within the participant's session
    Condition condition{};
    TargetSpec target{};
    int repetition = 1;  ///< 1..3 within the layout block
};

enum class EventKind : std::uint8_t { TrialStart, TargetReached, BuzzStart, BuzzEnd, Timeout, Dropout, Aborted };

std::string_view to_string(EventKind k) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view s);

struct SessionEvent {
    EventKind kind = EventKind::TrialStart;
    double t = 0.0;

    bool operator==(const SessionEvent&) const = default;
};

enum class Outcome : std::uint8_t { Reached, Timeout, Aborted };

std::string_view to_string(Outcome o) noexcept;
std::optional<Outcome> parse_outcome(std::string_view s);

/// Where an ingested record came from.
struct Provenance {
    std::string file;
    int first_line = 0;
    int last_line = 0;
};

struct TrialRecord {
    TrialPlan plan{};
    PlanePoint center{};
    EngineConfig engine{};
    std::vector<PoseSample> samples;
    std::vector<VibrationFrame> frames;
    std::vector<SessionEvent> events;
    Outcome outcome = Outcome::Aborted;
    std::optional<double> completion_time;
    std::optional<Provenance> provenance;

    std::optional<double> event_time(EventKind kind) const;
};

/// Counterbalanced 48-trial plan: odd participants start horizontal. Each layout
/// block holds the 8 strategy combos three times in seeded random order; target
/// angles are chained so consecutive targets differ by at least 60 degrees.
std::vector<TrialPlan> schedule(int participant_index, std::uint64_t seed,
                                const CalibrationData& cal = CalibrationData::identity());

struct StepResult {
    std::optional<VibrationFrame> frame;
    std::vector<SessionEvent> events;
};

/// Single-trial state machine driven at the tracker rate.
///
/// The trial arms on the first valid sample within arm_radius of the board
/// center; no feedback is produced before that. Once the hand is within the
/// attainment radius the session emits all-on buzz frames for buzz_s, then a
/// silent frame with buzz_end. Dropped samples reuse the last valid pose.
class TrialSession {
public:
    enum class Phase : std::uint8_t { Waiting, Guiding, Buzzing, Done };

    TrialSession(TrialPlan plan, PlanePoint center, EngineConfig engine = {});

    /// Throws Error(TrialNotActive) once the trial is done and
    /// Error(InvalidArgument) when time runs backwards.
    StepResult step(const PoseSample& sample);

    /// Ends an unfinished trial as aborted. A trial already in its buzz phase
    /// keeps outcome reached. No-op when already done.
    std::vector<SessionEvent> abort(double t);

    Phase phase() const { return phase_; }
    bool finished() const { return phase_ == Phase::Done; }
    const TrialPlan& plan() const { return plan_; }
    const EngineConfig& engine() const { return engine_; }
    PlanePoint center() const { return center_; }

    /// Snapshot of the trial. Throws Error(TrialNotActive) while still running.
    TrialRecord finalize() const;

private:
    std::vector<SessionEvent> emit(EventKind kind, double t);
    VibrationFrame guidance_frame(PlanePoint hand, std::optional<PlanePoint> wrist, double t);

    TrialPlan plan_;
    PlanePoint center_;
    EngineConfig engine_;
    Phase phase_ = Phase::Waiting;

    std::optional<double> first_t_;
    std::optional<double> last_t_;
    std::optional<double> start_t_;
    std::optional<double> reached_t_;
    std::optional<double> buzz_start_t_;
    std::optional<PlanePoint> last_hand_;
    double last_gamma_ = 0.0;
    Outcome outcome_ = Outcome::Aborted;

    std::vector<PoseSample> samples_;
    std::vector<VibrationFrame> frames_;
    std::vector<SessionEvent> events_;
};

}  // namespace hapnav
