#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "hapnav/calibration.hpp"
#include "hapnav/condition.hpp"
#include "hapnav/feedback.hpp"
#include "hapnav/geometry.hpp"
#include "hapnav/rng.hpp"
#include "hapnav/session.hpp"

namespace hapnav {

/// Behavioral constants of the simulated hand. The defaults are plausible
/// desk-scale values, not fitted to any participant data.
struct AgentParams {
    double speed_cm_s = 20.0;
    double angular_noise_sd = 0.15;      ///< radians, per tick
    double reaction_delay_s = 0.15;
    double push_inversion_delay_s = 0.20;  ///< extra decision time for a new push cue
    double confusion_prob = 0.25;        ///< chance a two-motor cue is read as one motor
    double perception_threshold = 0.59;
    double simultaneous_cue_delay_s = 0.15;  ///< extra decision time for a new two-motor cue
    double winding_tolerance_rad = 3.14159265358979323846;  ///< heading winding before slowing
    double horizontal_speed_scale = 1.0;
    double vertical_speed_scale = 1.0;
    double tilt_rad = 0.0;  ///< fixed in-plane hand rotation
    PlanePoint wrist_offset_cm{0.0, -10.0};  ///< wrist relative to the palm at zero tilt

    /// Throws Error(InvalidArgument) for non-positive speed, negative delays or
    /// probabilities outside [0, 1].
    void validate() const;
};

/// Stateless reading of one frame, as world-frame vibration direction.
/// One active motor gives its vector; two give the intensity-weighted
/// bisector, or with probability confusion_prob one of the two at random.
/// Nothing above threshold, or a cancelling pattern (the all-on buzz), gives none.
std::optional<PlanePoint> perceive(const VibrationFrame& frame, const AgentParams& params, Rng& rng,
                                   const MotorVectors& mv = motor_vectors(0.0));

/// Deterministic intensity-weighted cue direction; none when nothing is felt.
std::optional<PlanePoint> cue_direction(const VibrationFrame& frame, const MotorVectors& mv,
                                        double threshold);

/// What the hand felt this tick.
struct Perception {
    std::optional<PlanePoint> direction;  ///< vibration direction, before any push inversion
    std::uint8_t active_mask = 0;         ///< motors at or above the perception threshold
    std::optional<MotorId> locked_motor;  ///< a confused reading held for the cue episode
};

struct PendingCue {
    double release_t = 0.0;
    std::optional<PlanePoint> direction;
};

inline constexpr std::uint8_t kNoEpisode = 0xFF;

struct AgentState {
    PlanePoint position{};
    double t = 0.0;
    std::optional<PlanePoint> command;  ///< cue currently acted upon
    std::deque<PendingCue> pending;
    double winding_rad = 0.0;  ///< signed accumulated turning of the command
    std::uint8_t episode_mask = kNoEpisode;
    double episode_release_t = 0.0;
    std::optional<MotorId> episode_motor;

    PlanePoint wrist(const AgentParams& params) const;
};

AgentState initial_agent_state(PlanePoint start);

/// Reads a frame in the context of the current cue episode (a run of ticks with
/// the same active motor set). A confused reading of a two-motor cue is drawn
/// once when the episode begins and held until the set changes. No frame
/// (before the trial arms) reads as nothing.
Perception sense(const AgentState& state, const std::optional<VibrationFrame>& frame,
                 const AgentParams& params, Rng& rng);

/// Queues the perception behind the reaction delay (plus decision time when a
/// new episode starts), acts on every cue whose delay has elapsed, and moves.
/// Pull follows the cue, push moves away from it; heading noise is Gaussian.
/// Speed is scaled down by winding_tolerance / |winding| once the command has
/// turned through more than the tolerance, which breaks orbits around the target.
AgentState advance(AgentState state, const Perception& perceived, Metaphor metaphor, double dt,
                   const AgentParams& params, Rng& rng);

/// Closed-loop trial: the session and the hand alternate at the engine tick.
/// Deterministic in (plan, params, seed).
TrialRecord run_trial(const TrialPlan& plan, const CalibrationData& cal, const AgentParams& params,
                      std::uint64_t seed, const EngineConfig& engine = {});

/// Seed of the trial's private random stream.
std::uint64_t trial_seed(std::uint64_t seed, const TrialPlan& plan);

/// `trials` plans taken in order from the schedules of participants 1, 2, ...
std::vector<TrialPlan> batch_plans(int trials, std::uint64_t seed,
                                   const CalibrationData& cal = CalibrationData::identity());

/// Runs every plan, in parallel when `threads` > 1; output order follows `plans`.
std::vector<TrialRecord> run_batch(const std::vector<TrialPlan>& plans, const CalibrationData& cal,
                                   const AgentParams& params, std::uint64_t seed,
                                   const EngineConfig& engine = {}, unsigned threads = 0);

}  // namespace hapnav
