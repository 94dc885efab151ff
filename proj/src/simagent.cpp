#include "hapnav/simagent.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "hapnav/errors.hpp"

namespace hapnav {

namespace {

constexpr double kReleaseEpsilon = 1e-9;

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a;
}

double heading_of(PlanePoint v) { return std::atan2(v.y, v.x); }

std::uint8_t felt_mask(const VibrationFrame& frame, double threshold) {
    std::uint8_t mask = 0;
    for (MotorId m : kMotors) {
        if (frame[m] > 0.0 && frame[m] >= threshold) {
            mask |= static_cast<std::uint8_t>(1u << index_of(m));
        }
    }
    return mask;
}

std::vector<MotorId> motors_in(std::uint8_t mask) {
    std::vector<MotorId> out;
    for (MotorId m : kMotors) {
        if (mask & (1u << index_of(m))) out.push_back(m);
    }
    return out;
}

}  // namespace

void AgentParams::validate() const {
    const bool ok = speed_cm_s > 0.0 && angular_noise_sd >= 0.0 && reaction_delay_s >= 0.0 &&
                    push_inversion_delay_s >= 0.0 && simultaneous_cue_delay_s >= 0.0 &&
                    confusion_prob >= 0.0 && confusion_prob <= 1.0 &&
                    perception_threshold >= 0.0 && perception_threshold <= 1.0 &&
                    winding_tolerance_rad > 0.0 && horizontal_speed_scale > 0.0 &&
                    vertical_speed_scale > 0.0 && std::isfinite(tilt_rad) &&
                    norm(wrist_offset_cm) > kMinWristHandCm;
    if (!ok) throw Error(ErrorCode::InvalidArgument, "agent parameters out of range");
}

std::optional<PlanePoint> cue_direction(const VibrationFrame& frame, const MotorVectors& mv,
                                        double threshold) {
    const std::uint8_t mask = felt_mask(frame, threshold);
    if (mask == 0) return std::nullopt;
    PlanePoint sum{};
    for (MotorId m : motors_in(mask)) sum += mv[m] * frame[m];
    const double n = norm(sum);
    if (n < 1e-9) return std::nullopt;
    return sum * (1.0 / n);
}

std::optional<PlanePoint> perceive(const VibrationFrame& frame, const AgentParams& params, Rng& rng,
                                   const MotorVectors& mv) {
    const std::uint8_t mask = felt_mask(frame, params.perception_threshold);
    const auto active = motors_in(mask);
    if (active.size() >= 2 && !frame.is_buzz() && rng.bernoulli(params.confusion_prob)) {
        return mv[active[rng.index(active.size())]];
    }
    return cue_direction(frame, mv, params.perception_threshold);
}

PlanePoint AgentState::wrist(const AgentParams& params) const {
    // Clockwise tilt in the camera view is a negative standard rotation.
    return position + rotate(params.wrist_offset_cm, -params.tilt_rad);
}

AgentState initial_agent_state(PlanePoint start) {
    AgentState s;
    s.position = start;
    return s;
}

Perception sense(const AgentState& state, const std::optional<VibrationFrame>& frame,
                 const AgentParams& params, Rng& rng) {
    Perception p;
    if (!frame) return p;
    const MotorVectors mv = motor_vectors(params.tilt_rad);
    p.active_mask = felt_mask(*frame, params.perception_threshold);
    if (p.active_mask == state.episode_mask) {
        if (state.episode_motor) {
            p.locked_motor = state.episode_motor;
            p.direction = mv[*state.episode_motor];
        } else {
            p.direction = cue_direction(*frame, mv, params.perception_threshold);
        }
        return p;
    }
    // New episode: one random reading decides how this cue pattern is understood.
    p.direction = perceive(*frame, params, rng, mv);
    if (std::popcount(p.active_mask) == 2 && p.direction) {
        for (MotorId m : motors_in(p.active_mask)) {
            if (*p.direction == mv[m]) p.locked_motor = m;
        }
    }
    return p;
}

AgentState advance(AgentState state, const Perception& perceived, Metaphor metaphor, double dt,
                   const AgentParams& params, Rng& rng) {
    if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "advance needs dt > 0");

    if (perceived.active_mask != state.episode_mask) {
        state.episode_mask = perceived.active_mask;
        state.episode_motor = perceived.locked_motor;
        double decision = 0.0;
        if (perceived.active_mask != 0 && metaphor == Metaphor::Push) {
            decision += params.push_inversion_delay_s;
        }
        if (std::popcount(perceived.active_mask) >= 2) decision += params.simultaneous_cue_delay_s;
        state.episode_release_t = state.t + params.reaction_delay_s + decision;
    }
    state.pending.push_back(
        {std::max(state.t + params.reaction_delay_s, state.episode_release_t), perceived.direction});

    while (!state.pending.empty() && state.pending.front().release_t <= state.t + kReleaseEpsilon) {
        const std::optional<PlanePoint> next = state.pending.front().direction;
        state.pending.pop_front();
        if (next && state.command) {
            state.winding_rad += wrap_angle(heading_of(*next) - heading_of(*state.command));
        }
        state.command = next;
    }

    if (state.command) {
        const PlanePoint cue = metaphor == Metaphor::Pull ? *state.command : -*state.command;
        const double heading = heading_of(cue) + rng.normal(0.0, params.angular_noise_sd);
        double gain = 1.0;
        if (std::abs(state.winding_rad) > params.winding_tolerance_rad) {
            gain = params.winding_tolerance_rad / std::abs(state.winding_rad);
        }
        const double step = params.speed_cm_s * gain * dt;
        state.position += PlanePoint{std::cos(heading), std::sin(heading)} * step;
    }
    state.t += dt;
    return state;
}

std::uint64_t trial_seed(std::uint64_t seed, const TrialPlan& plan) {
    return mix_seed(mix_seed(seed, static_cast<std::uint64_t>(plan.participant)),
                    static_cast<std::uint64_t>(plan.index));
}

TrialRecord run_trial(const TrialPlan& plan, const CalibrationData& cal, const AgentParams& params,
                      std::uint64_t seed, const EngineConfig& engine) {
    params.validate();
    AgentParams effective = params;
    effective.speed_cm_s *= plan.condition.layout == Layout::Horizontal
                                ? params.horizontal_speed_scale
                                : params.vertical_speed_scale;

    TrialSession session(plan, cal.center, engine);
    Rng rng(trial_seed(seed, plan));
    AgentState agent = initial_agent_state(cal.center);
    const Metaphor metaphor = plan.condition.metaphor;

    for (std::int64_t tick = 0; !session.finished(); ++tick) {
        const double t = static_cast<double>(tick) * engine.tick_s;
        const PoseSample sample{t, agent.position, agent.wrist(effective), true};
        const StepResult result = session.step(sample);
        if (session.finished()) break;
        const Perception felt = sense(agent, result.frame, effective, rng);
        agent = advance(std::move(agent), felt, metaphor, engine.tick_s, effective, rng);
    }
    return session.finalize();
}

std::vector<TrialPlan> batch_plans(int trials, std::uint64_t seed, const CalibrationData& cal) {
    if (trials < 0) throw Error(ErrorCode::InvalidArgument, "trial count must be >= 0");
    std::vector<TrialPlan> plans;
    for (int participant = 1; static_cast<int>(plans.size()) < trials; ++participant) {
        for (const TrialPlan& p : schedule(participant, seed, cal)) {
            if (static_cast<int>(plans.size()) == trials) break;
            plans.push_back(p);
        }
    }
    return plans;
}

std::vector<TrialRecord> run_batch(const std::vector<TrialPlan>& plans, const CalibrationData& cal,
                                   const AgentParams& params, std::uint64_t seed,
                                   const EngineConfig& engine, unsigned threads) {
    params.validate();
    engine.validate();
    std::vector<TrialRecord> out(plans.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(plans.size(), 1)));

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(plans.size());
    auto worker = [&] {
        for (std::size_t i = next++; i < plans.size(); i = next++) {
            try {
                out[i] = run_trial(plans[i], cal, params, seed, engine);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace hapnav
