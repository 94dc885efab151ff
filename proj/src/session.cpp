#include "hapnav/session.hpp"

#include <algorithm>
#include <cmath>

#include "hapnav/errors.hpp"
#include "hapnav/rng.hpp"

namespace hapnav {

namespace {
// Absorbs accumulated rounding in tick timestamps (30 * (1/30) != 1 exactly).
constexpr double kTimeEpsilon = 1e-9;
}  // namespace

void EngineConfig::validate() const {
    law.validate();
    if (!(attain_radius_cm > 0.0) || !(arm_radius_cm > 0.0) || !(buzz_s >= 0.0) ||
        !(tick_s > 0.0) || !(timeout_s > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "engine constants out of range");
    }
}

std::string_view to_string(EventKind k) noexcept {
    switch (k) {
        case EventKind::TrialStart: return "trial_start";
        case EventKind::TargetReached: return "target_reached";
        case EventKind::BuzzStart: return "buzz_start";
        case EventKind::BuzzEnd: return "buzz_end";
        case EventKind::Timeout: return "timeout";
        case EventKind::Dropout: return "dropout";
        case EventKind::Aborted: return "aborted";
    }
    return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
    for (EventKind k : {EventKind::TrialStart, EventKind::TargetReached, EventKind::BuzzStart,
                        EventKind::BuzzEnd, EventKind::Timeout, EventKind::Dropout,
                        EventKind::Aborted}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

std::string_view to_string(Outcome o) noexcept {
    switch (o) {
        case Outcome::Reached: return "reached";
        case Outcome::Timeout: return "timeout";
        case Outcome::Aborted: return "aborted";
    }
    return "?";
}

std::optional<Outcome> parse_outcome(std::string_view s) {
    for (Outcome o : {Outcome::Reached, Outcome::Timeout, Outcome::Aborted}) {
        if (s == to_string(o)) return o;
    }
    return std::nullopt;
}

std::optional<double> TrialRecord::event_time(EventKind kind) const {
    for (const SessionEvent& e : events) {
        if (e.kind == kind) return e.t;
    }
    return std::nullopt;
}

std::vector<TrialPlan> schedule(int participant_index, std::uint64_t seed,
                                const CalibrationData& cal) {
    if (participant_index < 1) {
        throw Error(ErrorCode::InvalidArgument, "participant index must be >= 1");
    }
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(participant_index)));
    const bool horizontal_first = participant_index % 2 == 1;
    const Layout blocks[2] = {horizontal_first ? Layout::Horizontal : Layout::Vertical,
                              horizontal_first ? Layout::Vertical : Layout::Horizontal};

    std::vector<TrialPlan> plans;
    plans.reserve(kTrialsPerParticipant);
    std::optional<double> prev_angle;
    for (Layout layout : blocks) {
        std::vector<Condition> block;
        for (int rep = 0; rep < kRepetitions; ++rep) {
            for (const Condition& c : strategy_combos(layout)) block.push_back(c);
        }
        for (std::size_t i = block.size() - 1; i > 0; --i) {
            std::swap(block[i], block[rng.index(i + 1)]);
        }
        int seen[8] = {};
        for (const Condition& c : block) {
            TrialPlan plan;
            plan.participant = participant_index;
            plan.index = static_cast<int>(plans.size()) + 1;
            plan.condition = c;
            plan.repetition = ++seen[strategy_index(c)];
            const double angle = next_target_angle(prev_angle, rng);
            prev_angle = angle;
            plan.target = place_target(angle, cal);
            plans.push_back(plan);
        }
    }
    return plans;
}

TrialSession::TrialSession(TrialPlan plan, PlanePoint center, EngineConfig engine)
    : plan_(std::move(plan)), center_(center), engine_(engine) {
    engine_.validate();
}

std::vector<SessionEvent> TrialSession::emit(EventKind kind, double t) {
    events_.push_back({kind, t});
    return {{kind, t}};
}

VibrationFrame TrialSession::guidance_frame(PlanePoint hand, std::optional<PlanePoint> wrist,
                                            double t) {
    if (wrist && distance(*wrist, hand) > kMinWristHandCm) {
        last_gamma_ = hand_rotation(*wrist, hand);
    }
    return compute_frame_rotated(hand, last_gamma_, plan_.target.position, center_,
                                 plan_.condition, engine_.law, t);
}

StepResult TrialSession::step(const PoseSample& sample) {
    if (phase_ == Phase::Done) {
        throw Error(ErrorCode::TrialNotActive, "trial already finished");
    }
    if (last_t_ && sample.t < *last_t_) {
        throw Error(ErrorCode::InvalidArgument, "sample timestamps must be nondecreasing");
    }
    if (!std::isfinite(sample.t)) {
        throw Error(ErrorCode::InvalidArgument, "non-finite sample timestamp");
    }
    last_t_ = sample.t;
    if (!first_t_) first_t_ = sample.t;
    samples_.push_back(sample);

    const bool usable = sample.valid && is_valid(sample.hand);
    const double t = sample.t;
    StepResult out;
    auto append = [&out](std::vector<SessionEvent> evs) {
        out.events.insert(out.events.end(), evs.begin(), evs.end());
    };

    if (phase_ == Phase::Buzzing) {
        if (t - *buzz_start_t_ >= engine_.buzz_s - kTimeEpsilon) {
            append(emit(EventKind::BuzzEnd, t));
            phase_ = Phase::Done;
            outcome_ = Outcome::Reached;
            out.frame = silent_frame(t);
        } else {
            out.frame = buzz_frame(t);
        }
        frames_.push_back(*out.frame);
        return out;
    }

    const double since = t - (start_t_ ? *start_t_ : *first_t_);
    if (since >= engine_.timeout_s - kTimeEpsilon) {
        append(emit(EventKind::Timeout, t));
        phase_ = Phase::Done;
        outcome_ = Outcome::Timeout;
        return out;
    }

    if (phase_ == Phase::Waiting) {
        if (!usable || distance(sample.hand, center_) > engine_.arm_radius_cm) return out;
        append(emit(EventKind::TrialStart, t));
        start_t_ = t;
        phase_ = Phase::Guiding;
    }

    // Guiding.
    std::optional<PlanePoint> wrist;
    if (usable) {
        last_hand_ = sample.hand;
        if (is_valid(sample.wrist)) wrist = sample.wrist;
    } else {
        append(emit(EventKind::Dropout, t));
    }
    const PlanePoint hand = *last_hand_;

    if (distance(hand, plan_.target.position) <= engine_.attain_radius_cm) {
        append(emit(EventKind::TargetReached, t));
        append(emit(EventKind::BuzzStart, t));
        reached_t_ = t;
        buzz_start_t_ = t;
        phase_ = Phase::Buzzing;
        out.frame = buzz_frame(t);
    } else {
        out.frame = guidance_frame(hand, wrist, t);
    }
    frames_.push_back(*out.frame);
    return out;
}

std::vector<SessionEvent> TrialSession::abort(double t) {
    if (phase_ == Phase::Done) return {};
    phase_ = Phase::Done;
    if (reached_t_) {
        // Target already reached; only the buzz is cut short.
        outcome_ = Outcome::Reached;
        return emit(EventKind::BuzzEnd, t);
    }
    outcome_ = Outcome::Aborted;
    return emit(EventKind::Aborted, t);
}

TrialRecord TrialSession::finalize() const {
    if (phase_ != Phase::Done) {
        throw Error(ErrorCode::TrialNotActive, "trial has not reached a terminal phase");
    }
    TrialRecord rec;
    rec.plan = plan_;
    rec.center = center_;
    rec.engine = engine_;
    rec.samples = samples_;
    rec.frames = frames_;
    rec.events = events_;
    rec.outcome = outcome_;
    if (outcome_ == Outcome::Reached) rec.completion_time = *reached_t_ - *start_t_;
    return rec;
}

}  // namespace hapnav
