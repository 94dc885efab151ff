#include "hapnav/protocol.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "hapnav/config.hpp"
#include "hapnav/errors.hpp"
#include "hapnav/rng.hpp"
#include "hapnav/trial_log.hpp"

namespace hapnav {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

enum class Mode { ExternalPose, Simulated };

ordered_json ordered(const json& j) { return ordered_json::parse(j.dump()); }

ordered_json message(std::string_view type) {
    ordered_json j;
    j["type"] = type;
    j["v"] = kProtocolVersion;
    return j;
}

std::string_view phase_name(TrialSession::Phase p) {
    switch (p) {
        case TrialSession::Phase::Waiting: return "waiting";
        case TrialSession::Phase::Guiding: return "guiding";
        case TrialSession::Phase::Buzzing: return "buzzing";
        case TrialSession::Phase::Done: return "done";
    }
    return "?";
}

double number_field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number()) {
        throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' must be a number");
    }
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' is not finite");
    return v;
}

PlanePoint point_field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_array() || it->size() != 2 || !(*it)[0].is_number() ||
        !(*it)[1].is_number()) {
        throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' must be [x, y]");
    }
    return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

int int_field(const json& j, const char* key, int fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer()) {
        throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' must be an integer");
    }
    return it->get<int>();
}

}  // namespace

std::string encode_frame(const VibrationFrame& frame) {
    ordered_json j = message("frame");
    j["t"] = frame.t;
    ordered_json values = ordered_json::array();
    for (double v : frame.intensity) values.push_back(format_intensity(v));
    j["i"] = std::move(values);
    j["buzz"] = frame.is_buzz();
    return j.dump();
}

std::string encode_event(const SessionEvent& event) {
    ordered_json j = message("event");
    j["kind"] = to_string(event.kind);
    j["t"] = event.t;
    return j.dump();
}

std::string encode_error(std::string_view code, std::string_view text) {
    ordered_json j = message("error");
    j["code"] = code;
    j["message"] = text;
    return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

VibrationFrame decode_frame(std::string_view line) {
    try {
        const json j = json::parse(line);
        if (j.at("type") != "frame") throw Error(ErrorCode::ParseError, "not a frame message");
        VibrationFrame f;
        f.t = j.at("t").get<double>();
        const json& values = j.at("i");
        if (!values.is_array() || values.size() != 4) throw Error(ErrorCode::ParseError, "frame needs 4 intensities");
        for (std::size_t k = 0; k < 4; ++k) {
            const std::string s = values[k].get<std::string>();
            std::size_t used = 0;
            f.intensity[k] = std::stod(s, &used);
            if (used != s.size()) throw Error(ErrorCode::ParseError, "bad intensity " + s);
        }
        return f;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad frame message: ") + e.what());
    }
}

struct ProtocolHandler::State {
    std::shared_ptr<const GatewayConfig> config;
    TrialSink sink;
    bool greeted = false;
    std::optional<TrialSession> session;
    Mode mode = Mode::ExternalPose;
    TrialSession::Phase last_phase = TrialSession::Phase::Waiting;
    std::optional<double> last_t;
    std::optional<double> last_target_deg;
    std::uint64_t configures = 0;
    int completed = 0;

    bool active() const { return session && !session->finished(); }

    void error(HandlerOutput& out, ErrorCode code, std::string_view text, bool close = false) {
        out.lines.push_back(encode_error(to_string(code), text));
        out.close = out.close || close;
    }

    ordered_json trial_state() const {
        ordered_json j = message("trial_state");
        j["state"] = phase_name(session->phase());
        const TrialPlan& plan = session->plan();
        j["participant"] = plan.participant;
        j["index"] = plan.index;
        j["repetition"] = plan.repetition;
        j["condition"] = ordered(condition_to_json(plan.condition));
        j["mode"] = mode == Mode::Simulated ? "simulated" : "external_pose";
        return j;
    }

    void finish(HandlerOutput* out) {
        const TrialRecord record = session->finalize();
        ++completed;
        if (sink) sink(record);
        if (!out) return;
        // The target is revealed only once the trial is over.
        ordered_json j = trial_state();
        j["outcome"] = to_string(record.outcome);
        if (record.completion_time) j["completion_time"] = *record.completion_time;
        j["target"] = {{"nominal_deg", record.plan.target.nominal_deg},
                       {"position", {record.plan.target.position.x, record.plan.target.position.y}}};
        out->lines.push_back(j.dump());
    }

    void process(const PoseSample& sample, HandlerOutput& out) {
        const StepResult r = session->step(sample);
        last_t = sample.t;
        if (r.frame) out.lines.push_back(encode_frame(*r.frame));
        for (const SessionEvent& e : r.events) out.lines.push_back(encode_event(e));
        const auto phase = session->phase();
        if (phase == TrialSession::Phase::Done) {
            finish(&out);
        } else if (phase != last_phase) {
            out.lines.push_back(trial_state().dump());
        }
        last_phase = phase;
    }

    void on_hello(const json&, HandlerOutput& out) {
        if (greeted) {
            error(out, ErrorCode::ProtocolViolation, "duplicate hello", true);
            abort_active(nullptr);
            return;
        }
        greeted = true;
        ordered_json j = message("hello");
        j["engine"] = kEngineVersion;
        j["protocol"] = kProtocolVersion;
        ordered_json conditions = ordered_json::array();
        for (Layout layout : {Layout::Horizontal, Layout::Vertical}) {
            for (const Condition& c : strategy_combos(layout)) conditions.push_back(ordered(condition_to_json(c)));
        }
        j["conditions"] = std::move(conditions);
        j["modes"] = {"external_pose", "simulated"};
        j["engine_config"] = ordered(engine_to_json(config->engine));
        out.lines.push_back(j.dump());
    }

    void on_configure(const json& j, HandlerOutput& out) {
        if (!greeted) return error(out, ErrorCode::ProtocolViolation, "hello required before configure");
        if (active()) {
            error(out, ErrorCode::ProtocolViolation, "configure during an active trial", true);
            abort_active(nullptr);
            return;
        }
        Mode m = Mode::ExternalPose;
        if (const auto it = j.find("mode"); it != j.end()) {
            if (*it == "simulated") m = Mode::Simulated;
            else if (*it != "external_pose") throw Error(ErrorCode::InvalidArgument, "unknown mode");
        }
        std::uint64_t seed = config->seed;
        if (const auto it = j.find("seed"); it != j.end()) {
            if (!it->is_number_unsigned()) throw Error(ErrorCode::InvalidArgument, "'seed' must be a non-negative integer");
            seed = it->get<std::uint64_t>();
        }
        const int participant = int_field(j, "participant", 1);
        if (participant < 1) throw Error(ErrorCode::InvalidArgument, "'participant' must be >= 1");

        TrialPlan plan;
        if (j.contains("trial")) {
            const int trial = int_field(j, "trial", 1);
            if (trial < 1 || trial > kTrialsPerParticipant) {
                throw Error(ErrorCode::InvalidArgument, "'trial' must be in 1..48");
            }
            if (j.contains("condition")) {
                throw Error(ErrorCode::InvalidArgument, "'trial' and 'condition' are exclusive");
            }
            plan = schedule(participant, seed, config->calibration).at(trial - 1);
        } else {
            if (!j.contains("condition")) throw Error(ErrorCode::InvalidArgument, "'condition' or 'trial' required");
            plan.participant = participant;
            plan.index = completed + 1;
            plan.condition = condition_from_json(j.at("condition"));
            double deg = 0.0;
            if (j.contains("target_deg")) {
                deg = number_field(j, "target_deg");
            } else {
                Rng rng(mix_seed(seed, ++configures));
                deg = next_target_angle(last_target_deg, rng);
            }
            plan.target = place_target(deg, config->calibration);
        }
        plan.target.attain_radius_cm = config->engine.attain_radius_cm;

        session.emplace(plan, config->calibration.center, config->engine);
        mode = m;
        last_phase = session->phase();
        last_t.reset();
        last_target_deg = plan.target.nominal_deg;
        out.lines.push_back(trial_state().dump());

        if (mode == Mode::Simulated) {
            const TrialRecord sim =
                run_trial(plan, config->calibration, config->agent, seed, config->engine);
            for (const PoseSample& s : sim.samples) {
                if (!active()) break;
                process(s, out);
            }
        }
    }

    void on_pose(const json& j, HandlerOutput& out) {
        if (!active()) return error(out, ErrorCode::ProtocolViolation, "not configured");
        if (mode == Mode::Simulated) return error(out, ErrorCode::ProtocolViolation, "session is simulated");
        PoseSample s;
        s.t = number_field(j, "t");
        if (const auto it = j.find("valid"); it != j.end()) {
            if (!it->is_boolean()) throw Error(ErrorCode::InvalidArgument, "'valid' must be a boolean");
            s.valid = it->get<bool>();
        }
        if (s.valid || j.contains("hand")) s.hand = point_field(j, "hand");
        // Pointer trackers have no wrist: a wrist straight below the hand means zero rotation.
        s.wrist = j.contains("wrist") ? point_field(j, "wrist") : s.hand + PlanePoint{0.0, -10.0};
        if (s.valid && (!is_valid(s.hand) || !is_valid(s.wrist))) {
            throw Error(ErrorCode::InvalidArgument, "pose outside the plane bounds");
        }
        process(s, out);
    }

    void abort_active(HandlerOutput* out, std::optional<double> t = std::nullopt) {
        if (!active()) return;
        const double when = t.value_or(last_t.value_or(0.0));
        const auto events = session->abort(std::max(when, last_t.value_or(when)));
        if (out) {
            for (const SessionEvent& e : events) out->lines.push_back(encode_event(e));
        }
        finish(out);
    }

    void on_abort(const json& j, HandlerOutput& out) {
        if (!active()) return error(out, ErrorCode::TrialNotActive, "no active trial");
        std::optional<double> t;
        if (j.contains("t")) t = number_field(j, "t");
        abort_active(&out, t);
    }
};

ProtocolHandler::ProtocolHandler(std::shared_ptr<const GatewayConfig> config, TrialSink on_trial_end)
    : state_(std::make_unique<State>()) {
    if (!config) throw Error(ErrorCode::InvalidArgument, "gateway config required");
    state_->config = std::move(config);
    state_->sink = std::move(on_trial_end);
}

ProtocolHandler::~ProtocolHandler() = default;
ProtocolHandler::ProtocolHandler(ProtocolHandler&&) noexcept = default;
ProtocolHandler& ProtocolHandler::operator=(ProtocolHandler&&) noexcept = default;

HandlerOutput ProtocolHandler::handle_line(std::string_view line) {
    HandlerOutput out;
    State& s = *state_;
    if (line.size() > kMaxLineBytes) return oversize_line();
    json j = json::parse(line.begin(), line.end(), nullptr, false);
    if (j.is_discarded()) {
        s.error(out, ErrorCode::ParseError, "malformed JSON");
        return out;
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        s.error(out, ErrorCode::ProtocolViolation, "message must be an object with a string 'type'");
        return out;
    }
    const std::string type = j["type"].get<std::string>();
    const auto v = j.find("v");
    const bool version_ok = v != j.end() && v->is_number_integer() && *v == kProtocolVersion;
    if (!version_ok) {
        s.error(out, ErrorCode::ProtocolViolation, "unsupported protocol version", type == "hello");
        return out;
    }
    try {
        if (type == "hello") s.on_hello(j, out);
        else if (type == "configure") s.on_configure(j, out);
        else if (type == "pose") s.on_pose(j, out);
        else if (type == "abort") s.on_abort(j, out);
        else s.error(out, ErrorCode::ProtocolViolation, "unknown message type '" + type + "'");
    } catch (const Error& e) {
        s.error(out, e.code(), e.what());
    } catch (const json::exception& e) {
        s.error(out, ErrorCode::InvalidArgument, e.what());
    }
    return out;
}

HandlerOutput ProtocolHandler::oversize_line() {
    HandlerOutput out;
    state_->error(out, ErrorCode::ProtocolViolation, "line exceeds maximum length", true);
    state_->abort_active(nullptr);
    return out;
}

void ProtocolHandler::disconnect() {
    state_->abort_active(nullptr);
}

bool ProtocolHandler::trial_active() const { return state_->active(); }
int ProtocolHandler::trials_completed() const { return state_->completed; }

}  // namespace hapnav
