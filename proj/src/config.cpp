#include "hapnav/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hapnav/errors.hpp"

namespace hapnav {

using nlohmann::json;

namespace {

using Setter = std::function<void(double)>;

void overlay(const json& j, const std::map<std::string, Setter>& fields, const char* section) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, std::string(section) + " must be an object");
    for (const auto& [key, value] : j.items()) {
        const auto it = fields.find(key);
        if (it == fields.end()) {
            throw Error(ErrorCode::InvalidArgument, std::string("unknown ") + section + " key '" + key + "'");
        }
        if (!value.is_number()) {
            throw Error(ErrorCode::InvalidArgument, std::string(section) + "." + key + " must be a number");
        }
        it->second(value.get<double>());
    }
}

std::map<std::string, Setter> engine_fields(EngineConfig& e) {
    return {
        {"center_distance_cm", [&](double v) { e.law.center_distance_cm = v; }},
        {"zone_fraction", [&](double v) { e.law.zone_fraction = v; }},
        {"floor", [&](double v) { e.law.floor = v; }},
        {"far_max", [&](double v) { e.law.far_max = v; }},
        {"attain_radius_cm", [&](double v) { e.attain_radius_cm = v; }},
        {"arm_radius_cm", [&](double v) { e.arm_radius_cm = v; }},
        {"buzz_s", [&](double v) { e.buzz_s = v; }},
        {"tick_s", [&](double v) { e.tick_s = v; }},
        {"timeout_s", [&](double v) { e.timeout_s = v; }},
    };
}

std::map<std::string, Setter> agent_fields(AgentParams& a) {
    return {
        {"speed_cm_s", [&](double v) { a.speed_cm_s = v; }},
        {"angular_noise_sd", [&](double v) { a.angular_noise_sd = v; }},
        {"reaction_delay_s", [&](double v) { a.reaction_delay_s = v; }},
        {"push_inversion_delay_s", [&](double v) { a.push_inversion_delay_s = v; }},
        {"confusion_prob", [&](double v) { a.confusion_prob = v; }},
        {"perception_threshold", [&](double v) { a.perception_threshold = v; }},
        {"simultaneous_cue_delay_s", [&](double v) { a.simultaneous_cue_delay_s = v; }},
        {"winding_tolerance_rad", [&](double v) { a.winding_tolerance_rad = v; }},
        {"horizontal_speed_scale", [&](double v) { a.horizontal_speed_scale = v; }},
        {"vertical_speed_scale", [&](double v) { a.vertical_speed_scale = v; }},
        {"tilt_rad", [&](double v) { a.tilt_rad = v; }},
        {"wrist_offset_x_cm", [&](double v) { a.wrist_offset_cm.x = v; }},
        {"wrist_offset_y_cm", [&](double v) { a.wrist_offset_cm.y = v; }},
    };
}

}  // namespace

json engine_to_json(const EngineConfig& e) {
    return {{"center_distance_cm", e.law.center_distance_cm},
            {"zone_fraction", e.law.zone_fraction},
            {"floor", e.law.floor},
            {"far_max", e.law.far_max},
            {"attain_radius_cm", e.attain_radius_cm},
            {"arm_radius_cm", e.arm_radius_cm},
            {"buzz_s", e.buzz_s},
            {"tick_s", e.tick_s},
            {"timeout_s", e.timeout_s}};
}

EngineConfig engine_from_json(const json& j) {
    EngineConfig e;
    overlay(j, engine_fields(e), "engine");
    e.validate();
    return e;
}

json agent_to_json(const AgentParams& a) {
    return {{"speed_cm_s", a.speed_cm_s},
            {"angular_noise_sd", a.angular_noise_sd},
            {"reaction_delay_s", a.reaction_delay_s},
            {"push_inversion_delay_s", a.push_inversion_delay_s},
            {"confusion_prob", a.confusion_prob},
            {"perception_threshold", a.perception_threshold},
            {"simultaneous_cue_delay_s", a.simultaneous_cue_delay_s},
            {"winding_tolerance_rad", a.winding_tolerance_rad},
            {"horizontal_speed_scale", a.horizontal_speed_scale},
            {"vertical_speed_scale", a.vertical_speed_scale},
            {"tilt_rad", a.tilt_rad},
            {"wrist_offset_x_cm", a.wrist_offset_cm.x},
            {"wrist_offset_y_cm", a.wrist_offset_cm.y}};
}

AgentParams agent_from_json(const json& j) {
    AgentParams a;
    overlay(j, agent_fields(a), "agent");
    a.validate();
    return a;
}

json condition_to_json(const Condition& c) {
    return {{"layout", to_string(c.layout)},
            {"approach", to_string(c.approach)},
            {"metaphor", to_string(c.metaphor)},
            {"intensity", to_string(c.intensity)}};
}

Condition condition_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "condition must be an object");
    auto level = [&](const char* key, auto parser) {
        const auto it = j.find(key);
        if (it == j.end() || !it->is_string()) {
            throw Error(ErrorCode::InvalidArgument, std::string("condition.") + key + " missing");
        }
        const auto v = parser(it->template get<std::string>());
        if (!v) throw Error(ErrorCode::InvalidArgument, std::string("unknown ") + key + " '" + it->template get<std::string>() + "'");
        return *v;
    };
    return {level("layout", parse_layout), level("approach", parse_approach),
            level("metaphor", parse_metaphor), level("intensity", parse_intensity)};
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "engine") cfg.engine = engine_from_json(value);
        else if (key == "agent") cfg.agent = agent_from_json(value);
        else throw Error(ErrorCode::InvalidArgument, "unknown config section '" + key + "'");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace hapnav
