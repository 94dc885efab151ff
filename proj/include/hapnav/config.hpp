#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "hapnav/session.hpp"
#include "hapnav/simagent.hpp"

namespace hapnav {

/// Overridable constants for the engine and the simulated hand.
struct RunConfig {
    EngineConfig engine{};
    AgentParams agent{};
};

/// JSON object with optional "engine" and "agent" members; absent keys keep
/// their defaults, unknown keys are rejected. Throws Error(ParseError) or
/// Error(InvalidArgument).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json engine_to_json(const EngineConfig& e);
EngineConfig engine_from_json(const nlohmann::json& j);
nlohmann::json agent_to_json(const AgentParams& a);
AgentParams agent_from_json(const nlohmann::json& j);

nlohmann::json condition_to_json(const Condition& c);
/// Throws Error(InvalidArgument) on a missing or unknown level.
Condition condition_from_json(const nlohmann::json& j);

}  // namespace hapnav
