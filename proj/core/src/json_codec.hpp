#pragma once

// JSON mappings shared by the event log and config files. Internal to core.

#include <nlohmann/json.hpp>

#include "mtt/events.hpp"

namespace mtt {

using nlohmann::json;

void to_json(json& j, const Player& p);
void from_json(const json& j, Player& p);
void to_json(json& j, const TierConfig& t);
void from_json(const json& j, TierConfig& t);
void to_json(json& j, const TournamentConfig& c);
void from_json(const json& j, TournamentConfig& c);
void to_json(json& j, const RoundPairing& r);
void from_json(const json& j, RoundPairing& r);
void to_json(json& j, const RankedStanding& s);
void from_json(const json& j, RankedStanding& s);

json payload_to_json(const EventPayload& payload);
EventPayload payload_from_json(std::string_view type, const json& data);

}  // namespace mtt
