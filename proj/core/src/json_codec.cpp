#include "json_codec.hpp"

#include "mtt/error.hpp"

namespace mtt {
namespace {

GameRef ref_from(const json& j) {
  auto ref = GameRef::parse(j.get<std::string>());
  if (!ref) throw Error(ErrorCode::InvalidArgument, "bad game ref " + j.dump());
  return *ref;
}

GameResult result_from(const json& j) {
  auto r = parse_result_token(j.get<std::string>());
  if (!r) throw Error(ErrorCode::InvalidArgument, "bad result token " + j.dump());
  return *r;
}

}  // namespace

void to_json(json& j, const Player& p) { j = json{{"id", p.id}, {"name", p.name}, {"elo", p.elo}}; }

void from_json(const json& j, Player& p) {
  p.id = j.at("id").get<std::string>();
  p.name = j.value("name", p.id);
  p.elo = j.at("elo").get<int>();
}

void to_json(json& j, const TierConfig& t) {
  j = json{{"base", t.baseSize}, {"promote", t.promoteCount}, {"max_group", t.maxGroupSize}};
}

void from_json(const json& j, TierConfig& t) {
  t.baseSize = j.at("base").get<int>();
  t.promoteCount = j.value("promote", 0);
  t.maxGroupSize = j.value("max_group", 10);
}

void to_json(json& j, const TournamentConfig& c) {
  j = json{{"tiers", c.tiers},
           {"seed", c.seed},
           {"tie_break_mode", c.tieBreakMode == TieBreakMode::Auto ? "auto" : "interactive"}};
}

void from_json(const json& j, TournamentConfig& c) {
  c.tiers = j.at("tiers").get<std::vector<TierConfig>>();
  c.seed = j.value("seed", std::uint64_t{0});
  const auto mode = j.value("tie_break_mode", std::string("auto"));
  if (mode == "auto") {
    c.tieBreakMode = TieBreakMode::Auto;
  } else if (mode == "interactive") {
    c.tieBreakMode = TieBreakMode::Interactive;
  } else {
    throw Error(ErrorCode::InvalidConfig, "tie_break_mode must be auto or interactive");
  }
}

void to_json(json& j, const RoundPairing& r) {
  json boards = json::array();
  for (const auto& b : r.boards) boards.push_back(json::array({b.white, b.black}));
  j = json{{"round", r.round}, {"boards", boards}, {"bye", r.bye ? json(*r.bye) : json(nullptr)}};
}

void from_json(const json& j, RoundPairing& r) {
  r.round = j.at("round").get<int>();
  r.boards.clear();
  for (const auto& b : j.at("boards")) r.boards.push_back({b.at(0).get<std::string>(), b.at(1).get<std::string>()});
  const auto& bye = j.at("bye");
  r.bye = bye.is_null() ? std::nullopt : std::optional<PlayerId>(bye.get<std::string>());
}

void to_json(json& j, const RankedStanding& s) {
  json entries = json::array();
  for (const auto& e : s.entries) {
    entries.push_back(json{{"player", e.line.player},
                           {"wins", e.line.wins},
                           {"losses", e.line.losses},
                           {"draws", e.line.draws},
                           {"moves_to_win", e.line.movesToWin},
                           {"key", json::array({e.key.numerator(), e.key.denominator()})},
                           {"rule", to_code(e.rule)},
                           {"h2h_suspended", e.headToHeadSuspended}});
  }
  j = json{{"entries", entries}, {"random_ties", s.randomTies}};
}

void from_json(const json& j, RankedStanding& s) {
  s.entries.clear();
  for (const auto& e : j.at("entries")) {
    StandingEntry entry;
    entry.line.player = e.at("player").get<std::string>();
    entry.line.wins = e.at("wins").get<int>();
    entry.line.losses = e.at("losses").get<int>();
    entry.line.draws = e.at("draws").get<int>();
    entry.line.movesToWin = e.at("moves_to_win").get<std::vector<int>>();
    entry.key = Rational(e.at("key").at(0).get<std::int64_t>(), e.at("key").at(1).get<std::int64_t>());
    auto rule = parse_tie_rule(e.at("rule").get<std::string>());
    if (!rule) throw Error(ErrorCode::InvalidArgument, "bad tie rule");
    entry.rule = *rule;
    entry.headToHeadSuspended = e.at("h2h_suspended").get<bool>();
    s.entries.push_back(std::move(entry));
  }
  s.randomTies = j.at("random_ties").get<std::vector<std::vector<PlayerId>>>();
}

namespace {

struct PayloadEncoder {
  json operator()(const ev::TournamentCreated& e) const {
    return {{"config", e.config}, {"roster", e.roster}, {"base_tiers", e.baseTiers}};
  }
  json operator()(const ev::TierStarted& e) const { return {{"tier", e.tier}, {"players", e.players}}; }
  json operator()(const ev::GroupsFormed& e) const { return {{"tier", e.tier}, {"groups", e.groups}}; }
  json operator()(const ev::PairingsPublished& e) const {
    return {{"tier", e.tier}, {"group", e.group}, {"schedule", e.schedule}};
  }
  json operator()(const ev::ResultEntered& e) const {
    return {{"game", e.game.to_string()}, {"result", to_token(e.result)}, {"moves", e.moves}};
  }
  json operator()(const ev::PlayerForfeited& e) const {
    std::vector<std::string> games;
    for (const auto& g : e.games) games.push_back(g.to_string());
    return {{"tier", e.tier}, {"player", e.player}, {"reason", e.reason}, {"games", games}};
  }
  json operator()(const ev::TieResolvedRandomly& e) const {
    return {{"tier", e.tier},
            {"group", e.group},
            {"context", e.context},
            {"players", e.players},
            {"alternatives", e.alternatives}};
  }
  json operator()(const ev::TierCompleted& e) const { return {{"tier", e.tier}, {"standings", e.standings}}; }
  json operator()(const ev::PromotionsApplied& e) const {
    return {{"from_tier", e.fromTier}, {"players", e.players}};
  }
  json operator()(const ev::TournamentCompleted& e) const { return {{"winner", e.winner}}; }
};

}  // namespace

json payload_to_json(const EventPayload& payload) { return std::visit(PayloadEncoder{}, payload); }

EventPayload payload_from_json(std::string_view type, const json& d) {
  if (type == "TournamentCreated") {
    return ev::TournamentCreated{d.at("config").get<TournamentConfig>(), d.at("roster").get<std::vector<Player>>(),
                                 d.at("base_tiers").get<std::vector<std::vector<PlayerId>>>()};
  }
  if (type == "TierStarted") {
    return ev::TierStarted{d.at("tier").get<int>(), d.at("players").get<std::vector<PlayerId>>()};
  }
  if (type == "GroupsFormed") {
    return ev::GroupsFormed{d.at("tier").get<int>(), d.at("groups").get<std::vector<std::vector<PlayerId>>>()};
  }
  if (type == "PairingsPublished") {
    return ev::PairingsPublished{d.at("tier").get<int>(), d.at("group").get<int>(),
                                 d.at("schedule").get<Schedule>()};
  }
  if (type == "ResultEntered") {
    return ev::ResultEntered{ref_from(d.at("game")), result_from(d.at("result")), d.at("moves").get<int>()};
  }
  if (type == "PlayerForfeited") {
    std::vector<GameRef> games;
    for (const auto& g : d.at("games")) games.push_back(ref_from(g));
    return ev::PlayerForfeited{d.at("tier").get<int>(), d.at("player").get<std::string>(),
                               d.at("reason").get<std::string>(), std::move(games)};
  }
  if (type == "TieResolvedRandomly") {
    return ev::TieResolvedRandomly{d.at("tier").get<int>(), d.at("group").get<int>(),
                                   d.at("context").get<std::string>(),
                                   d.at("players").get<std::vector<PlayerId>>(),
                                   d.at("alternatives").get<std::uint64_t>()};
  }
  if (type == "TierCompleted") {
    return ev::TierCompleted{d.at("tier").get<int>(), d.at("standings").get<std::vector<RankedStanding>>()};
  }
  if (type == "PromotionsApplied") {
    return ev::PromotionsApplied{d.at("from_tier").get<int>(), d.at("players").get<std::vector<PlayerId>>()};
  }
  if (type == "TournamentCompleted") {
    return ev::TournamentCompleted{d.at("winner").get<std::string>()};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown event type " + std::string(type));
}

std::string_view event_type(const EventPayload& payload) {
  static constexpr std::string_view names[] = {
      "TournamentCreated", "TierStarted",         "GroupsFormed",  "PairingsPublished",
      "ResultEntered",     "PlayerForfeited",     "TieResolvedRandomly", "TierCompleted",
      "PromotionsApplied", "TournamentCompleted"};
  return names[payload.index()];
}

}  // namespace mtt
