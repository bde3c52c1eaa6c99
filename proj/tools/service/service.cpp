#include "service.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "mtt/event_log.hpp"
#include "mtt/io.hpp"

namespace mtt::service {

using json = nlohmann::json;

namespace {

Response ok(const json& body, int status = 200) { return {status, body.dump()}; }

Response api_error(int status, std::string_view code, const std::string& message, json extra = json::object()) {
  extra["code"] = code;
  extra["message"] = message;
  return {status, extra.dump()};
}

Response from_error(const Error& e) {
  if (e.code() == ErrorCode::PendingDecision) {
    return api_error(202, "PendingRandomTieBreak", e.what(), {{"tiedPlayers", e.details()}});
  }
  json extra = json::object();
  if (e.code() == ErrorCode::IncompleteResults) extra["missing"] = e.details();
  else if (!e.details().empty()) extra["details"] = e.details();
  return api_error(http_status(e.code()), to_string(e.code()), e.what(), std::move(extra));
}

Response not_found(const std::string& id) {
  return api_error(404, "UnknownTournament", "no tournament '" + id + "'");
}

json parse_body(const std::string& body) {
  try {
    auto j = json::parse(body.empty() ? std::string("{}") : body);
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string("field '") + name + "' has the wrong type");
  }
}

json ts_json(const ScoreLine& l) {
  const auto r = l.score().value();
  return {{"num", l.wins - l.losses},
          {"den", l.games()},
          {"fraction", std::to_string(r.numerator()) + "/" + std::to_string(r.denominator())},
          {"value", to_double(r)}};
}

json standing_json(const RankedStanding& s) {
  json rows = json::array();
  int rank = 0;
  for (const auto& e : s.entries) {
    rows.push_back({{"rank", ++rank},
                    {"player", e.line.player},
                    {"ts", ts_json(e.line)},
                    {"wins", e.line.wins},
                    {"losses", e.line.losses},
                    {"draws", e.line.draws},
                    {"rule", to_code(e.rule)},
                    {"ruleText", describe(e.rule)},
                    {"headToHeadSuspended", e.headToHeadSuspended}});
  }
  return rows;
}

json game_json(const GameSlot& g) {
  json out{{"gameRef", g.ref.to_string()}, {"group", g.ref.group}, {"round", g.ref.round}, {"board", g.ref.board},
           {"white", g.white},           {"black", g.black},     {"result", nullptr},       {"moves", nullptr},
           {"forfeit", g.forfeit}};
  if (g.result) {
    out["result"] = to_token(*g.result);
    out["moves"] = g.moves;
  }
  return out;
}

json tier_json(const TournamentState& state, const TierRun& t) {
  json groups = json::array();
  for (std::size_t g = 0; g < t.groups.size(); ++g) {
    const auto& run = t.groups[g];
    json rounds = json::array();
    for (const auto& r : run.schedule) {
      json boards = json::array();
      for (const auto& slot : run.games)
        if (slot.ref.round == r.round) boards.push_back(game_json(slot));
      rounds.push_back({{"round", r.round}, {"boards", boards}, {"bye", r.bye ? json(*r.bye) : json(nullptr)}});
    }
    const auto current = current_round(state, t.index, static_cast<int>(g) + 1);
    groups.push_back({{"group", g + 1},
                      {"members", run.members},
                      {"currentRound", current ? json(*current) : json(nullptr)},
                      {"rounds", rounds}});
  }
  return {{"tier", t.index},
          {"players", t.players},
          {"completed", t.completed},
          {"promoted", t.promoted},
          {"withdrawn", t.withdrawn},
          {"groups", groups}};
}

json event_json(const Event& e, std::size_t seq) { return json::parse(serialize_event(e, seq)); }

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownGame:
    case ErrorCode::UnknownPlayer:
      return 404;
    case ErrorCode::AlreadyReported:
    case ErrorCode::TierClosed:
    case ErrorCode::IncompleteResults:
    case ErrorCode::NotActive:
    case ErrorCode::NoPendingDecision:
    case ErrorCode::IllegalTransition:
    case ErrorCode::InsufficientEligible:
      return 409;
    case ErrorCode::PendingDecision:
      return 202;
    case ErrorCode::IoError:
    case ErrorCode::CorruptLine:
    case ErrorCode::VersionMismatch:
      return 500;
    case ErrorCode::NoGames:
    case ErrorCode::MixedPair:
    case ErrorCode::SelfOpponent:
    case ErrorCode::InconsistentScores:
    case ErrorCode::PoolTooSmall:
    case ErrorCode::PoolTooLarge:
      return 422;
    default:
      return 400;
  }
}

TournamentService::TournamentService(std::filesystem::path logDir, Clock clock)
    : logDir_(std::move(logDir)), clock_(std::move(clock)) {
  std::filesystem::create_directories(logDir_);
  std::vector<std::filesystem::path> logs;
  for (const auto& entry : std::filesystem::directory_iterator(logDir_))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") logs.push_back(entry.path());
  std::sort(logs.begin(), logs.end());
  for (const auto& path : logs) {
    auto live = std::make_shared<Live>();
    live->events = read_log(path);
    live->state = replay(live->events);
    live->log = path;
    const auto id = path.stem().string();
    table_[id] = std::move(live);
    if (id.size() > 1 && id[0] == 't') {
      try {
        nextId_ = std::max(nextId_, std::stoi(id.substr(1)) + 1);
      } catch (const std::exception&) {
      }
    }
  }
}

std::int64_t TournamentService::now() const {
  if (clock_) return clock_();
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::vector<std::string> TournamentService::ids() const {
  std::shared_lock lock(tableMutex_);
  std::vector<std::string> out;
  for (const auto& [id, live] : table_) out.push_back(id);
  return out;
}

std::shared_ptr<TournamentService::Live> TournamentService::find(const std::string& id) const {
  std::shared_lock lock(tableMutex_);
  const auto it = table_.find(id);
  return it == table_.end() ? nullptr : it->second;
}

void TournamentService::commit(Live& live, const Step& step) {
  append_log(live.log, step.events, live.events.size());
  live.events.insert(live.events.end(), step.events.begin(), step.events.end());
  live.state = step.state;
}

Response TournamentService::create(const std::string& body) {
  try {
    const auto req = parse_body(body);
    TournamentConfig config;
    const auto cfg = req.contains("config") ? req.at("config") : req.contains("configRef") ? req.at("configRef") : json();
    if (cfg.is_object()) config = config_from_json(cfg.dump());
    else if (cfg.is_string()) config = read_config(cfg.get<std::string>());
    else throw Error(ErrorCode::InvalidArgument, "missing field 'config'");

    std::vector<Player> roster;
    const auto r = req.contains("roster") ? req.at("roster") : json();
    if (r.is_array()) {
      roster = roster_from_json(r.dump());
    } else if (r.is_string()) {
      std::istringstream in(r.get<std::string>());
      roster = read_roster(in);
    } else {
      throw Error(ErrorCode::InvalidArgument, "missing field 'roster'");
    }

    const auto step = create_tournament(config, roster, now());
    auto live = std::make_shared<Live>();
    std::unique_lock lock(tableMutex_);
    std::string id;
    do {
      char buf[32];
      std::snprintf(buf, sizeof buf, "t%04d", nextId_++);
      id = buf;
    } while (table_.count(id) || std::filesystem::exists(logDir_ / (id + ".jsonl")));
    live->log = logDir_ / (id + ".jsonl");
    commit(*live, step);
    table_[id] = live;
    return ok({{"tournamentId", id}}, 201);
  } catch (const Error& e) {
    return from_error(e);
  }
}

Response TournamentService::snapshot(const std::string& id) {
  const auto live = find(id);
  if (!live) return not_found(id);
  std::lock_guard lock(live->mutex);
  const auto& s = live->state;
  json tiers = json::array();
  for (const auto& t : s.tiers) tiers.push_back(tier_json(s, t));
  json pending = json::array();
  for (const auto& ref : missing_games(s)) pending.push_back(ref.to_string());
  json roster = json::array();
  for (const auto& p : s.roster) roster.push_back({{"id", p.id}, {"name", p.name}, {"elo", p.elo}});
  const auto* active = s.active_tier();
  return ok({{"tournamentId", id},
             {"status", s.finished() ? "finished" : "running"},
             {"tier", active ? json(active->index) : json(nullptr)},
             {"tierCount", s.config.tiers.size()},
             {"winner", s.winner ? json(*s.winner) : json(nullptr)},
             {"config", json::parse(config_to_json(s.config))},
             {"roster", roster},
             {"tiers", tiers},
             {"pendingGames", pending},
             {"eventCount", live->events.size()}});
}

Response TournamentService::pairings(const std::string& id, std::optional<int> round) {
  const auto live = find(id);
  if (!live) return not_found(id);
  std::lock_guard lock(live->mutex);
  const auto* t = live->state.active_tier();
  json games = json::array(), byes = json::array();
  if (t) {
    for (std::size_t g = 0; g < t->groups.size(); ++g) {
      const auto& run = t->groups[g];
      for (const auto& slot : run.games)
        if (!round || slot.ref.round == *round) games.push_back(game_json(slot));
      for (const auto& r : run.schedule)
        if (r.bye && (!round || r.round == *round))
          byes.push_back({{"group", g + 1}, {"round", r.round}, {"player", *r.bye}});
    }
  }
  return ok({{"tier", t ? json(t->index) : json(nullptr)},
             {"round", round ? json(*round) : json(nullptr)},
             {"pairings", games},
             {"byes", byes}});
}

Response TournamentService::result(const std::string& id, const std::string& body) {
  const auto live = find(id);
  if (!live) return not_found(id);
  std::lock_guard lock(live->mutex);
  try {
    const auto req = parse_body(body);
    const auto refText = field<std::string>(req, "gameRef");
    const auto ref = GameRef::parse(refText);
    if (!ref) throw Error(ErrorCode::InvalidArgument, "malformed game reference '" + refText + "'");
    const auto token = field<std::string>(req, "result");
    const auto res = parse_result_token(token);
    if (!res) throw Error(ErrorCode::InvalidArgument, "result must be 1-0, 0-1 or 1/2-1/2, got '" + token + "'");
    const int moves = field<int>(req, "moves");
    const auto step = enter_result(live->state, *ref, *res, moves, now());
    commit(*live, step);
    return ok({{"gameRef", ref->to_string()},
               {"tier", ref->tier},
               {"group", ref->group},
               {"standings", standing_json(group_standing(live->state, ref->tier, ref->group))}});
  } catch (const Error& e) {
    return from_error(e);
  }
}

namespace {

json completion_json(const TournamentState& state, const std::vector<Event>& events, int tier) {
  json ties = json::array();
  for (const auto& e : events)
    if (const auto* t = std::get_if<ev::TieResolvedRandomly>(&e.payload))
      ties.push_back({{"tier", t->tier}, {"group", t->group}, {"context", t->context}, {"players", t->players}});
  const auto& done = state.tiers[static_cast<std::size_t>(tier) - 1];
  json standings = json::array();
  for (std::size_t g = 0; g < done.standings.size(); ++g)
    standings.push_back({{"group", g + 1}, {"standings", standing_json(done.standings[g])}});
  json out{{"tier", tier},
           {"promoted", done.promoted},
           {"winner", state.winner ? json(*state.winner) : json(nullptr)},
           {"standings", standings},
           {"randomTies", ties},
           {"nextTier", nullptr}};
  if (!state.finished()) out["nextTier"] = tier_json(state, *state.active_tier());
  return out;
}

}  // namespace

Response TournamentService::complete_tier(const std::string& id) {
  const auto live = find(id);
  if (!live) return not_found(id);
  std::lock_guard lock(live->mutex);
  try {
    if (live->state.finished()) throw Error(ErrorCode::TierClosed, "tournament already finished");
    const int tier = live->state.active_tier()->index;
    const auto step = mtt::complete_tier(live->state, {}, now());
    commit(*live, step);
    return ok(completion_json(live->state, step.events, tier));
  } catch (const Error& e) {
    return from_error(e);
  }
}

Response TournamentService::tiebreak(const std::string& id, const std::string& body) {
  const auto live = find(id);
  if (!live) return not_found(id);
  std::lock_guard lock(live->mutex);
  try {
    const auto req = parse_body(body);
    if (!field<bool>(req, "accept")) throw Error(ErrorCode::InvalidArgument, "the coin toss can only be accepted");
    if (live->state.finished()) throw Error(ErrorCode::NoPendingDecision, "tournament already finished");
    // Pending status is recomputed, so it survives restarts.
    std::string why = "the tier completes without one";
    try {
      mtt::complete_tier(live->state, {}, 0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PendingDecision) why = e.what();
      else why.clear();
    }
    if (!why.empty()) throw Error(ErrorCode::NoPendingDecision, "no random tie-break is pending: " + why);
    const int tier = live->state.active_tier()->index;
    const auto step = mtt::complete_tier(live->state, {true}, now());
    commit(*live, step);
    return ok(completion_json(live->state, step.events, tier));
  } catch (const Error& e) {
    return from_error(e);
  }
}

Response TournamentService::standings(const std::string& id, std::optional<int> tier) {
  const auto live = find(id);
  if (!live) return not_found(id);
  std::lock_guard lock(live->mutex);
  const auto& s = live->state;
  try {
    const TierRun* t = s.active_tier();
    if (tier) {
      if (*tier < 1 || *tier > static_cast<int>(s.tiers.size()))
        throw Error(ErrorCode::InvalidArgument, "tier " + std::to_string(*tier) + " has not started");
      t = &s.tiers[static_cast<std::size_t>(*tier) - 1];
    }
    json groups = json::array();
    if (t) {
      for (std::size_t g = 0; g < t->groups.size(); ++g)
        groups.push_back(
            {{"group", g + 1}, {"standings", standing_json(group_standing(s, t->index, static_cast<int>(g) + 1))}});
    }
    return ok({{"tier", t ? json(t->index) : json(nullptr)},
               {"completed", t ? t->completed : false},
               {"promoted", t ? json(t->promoted) : json::array()},
               {"groups", groups}});
  } catch (const Error& e) {
    return from_error(e);
  }
}

Response TournamentService::events(const std::string& id, std::size_t since) {
  const auto live = find(id);
  if (!live) return not_found(id);
  std::lock_guard lock(live->mutex);
  json out = json::array();
  for (std::size_t i = since; i < live->events.size(); ++i) out.push_back(event_json(live->events[i], i));
  return ok({{"since", since}, {"next", live->events.size()}, {"events", out}});
}

Response TournamentService::forfeit(const std::string& id, const std::string& body) {
  const auto live = find(id);
  if (!live) return not_found(id);
  std::lock_guard lock(live->mutex);
  try {
    const auto req = parse_body(body);
    const auto player = field<std::string>(req, "player");
    const auto reason = req.value("reason", std::string());
    const auto step = mtt::forfeit(live->state, player, reason, now());
    commit(*live, step);
    json games = json::array();
    for (const auto& ref : std::get<ev::PlayerForfeited>(step.events.back().payload).games)
      games.push_back(ref.to_string());
    return ok({{"player", player}, {"forfeitedGames", games}});
  } catch (const Error& e) {
    return from_error(e);
  }
}

void register_routes(httplib::Server& server, TournamentService& service,
                     const std::optional<std::filesystem::path>& staticDir) {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  auto opt_int = [](const httplib::Request& req, const char* name) -> std::optional<int> {
    if (!req.has_param(name)) return std::nullopt;
    const auto v = req.get_param_value(name);
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  };
  auto guarded = [send](auto fn) {
    return [send, fn](const httplib::Request& req, httplib::Response& res) {
      try {
        send(res, fn(req));
      } catch (const std::logic_error&) {
        send(res, api_error(400, "InvalidArgument", "malformed query parameter"));
      } catch (const Error& e) {
        send(res, from_error(e));
      } catch (const std::exception& e) {
        send(res, api_error(500, "InternalError", e.what()));
      }
    };
  };

  server.Post("/tournaments", guarded([&](const httplib::Request& req) { return service.create(req.body); }));
  server.Get("/tournaments", guarded([&](const httplib::Request&) {
               return ok({{"tournaments", service.ids()}});
             }));
  server.Get(R"(/tournaments/([^/]+))",
             guarded([&](const httplib::Request& req) { return service.snapshot(req.matches[1]); }));
  server.Get(R"(/tournaments/([^/]+)/pairings)", guarded([&, opt_int](const httplib::Request& req) {
               return service.pairings(req.matches[1], opt_int(req, "round"));
             }));
  server.Post(R"(/tournaments/([^/]+)/results)",
              guarded([&](const httplib::Request& req) { return service.result(req.matches[1], req.body); }));
  server.Post(R"(/tournaments/([^/]+)/complete-tier)",
              guarded([&](const httplib::Request& req) { return service.complete_tier(req.matches[1]); }));
  server.Post(R"(/tournaments/([^/]+)/tiebreak)",
              guarded([&](const httplib::Request& req) { return service.tiebreak(req.matches[1], req.body); }));
  server.Get(R"(/tournaments/([^/]+)/standings)", guarded([&, opt_int](const httplib::Request& req) {
               return service.standings(req.matches[1], opt_int(req, "tier"));
             }));
  server.Get(R"(/tournaments/([^/]+)/events)", guarded([&, opt_int](const httplib::Request& req) {
               const auto since = opt_int(req, "since").value_or(0);
               if (since < 0) throw std::invalid_argument("since");
               return service.events(req.matches[1], static_cast<std::size_t>(since));
             }));
  server.Post(R"(/tournaments/([^/]+)/forfeit)",
              guarded([&](const httplib::Request& req) { return service.forfeit(req.matches[1], req.body); }));

  server.set_error_handler([send](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    send(res, api_error(res.status, res.status == 404 ? "NotFound" : "HttpError", "no such route"));
  });
  if (staticDir) server.set_mount_point("/", staticDir->string());
}

}  // namespace mtt::service
