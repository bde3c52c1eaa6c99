#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "mtt/event_log.hpp"
#include "oracles/engine_oracle.hpp"
#include "tools/http_fixture.hpp"

using namespace testing_support;
using nlohmann::json;

namespace {

json roster_json(int n) {
  json r = json::array();
  for (int i = 0; i < n; ++i)
    r.push_back({{"id", "p" + std::to_string(i)}, {"name", "Player " + std::to_string(i)}, {"elo", 2600 + 10 * i}});
  return r;
}

json two_tier_config(const char* mode = "auto") {
  return {{"tiers", {{{"base", 6}, {"promote", 2}, {"max_group", 10}}, {{"base", 2}, {"promote", 0}, {"max_group", 10}}}},
          {"seed", 11},
          {"tie_break_mode", mode}};
}

// Lower id wins; ties cannot occur.
std::string scripted(const std::string& white, const std::string& black) { return white < black ? "1-0" : "0-1"; }

std::string create(LiveServer& s, const json& config, const json& roster) {
  const auto r = s.post("/tournaments", {{"config", config}, {"roster", roster}});
  EXPECT_EQ(r.status, 201) << r.body.dump();
  return r.body.at("tournamentId");
}

void play_active_tier(LiveServer& s, const std::string& id, const std::function<std::string(const json&)>& result) {
  const auto pairings = s.get("/tournaments/" + id + "/pairings");
  ASSERT_EQ(pairings.status, 200);
  for (const auto& g : pairings.body["pairings"]) {
    if (!g["result"].is_null()) continue;
    const auto r = s.post("/tournaments/" + id + "/results", {{"gameRef", g["gameRef"]}, {"result", result(g)}, {"moves", 41}});
    ASSERT_EQ(r.status, 200) << r.body.dump();
  }
}

}  // namespace

TEST(ServiceTest, HappyPathToWinnerMatchesOracle) {
  const auto dir = fresh_dir("svc");
  {
    LiveServer s(dir);
    const auto id = create(s, two_tier_config(), roster_json(8));
    const auto snap = s.get("/tournaments/" + id);
    ASSERT_EQ(snap.status, 200);
    EXPECT_EQ(snap.body["tier"], 1);
    EXPECT_EQ(snap.body["tiers"][0]["groups"][0]["rounds"].size(), 5u);
    EXPECT_EQ(snap.body["pendingGames"].size(), 15u);

    while (s.get("/tournaments/" + id).body["status"] != "finished") {
      play_active_tier(s, id, [](const json& g) { return scripted(g["white"], g["black"]); });
      const auto done = s.post("/tournaments/" + id + "/complete-tier", json::object());
      ASSERT_EQ(done.status, 200) << done.body.dump();
    }
    const auto final = s.get("/tournaments/" + id);
    EXPECT_EQ(final.body["winner"], "p0");

    const auto standings = s.get("/tournaments/" + id + "/standings?tier=1");
    ASSERT_EQ(standings.status, 200);
    const auto& rows = standings.body["groups"][0]["standings"];
    EXPECT_EQ(rows[0]["ts"]["fraction"], "1/1");
    EXPECT_EQ(rows[0]["rule"], "-");
    EXPECT_EQ(rows[1]["rule"], "score");
  }
  // The log on disk alone reproduces the run.
  const auto logs = std::vector<std::filesystem::path>(std::filesystem::directory_iterator(dir), {});
  ASSERT_EQ(logs.size(), 1u);
  const auto events = mtt::read_log(logs[0]);
  const auto check = oracle::check_engine_log(events);
  for (const auto& p : check.problems) ADD_FAILURE() << p;
  EXPECT_EQ(check.winner, "p0");
  std::filesystem::remove_all(dir);
}

TEST(ServiceTest, DuplicateResultIsConflict) {
  const auto dir = fresh_dir("svc");
  LiveServer s(dir);
  const auto id = create(s, two_tier_config(), roster_json(8));
  const json body{{"gameRef", "T1G1R1B1"}, {"result", "1-0"}, {"moves", 30}};
  const auto first = s.post("/tournaments/" + id + "/results", body);
  ASSERT_EQ(first.status, 200);
  EXPECT_EQ(first.body["standings"].size(), 6u);
  const auto second = s.post("/tournaments/" + id + "/results", body);
  EXPECT_EQ(second.status, 409);
  EXPECT_EQ(second.body["code"], "AlreadyReported");
  EXPECT_FALSE(second.body["message"].get<std::string>().empty());
  std::filesystem::remove_all(dir);
}

TEST(ServiceTest, OneMissingGameIsListed) {
  const auto dir = fresh_dir("svc");
  LiveServer s(dir);
  const auto id = create(s, two_tier_config(), roster_json(8));
  const auto pairings = s.get("/tournaments/" + id + "/pairings").body["pairings"];
  const std::string skip = pairings[7]["gameRef"];
  for (const auto& g : pairings)
    if (g["gameRef"] != skip)
      ASSERT_EQ(s.post("/tournaments/" + id + "/results", {{"gameRef", g["gameRef"]}, {"result", "1/2-1/2"}, {"moves", 50}})
                    .status,
                200);
  const auto r = s.post("/tournaments/" + id + "/complete-tier", json::object());
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(r.body["code"], "IncompleteResults");
  EXPECT_EQ(r.body["missing"], json::array({skip}));
  std::filesystem::remove_all(dir);
}

TEST(ServiceTest, InteractiveTieBreakNeedsConfirmation) {
  const auto dir = fresh_dir("svc");
  LiveServer s(dir);
  const auto id = create(s, two_tier_config("interactive"), roster_json(8));
  play_active_tier(s, id, [](const json&) { return "1/2-1/2"; });
  const auto pending = s.post("/tournaments/" + id + "/complete-tier", json::object());
  ASSERT_EQ(pending.status, 202);
  EXPECT_EQ(pending.body["code"], "PendingRandomTieBreak");
  EXPECT_EQ(pending.body["tiedPlayers"].size(), 2u);
  EXPECT_EQ(s.get("/tournaments/" + id).body["tier"], 1);

  EXPECT_EQ(s.post("/tournaments/" + id + "/tiebreak", {{"accept", false}}).status, 400);
  const auto resolved = s.post("/tournaments/" + id + "/tiebreak", {{"accept", true}});
  ASSERT_EQ(resolved.status, 200) << resolved.body.dump();
  EXPECT_EQ(resolved.body["promoted"].size(), 2u);
  EXPECT_FALSE(resolved.body["randomTies"].empty());
  EXPECT_EQ(resolved.body["nextTier"]["tier"], 2);
  const auto again = s.post("/tournaments/" + id + "/tiebreak", {{"accept", true}});
  EXPECT_EQ(again.status, 409);
  EXPECT_EQ(again.body["code"], "NoPendingDecision");
  std::filesystem::remove_all(dir);
}

TEST(ServiceTest, RestartReloadsFromLogs) {
  const auto dir = fresh_dir("svc");
  std::string id;
  json before;
  {
    LiveServer s(dir);
    id = create(s, two_tier_config(), roster_json(8));
    s.post("/tournaments/" + id + "/results", {{"gameRef", "T1G1R1B2"}, {"result", "0-1"}, {"moves", 60}});
    before = s.get("/tournaments/" + id).body;
  }
  LiveServer s(dir);
  EXPECT_EQ(s.get("/tournaments/" + id).body, before);
  const auto other = create(s, two_tier_config(), roster_json(8));
  EXPECT_NE(other, id);
  std::filesystem::remove_all(dir);
}

TEST(ServiceTest, EventPollingReturnsConsistentSuffixes) {
  const auto dir = fresh_dir("svc");
  LiveServer s(dir);
  const auto id = create(s, two_tier_config(), roster_json(8));
  const auto all = s.get("/tournaments/" + id + "/events");
  ASSERT_EQ(all.status, 200);
  const std::size_t n = all.body["next"];
  EXPECT_EQ(all.body["events"].size(), n);
  EXPECT_EQ(all.body["events"][0]["type"], "TournamentCreated");
  s.post("/tournaments/" + id + "/results", {{"gameRef", "T1G1R1B1"}, {"result", "1-0"}, {"moves", 25}});
  const auto tail = s.get("/tournaments/" + id + "/events?since=" + std::to_string(n));
  ASSERT_EQ(tail.body["events"].size(), 1u);
  EXPECT_EQ(tail.body["events"][0]["type"], "ResultEntered");
  EXPECT_EQ(tail.body["events"][0]["seq"], n);
  const auto again = s.get("/tournaments/" + id + "/events?since=2");
  EXPECT_EQ(again.body["events"][0], all.body["events"][2]);
  EXPECT_EQ(s.get("/tournaments/" + id + "/events?since=abc").status, 400);
  std::filesystem::remove_all(dir);
}

TEST(ServiceTest, ErrorsCarryApiErrorBodies) {
  const auto dir = fresh_dir("svc");
  LiveServer s(dir);
  const auto missing = s.get("/tournaments/nope");
  EXPECT_EQ(missing.status, 404);
  EXPECT_EQ(missing.body["code"], "UnknownTournament");
  EXPECT_EQ(s.post_raw("/tournaments", "{not json").status, 400);
  const auto bad = s.post("/tournaments", {{"config", two_tier_config()}, {"roster", roster_json(7)}});
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(bad.body["code"], "SizeMismatch");
  const auto id = create(s, two_tier_config(), roster_json(8));
  const auto token = s.post("/tournaments/" + id + "/results", {{"gameRef", "T1G1R1B1"}, {"result", "1:0"}, {"moves", 3}});
  EXPECT_EQ(token.status, 400);
  EXPECT_EQ(token.body["code"], "InvalidArgument");
  const auto unknown = s.post("/tournaments/" + id + "/results", {{"gameRef", "T1G1R9B1"}, {"result", "1-0"}, {"moves", 3}});
  EXPECT_EQ(unknown.status, 404);
  EXPECT_EQ(unknown.body["code"], "UnknownGame");
  EXPECT_EQ(s.get("/nowhere").body["code"], "NotFound");
  std::filesystem::remove_all(dir);
}

TEST(ServiceTest, CsvRosterAndForfeit) {
  const auto dir = fresh_dir("svc");
  LiveServer s(dir);
  std::string csv = "id,name,elo\n";
  for (int i = 0; i < 8; ++i) csv += "p" + std::to_string(i) + ",P" + std::to_string(i) + "," + std::to_string(2600 + i) + "\n";
  const auto id = create(s, two_tier_config(), csv);
  const auto f = s.post("/tournaments/" + id + "/forfeit", {{"player", "p1"}, {"reason", "ill"}});
  ASSERT_EQ(f.status, 200) << f.body.dump();
  EXPECT_EQ(f.body["forfeitedGames"].size(), 5u);
  EXPECT_EQ(s.post("/tournaments/" + id + "/forfeit", {{"player", "p1"}}).body["code"], "NotActive");
  EXPECT_EQ(s.post("/tournaments/" + id + "/forfeit", {{"player", "zz"}}).status, 404);
  const auto standings = s.get("/tournaments/" + id + "/standings").body["groups"][0]["standings"];
  EXPECT_EQ(standings.back()["player"], "p1");
  EXPECT_EQ(standings.back()["ts"]["fraction"], "-1/1");
  std::filesystem::remove_all(dir);
}

TEST(ServiceTest, ConcurrentResultsAreSerialized) {
  const auto dir = fresh_dir("svc");
  LiveServer s(dir);
  const auto id = create(s, two_tier_config(), roster_json(8));
  const auto pairings = s.get("/tournaments/" + id + "/pairings").body["pairings"];
  std::vector<std::thread> workers;
  std::atomic<int> accepted{0};
  for (int w = 0; w < 3; ++w) {
    workers.emplace_back([&, w] {
      // Every worker posts every game; exactly one post per game wins.
      httplib::Client c("127.0.0.1", s.port());
      for (std::size_t i = 0; i < pairings.size(); ++i) {
        const auto& g = pairings[(i + 5 * w) % pairings.size()];
        const json body{{"gameRef", g["gameRef"]}, {"result", "1/2-1/2"}, {"moves", 40}};
        const auto r = c.Post("/tournaments/" + id + "/results", body.dump(), "application/json");
        if (r && r->status == 200) ++accepted;
      }
    });
  }
  for (auto& t : workers) t.join();
  EXPECT_EQ(accepted.load(), 15);
  EXPECT_TRUE(s.get("/tournaments/" + id).body["pendingGames"].empty());
  std::filesystem::remove_all(dir);
}
