#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mtt/error.hpp"
#include "mtt/event_log.hpp"
#include "mtt/state.hpp"
#include "support/driver.hpp"

using namespace mtt;
using namespace testing_support;

namespace {

ResultFn by_rating(const std::vector<Player>& roster) {
  return [roster](const PlayerId& w, const PlayerId& b) {
    auto elo = [&](const PlayerId& id) {
      for (const auto& p : roster)
        if (p.id == id) return p.elo;
      return 0;
    };
    const int d = elo(w) - elo(b);
    if (d > 10) return std::pair{GameResult::WhiteWin, 30 + d % 17};
    if (d < -10) return std::pair{GameResult::BlackWin, 30 + (-d) % 13};
    return std::pair{GameResult::Draw, 50};
  };
}

Session twenty_player_run() {
  const auto roster = top20_roster();
  return play_out(make_config({{8, 2, 10}, {6, 2, 10}, {6, 0, 10}}), roster, by_rating(roster));
}

ErrorCode read_error(const std::string& text) {
  std::istringstream in(text);
  try {
    read_log(in);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "log accepted";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(EventLogTest, EmptyLog) {
  std::istringstream in("");
  EXPECT_TRUE(read_log(in).empty());
  std::ostringstream out;
  write_log(out, std::vector<Event>{});
  EXPECT_EQ(out.str(), "");
}

TEST(EventLogTest, SingleEventRoundTrip) {
  Event e{1234, ev::ResultEntered{{1, 2, 3, 4}, GameResult::Draw, 61}};
  const auto line = serialize_event(e, 0);
  EXPECT_EQ(parse_event(line, 1, 0), e);
  EXPECT_NE(line.find("\"v\":1"), std::string::npos);
  EXPECT_NE(line.find("\"type\":\"ResultEntered\""), std::string::npos);
}

TEST(EventLogTest, TwentyPlayerLogRoundTripsByteForByte) {
  const auto run = twenty_player_run();
  ASSERT_GT(run.events.size(), 60u);
  std::ostringstream first;
  write_log(first, run.events);
  std::istringstream in(first.str());
  const auto parsed = read_log(in);
  EXPECT_EQ(parsed, run.events);
  std::ostringstream second;
  write_log(second, parsed);
  EXPECT_EQ(first.str(), second.str());
}

TEST(EventLogTest, FileRoundTripAndAppend) {
  const auto run = twenty_player_run();
  const auto dir = std::filesystem::temp_directory_path() / "mtt_event_log_test";
  std::filesystem::create_directories(dir);
  const auto whole = dir / "whole.jsonl";
  const auto pieces = dir / "pieces.jsonl";
  std::filesystem::remove(pieces);
  write_log(whole, run.events);
  const std::span<const Event> all(run.events);
  append_log(pieces, all.first(10), 0);
  append_log(pieces, all.subspan(10), 10);
  EXPECT_EQ(read_text_file(whole), read_text_file(pieces));
  EXPECT_EQ(read_log(whole), run.events);
  std::filesystem::remove_all(dir);
}

TEST(EventLogTest, CorruptLinesNameTheLine) {
  const std::string good = serialize_event({0, ev::TournamentCompleted{"x"}}, 0);
  std::istringstream in(good + "\n{not json\n");
  try {
    read_log(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CorruptLine);
    ASSERT_FALSE(e.details().empty());
    EXPECT_EQ(e.details()[0], "2");
  }
  EXPECT_EQ(read_error("[1,2]\n"), ErrorCode::CorruptLine);
  EXPECT_EQ(read_error(R"({"v":1,"seq":0,"ts":0,"type":"Bogus","data":{}})" "\n"), ErrorCode::CorruptLine);
  EXPECT_EQ(read_error(R"({"v":1,"seq":5,"ts":0,"type":"TournamentCompleted","data":{"winner":"x"}})" "\n"),
            ErrorCode::CorruptLine);
  EXPECT_EQ(read_error(R"({"v":2,"seq":0,"ts":0,"type":"TournamentCompleted","data":{"winner":"x"}})" "\n"),
            ErrorCode::VersionMismatch);
}

TEST(ReplayTest, ReplayEqualsIncrementalState) {
  const auto run = twenty_player_run();
  EXPECT_EQ(replay(run.events), run.state);
  EXPECT_EQ(replay(run.events), replay(run.events));
  EXPECT_EQ(replay(run.events).winner, run.state.winner);
}

TEST(ReplayTest, PrefixesReplayToIntermediateStates) {
  const auto roster = top20_roster();
  Session run;
  run.absorb(create_tournament(make_config({{8, 2, 10}, {6, 2, 10}, {6, 0, 10}}), roster));
  const auto atCreation = run.state;
  EXPECT_EQ(replay(run.events), atCreation);
  play_tier(run, by_rating(roster));
  EXPECT_EQ(replay(run.events), run.state);
}

TEST(ApplyEventTest, FreshStateAcceptsOnlyCreation) {
  TournamentState fresh;
  EXPECT_THROW(apply_event(fresh, {0, ev::ResultEntered{{1, 1, 1, 1}, GameResult::Draw, 30}}), Error);
  const auto roster = top20_roster();
  const auto step = create_tournament(make_config({{8, 2, 10}, {6, 2, 10}, {6, 0, 10}}), roster);
  const auto s = apply_event(fresh, step.events.front());
  EXPECT_EQ(s.roster, roster);
  EXPECT_TRUE(s.created());
}

TEST(ApplyEventTest, UnknownGameIsIllegal) {
  const auto step = create_tournament(make_config({{8, 2, 10}, {6, 2, 10}, {6, 0, 10}}), top20_roster());
  try {
    apply_event(step.state, {0, ev::ResultEntered{{1, 1, 99, 1}, GameResult::Draw, 30}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllegalTransition);
  }
  EXPECT_THROW(apply_event(step.state, {0, ev::TournamentCompleted{"carlsen"}}), Error);
  EXPECT_THROW(apply_event(step.state, step.events.front()), Error);
}
