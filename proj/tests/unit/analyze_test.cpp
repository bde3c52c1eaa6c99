#include <gtest/gtest.h>

#include <sstream>

#include "mtt/analyze.hpp"
#include "mtt/error.hpp"
#include "oracles/historical_oracle.hpp"
#include "support/driver.hpp"
#include "support/synthetic_db.hpp"

using namespace mtt;
using namespace testing_support;

namespace {

IngestResult ingest(const std::string& text) {
  std::istringstream in(text);
  return ingest_games(in);
}

const std::vector<std::pair<int, int>> kThreeTierShape{{8, 2}, {6, 2}, {6, 0}};

TournamentConfig three_tier_config() { return make_config({{8, 2, 10}, {6, 2, 10}, {6, 0, 10}}); }

}  // namespace

TEST(IngestTest, AcceptsAndRejectsRows) {
  const auto r = ingest(
      "white,black,result,moves\n"
      "a,b,1-0,40\n"
      "b,a,1/2-1/2,\n"
      "a,b,1:0,30\n"
      "a,a,0-1,22\n"
      ",b,0-1,22\n"
      "b,a,0-1,x\n"
      "\n"
      "b,c,0-1,61\n");
  EXPECT_EQ(r.rowsRead, 7u);
  EXPECT_EQ(r.db.size(), 3u);
  ASSERT_EQ(r.rejected.size(), 4u);
  EXPECT_EQ(r.rejected[0].reason, "UnknownResultToken");
  EXPECT_EQ(r.rejected[0].line, 4u);
  EXPECT_EQ(r.rejected[1].reason, "SelfPlay");
  EXPECT_EQ(r.rejected[2].reason, "MissingField");
  EXPECT_EQ(r.rejected[3].reason, "BadMoveCount");
  EXPECT_EQ(r.db.rows()[1].game.moveCount, 0);
  EXPECT_EQ(r.rowsRead, r.db.size() + r.rejected.size());
}

TEST(IngestTest, HeaderRequired) {
  for (const char* text : {"", "white,black,moves\na,b,3\n"}) {
    try {
      ingest(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MissingHeader);
    }
  }
  // Columns may come in any order.
  const auto r = ingest("result,black,white\n0-1,x,y\n");
  ASSERT_EQ(r.db.size(), 1u);
  EXPECT_EQ(r.db.rows()[0].game.white, "y");
  EXPECT_EQ(r.db.rows()[0].game.result, GameResult::BlackWin);
}

TEST(IngestTest, SyntheticCorpusIsConserved) {
  const auto games = synthetic_games(top20_roster(), 77);
  const auto r = ingest(games_csv(games));
  EXPECT_TRUE(r.rejected.empty());
  EXPECT_EQ(r.db.size(), games.size());
  EXPECT_EQ(r.rowsRead, games.size());
}

TEST(CrosstableTest, SymmetricAndRecounted) {
  const auto roster = top20_roster();
  const auto games = synthetic_games(roster, 5);
  const auto db = ingest(games_csv(games)).db;
  for (const auto& a : roster) {
    for (const auto& b : roster) {
      if (a.id == b.id) continue;
      const auto ab = crosstable(db, a.id, b.id);
      const auto ba = crosstable(db, b.id, a.id);
      EXPECT_EQ(ab.winsA, ba.winsB);
      EXPECT_EQ(ab.draws, ba.draws);
      EXPECT_EQ(ab.games, ab.winsA + ab.winsB + ab.draws);
      int wa = 0, wb = 0, d = 0;
      for (const auto& g : games) {
        if (g.white == a.id && g.black == b.id) (g.result > 0 ? wa : g.result < 0 ? wb : d)++;
        if (g.white == b.id && g.black == a.id) (g.result > 0 ? wb : g.result < 0 ? wa : d)++;
      }
      EXPECT_EQ(ab, (PairAggregate{wa, wb, d, wa + wb + d}));
    }
  }
  std::vector<PlayerId> ids{"carlsen", "so", "duda"};
  const auto table = crosstable(db, ids);
  EXPECT_EQ(table.size(), 3u);
  EXPECT_EQ(table.at({"so", "duda"}), crosstable(db, "so", "duda"));
}

TEST(CrosstableTest, CarlsenAronianAggregate) {
  std::string csv = "white,black,result\n";
  for (int i = 0; i < 12; ++i) csv += "carlsen,aronian,1-0\n";
  for (int i = 0; i < 8; ++i) csv += "carlsen,aronian,0-1\n";
  for (int i = 0; i < 51; ++i) csv += "aronian,carlsen,1/2-1/2\n";
  const auto db = ingest(csv).db;
  EXPECT_EQ(crosstable(db, "carlsen", "aronian"), (PairAggregate{12, 8, 51, 71}));
  const std::vector<PlayerId> opponents{"aronian"};
  EXPECT_EQ(mean_pairwise_ts("carlsen", opponents, db), Rational(4, 71));
}

TEST(ReplayHistoricalTest, SyntheticTwentyMatchesOracle) {
  const auto roster = top20_roster();
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto games = synthetic_games(roster, seed);
    const auto db = ingest(games_csv(games)).db;
    RngStream rng(seed, "historical");
    const auto report = replay_historical(db, roster, three_tier_config(), rng);
    const auto check = oracle::check_historical(games, roster, kThreeTierShape, report);
    for (const auto& p : check.problems) ADD_FAILURE() << "seed " << seed << ": " << p;
    EXPECT_EQ(report.tiers[0].members.size(), 8u);
    EXPECT_EQ(report.tiers[2].members.size(), 8u);
  }
}

TEST(ReplayHistoricalTest, TiersFollowElo) {
  const auto roster = top20_roster();
  const auto db = ingest(games_csv(synthetic_games(roster, 9))).db;
  RngStream rng(9, "historical");
  const auto report = replay_historical(db, roster, three_tier_config(), rng);
  auto members = report.tiers[0].members;
  std::sort(members.begin(), members.end());
  EXPECT_EQ(members, (std::vector<PlayerId>{"abdusattorov", "aronian", "duda", "erigaisi", "gukesh", "keymer",
                                            "mamedyarov", "mvl"}));
  const auto csv = historical_report_csv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "tier,rank,player,mean_ts");
  const auto table = historical_report_table(report, roster);
  EXPECT_NE(table.find("Tier 3"), std::string::npos);
  EXPECT_NE(table.find("Winner: " + report.winner), std::string::npos);
}

TEST(ReplayHistoricalTest, RatingScaleDoesNotMatterWithinTiers) {
  const auto roster = top20_roster();
  const auto db = ingest(games_csv(synthetic_games(roster, 13))).db;
  auto shifted = roster;
  for (auto& p : shifted) p.elo = p.elo * 2 - 1000;
  RngStream a(1, "h"), b(1, "h");
  const auto x = replay_historical(db, roster, three_tier_config(), a);
  const auto y = replay_historical(db, shifted, three_tier_config(), b);
  EXPECT_EQ(historical_report_csv(x), historical_report_csv(y));
  EXPECT_EQ(x.winner, y.winner);
}

TEST(ReplayHistoricalTest, TrivialAndErrors) {
  const std::vector<Player> two{{"a", "A", 2700}, {"b", "B", 2710}};
  const auto db = ingest("white,black,result\na,b,1-0\nb,a,1/2-1/2\n").db;
  RngStream rng(1, "h");
  const auto r = replay_historical(db, two, make_config({{2, 0, 10}}), rng);
  EXPECT_EQ(r.winner, "a");
  EXPECT_EQ(r.tiers[0].standing.entries[0].key, Rational(1, 2));
  EXPECT_EQ(r.tiers[0].meanGamesPerMatchup, Rational(2));

  const std::vector<Player> three{{"a", "A", 2700}, {"b", "B", 2710}, {"z", "Z", 2600}};
  try {
    replay_historical(db, three, make_config({{3, 0, 10}}), rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownPlayer);
  }
}

TEST(ReplayHistoricalTest, UnplayedPairsCountAsZero) {
  // a beats b; c never met anyone but shows up in the db via another player.
  const std::vector<Player> roster{{"a", "A", 2700}, {"b", "B", 2710}, {"c", "C", 2720}};
  const auto db = ingest("white,black,result\na,b,1-0\nc,x,1-0\n").db;
  RngStream rng(1, "h");
  const auto r = replay_historical(db, roster, make_config({{3, 0, 10}}), rng);
  const auto& e = r.tiers[0].standing.entries;
  EXPECT_EQ(e[0].line.player, "a");
  EXPECT_EQ(e[0].key, Rational(1, 2));
  EXPECT_EQ(e[1].line.player, "c");
  EXPECT_EQ(e[1].key, Rational(0));
  EXPECT_EQ(e[2].key, Rational(-1, 2));
  EXPECT_EQ(r.tiers[0].meanGamesPerMatchup, Rational(1, 3));
}

TEST(ColorBiasTest, Fractions) {
  std::vector<PlayerId> standings;
  std::map<PlayerId, ColorCounts> counts;
  for (int i = 0; i < 12; ++i) {
    standings.push_back("p" + std::to_string(i));
    counts[standings.back()] = {4, 4};
  }
  EXPECT_EQ(color_bias_report(standings, counts, 10).fraction, Rational(0));
  for (int i : {0, 2, 3, 5, 7, 9}) counts[standings[i]] = {5, 4};
  counts["p10"] = {5, 4};
  const auto r = color_bias_report(standings, counts, 10);
  EXPECT_EQ(r.fraction, Rational(3, 5));
  EXPECT_EQ(r.extraWhite, (std::vector<PlayerId>{"p0", "p2", "p3", "p5", "p7", "p9"}));
  for (auto& [id, c] : counts) c = {5, 4};
  EXPECT_EQ(color_bias_report(standings, counts, 10).fraction, Rational(1));
}

TEST(ColorBiasTest, Errors) {
  std::vector<PlayerId> standings{"a", "b", "c"};
  std::map<PlayerId, ColorCounts> counts{{"a", {1, 0}}, {"c", {0, 1}}};
  try {
    color_bias_report(standings, counts, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingColorCounts);
  }
  EXPECT_EQ(color_bias_report(standings, counts, 1).fraction, Rational(1));
  EXPECT_THROW(color_bias_report(standings, counts, 0), Error);
  EXPECT_THROW(color_bias_report(standings, counts, 4), Error);
}
