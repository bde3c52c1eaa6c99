#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mtt/head_to_head.hpp"
#include "mtt/rng.hpp"
#include "mtt/scoring.hpp"
#include "mtt/types.hpp"

namespace mtt {

struct RejectedRow {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string reason;    // UnknownResultToken, SelfPlay, MissingField, BadMoveCount
  std::string text;
};

struct IngestResult {
  HeadToHeadDb db;
  std::vector<RejectedRow> rejected;
  std::size_t rowsRead = 0;
};

// CSV with header white,black,result[,moves][,date]. Bad rows are collected,
// not fatal. Throws MissingHeader.
IngestResult ingest_games(std::istream& in);
IngestResult ingest_games(const std::filesystem::path& path);

struct PairAggregate {
  int winsA = 0;
  int winsB = 0;
  int draws = 0;
  int games = 0;

  bool operator==(const PairAggregate&) const = default;
};

PairAggregate crosstable(const HeadToHeadDb& db, const PlayerId& a, const PlayerId& b);
// Every unordered pair (players[i], players[j]) with i < j.
std::map<std::pair<PlayerId, PlayerId>, PairAggregate> crosstable(const HeadToHeadDb& db,
                                                                  const std::vector<PlayerId>& players);

struct HistoricalTier {
  int tier = 0;
  std::vector<PlayerId> members;
  // Ordered by mean pairwise TS (the entry key) with cascade tie-breaks;
  // wins, losses and draws are counted against tier co-members.
  RankedStanding standing;
  std::vector<PlayerId> promoted;
  // Games per pair of co-members, unplayed pairs included.
  Rational meanGamesPerMatchup;
};

struct HistoricalTierReport {
  std::vector<HistoricalTier> tiers;
  PlayerId winner;
  std::map<std::pair<PlayerId, PlayerId>, int> pairGames;
};

// Tiers from Elo; within a tier each member's key is the mean of TS_AB over
// all co-members (0 for unplayed pairs); the top promoteCount move up and
// the top of the final tier wins. Throws UnknownPlayer when a roster id has
// no games in the db.
HistoricalTierReport replay_historical(const HeadToHeadDb& db, const std::vector<Player>& roster,
                                       const TournamentConfig& config, RngStream& rng);

// tier,rank,player,mean_ts
std::string historical_report_csv(const HistoricalTierReport& report);
std::string historical_report_table(const HistoricalTierReport& report, const std::vector<Player>& roster);

struct ColorCounts {
  int white = 0;
  int black = 0;
};

struct ColorBiasReport {
  Rational fraction;
  // Top-k players with more White than Black games, in standing order.
  std::vector<PlayerId> extraWhite;
};

// Throws MissingColorCounts for a top-k player without counts and
// InvalidArgument when k exceeds the standings.
ColorBiasReport color_bias_report(const std::vector<PlayerId>& standings,
                                  const std::map<PlayerId, ColorCounts>& colorCounts, std::size_t k);

}  // namespace mtt
