#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mtt/head_to_head.hpp"
#include "mtt/rng.hpp"
#include "mtt/types.hpp"

namespace mtt {

// (wins - losses) / games, kept as the unreduced pair so the denominator still
// reads as the number of games. A default-constructed score has no games and
// reads as 0; that form only appears in live standings and for unplayed pairs.
class TierScore {
 public:
  TierScore() = default;
  TierScore(std::int64_t numerator, std::int64_t games);

  std::int64_t numerator() const { return num_; }
  std::int64_t games() const { return den_; }
  Rational value() const { return den_ == 0 ? Rational(0) : Rational(num_, den_); }
  double to_double() const { return den_ == 0 ? 0.0 : static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const TierScore& a, const TierScore& b) { return a.value() == b.value(); }
  friend std::strong_ordering operator<=>(const TierScore& a, const TierScore& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 0;
};

// Throws NoGames when all counts are zero.
TierScore tier_score(int wins, int losses, int draws);

struct ScoreLine {
  PlayerId player;
  int wins = 0;
  int losses = 0;
  int draws = 0;
  // One entry per win; 0 for forfeit wins and unknown lengths.
  std::vector<int> movesToWin;

  int games() const { return wins + losses + draws; }
  TierScore score() const { return TierScore(wins - losses, games()); }

  bool operator==(const ScoreLine&) const = default;
};

// Score lines for `members` over `games`, in member order.
std::vector<ScoreLine> score_lines(std::span<const PlayerId> members,
                                   std::span<const GameRecord> games);

// TS of `a` against its single opponent in `gamesAB`; zero when empty.
// Throws MixedPair if the rows do not all involve `a` and one common opponent.
TierScore pairwise_ts(const PlayerId& a, std::span<const GameRecord> gamesAB);

// Mean of pairwise TS over every listed opponent, unplayed pairs counting 0.
Rational mean_pairwise_ts(const PlayerId& player, std::span<const PlayerId> opponents,
                          const HeadToHeadDb& db);

enum class TieRule { None, Score, HeadToHead, MoreWins, FewerMoves, Random };

// "-", "score", "i", "ii", "iii", "iv"
std::string_view to_code(TieRule rule);
std::string_view describe(TieRule rule);
std::optional<TieRule> parse_tie_rule(std::string_view code);

// `rule` names what separated this entry from the one directly above it.
// `headToHeadSuspended` is set when the pair had a decisive head-to-head
// result that was ignored because it sat on a cycle of the tied set.
struct StandingEntry {
  ScoreLine line;
  Rational key;
  TieRule rule = TieRule::None;
  bool headToHeadSuspended = false;

  bool operator==(const StandingEntry&) const = default;
};

struct RankedStanding {
  std::vector<StandingEntry> entries;
  // Each element lists players whose relative order came from the random
  // device, in their final order.
  std::vector<std::vector<PlayerId>> randomTies;

  std::vector<PlayerId> order() const;
  bool operator==(const RankedStanding&) const = default;
};

// Net decisive head-to-head results of a over b (a's wins minus b's wins).
using HeadToHeadFn = std::function<int(const PlayerId&, const PlayerId&)>;

struct CascadeEntry {
  ScoreLine line;
  Rational key;
};

// Orders entries by key descending, breaking equal keys with the cascade:
// head-to-head, more wins, fewer average moves per win, random device.
// Head-to-head is ignored between players on a cycle of the tied set.
RankedStanding rank_with_cascade(std::vector<CascadeEntry> entries, const HeadToHeadFn& headToHead,
                                 RngStream& rng);

// Standing of one group. Throws InconsistentScores when a line disagrees
// with the games.
RankedStanding rank_group(std::span<const ScoreLine> scores, std::span<const GameRecord> games,
                          RngStream& rng);

// Rule-(iii) comparison: negative if a averaged fewer moves per win than b,
// positive if more, 0 if the rule cannot separate them. Zero-length entries
// are ignored and an empty set averages +infinity.
int compare_moves_per_win(std::span<const int> a, std::span<const int> b);

}  // namespace mtt
