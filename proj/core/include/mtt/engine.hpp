#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mtt/state.hpp"

namespace mtt {

// Result of an engine operation: the new state and the events that produced
// it (already applied, in order).
struct Step {
  TournamentState state;
  std::vector<Event> events;
};

// Validates, assigns base tiers, and opens tier 1 with its groups and
// pairings. `now` stamps every emitted event.
Step create_tournament(const TournamentConfig& config, const std::vector<Player>& roster,
                       std::int64_t now = 0);

// Errors: UnknownGame, AlreadyReported, TierClosed, InvalidArgument (moves < 1).
Step enter_result(TournamentState state, const GameRef& game, GameResult result, int moveCount,
                  std::int64_t now = 0);

struct CompletionOptions {
  // Interactive mode only: the director has confirmed the seeded random
  // tie-break at a promotion or winner boundary.
  bool acceptRandom = false;
};

// Ranks every group, promotes (or crowns the winner on the final tier) and
// opens the next tier. Errors: IncompleteResults (details = missing refs),
// PendingDecision (details = tied players), TierClosed.
Step complete_tier(TournamentState state, CompletionOptions options = {}, std::int64_t now = 0);

// Scores the player's unplayed games in the active tier as losses and bars
// them from promotion. Errors: UnknownPlayer, NotActive.
Step forfeit(TournamentState state, const PlayerId& player, std::string reason, std::int64_t now = 0);

// Live standing of a group from the results entered so far.
RankedStanding group_standing(const TournamentState& state, int tier, int group);

std::vector<GameRef> missing_games(const TournamentState& state);

// First round of the group with an unreported game; nullopt when done.
std::optional<int> current_round(const TournamentState& state, int tier, int group);

// Games scored for the player across all tiers (forfeits included).
int games_played(const TournamentState& state, const PlayerId& player);

struct PromotionDecision {
  std::vector<PlayerId> promoted;
  // Non-empty when the random device separated the last promoted player
  // from the first one left out.
  std::vector<PlayerId> boundaryTie;
  // Random resolutions made while merging candidates across groups.
  std::vector<std::vector<PlayerId>> mergeTies;
};

// One winner per group when `count` equals the group count, the top `count`
// of a single group, and otherwise the top ceil(count/groups) of each group
// merged by tier score, wins, moves per win and the random device.
// Withdrawn players are skipped.
PromotionDecision select_promotions(const std::vector<RankedStanding>& standings, int count,
                                    const std::set<PlayerId>& withdrawn, RngStream& rng);

}  // namespace mtt
