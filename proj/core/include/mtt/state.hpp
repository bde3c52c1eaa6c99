#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "mtt/events.hpp"

namespace mtt {

struct GameSlot {
  GameRef ref;
  PlayerId white;
  PlayerId black;
  std::optional<GameResult> result;
  int moves = 0;
  bool forfeit = false;

  bool reported() const { return result.has_value(); }
  bool operator==(const GameSlot&) const = default;
};

struct GroupRun {
  std::vector<PlayerId> members;
  Schedule schedule;
  std::vector<GameSlot> games;
  bool published = false;

  // Reported games as records usable by the scoring functions.
  std::vector<GameRecord> records() const;
  bool operator==(const GroupRun&) const = default;
};

struct TierRun {
  int index = 0;  // 1-based
  std::vector<PlayerId> players;
  std::vector<GroupRun> groups;
  bool groupsFormed = false;
  bool completed = false;
  std::vector<RankedStanding> standings;  // set on completion
  std::vector<PlayerId> promoted;
  bool promotionsApplied = false;
  std::set<PlayerId> withdrawn;

  bool all_published() const;
  bool operator==(const TierRun&) const = default;
};

struct TournamentState {
  TournamentConfig config;
  std::vector<Player> roster;
  std::vector<std::vector<PlayerId>> baseTiers;
  std::vector<TierRun> tiers;  // started tiers, in order
  std::optional<PlayerId> winner;
  std::vector<ev::TieResolvedRandomly> randomTies;
  std::size_t eventCount = 0;

  bool created() const { return eventCount > 0; }
  bool finished() const { return winner.has_value(); }
  // The last started tier, or nullptr before tier 1 starts.
  const TierRun* active_tier() const { return tiers.empty() ? nullptr : &tiers.back(); }
  TierRun* active_tier() { return tiers.empty() ? nullptr : &tiers.back(); }
  const Player* find_player(const PlayerId& id) const;
  const GameSlot* find_game(const GameRef& ref) const;

  bool operator==(const TournamentState&) const = default;
};

// Pure transition. Throws IllegalTransition naming the violated precondition.
TournamentState apply_event(TournamentState state, const Event& event);

TournamentState replay(std::span<const Event> events);

}  // namespace mtt
