#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtt/scheduling.hpp"
#include "mtt/scoring.hpp"
#include "mtt/types.hpp"

namespace mtt {

namespace ev {

struct TournamentCreated {
  TournamentConfig config;
  std::vector<Player> roster;
  // Base (pre-promotion) membership of each tier.
  std::vector<std::vector<PlayerId>> baseTiers;
  bool operator==(const TournamentCreated&) const = default;
};

struct TierStarted {
  int tier = 0;
  std::vector<PlayerId> players;
  bool operator==(const TierStarted&) const = default;
};

struct GroupsFormed {
  int tier = 0;
  std::vector<std::vector<PlayerId>> groups;
  bool operator==(const GroupsFormed&) const = default;
};

struct PairingsPublished {
  int tier = 0;
  int group = 0;
  Schedule schedule;
  bool operator==(const PairingsPublished&) const = default;
};

struct ResultEntered {
  GameRef game;
  GameResult result = GameResult::Draw;
  int moves = 0;
  bool operator==(const ResultEntered&) const = default;
};

struct PlayerForfeited {
  int tier = 0;
  PlayerId player;
  std::string reason;
  // Unplayed games scored as losses for `player`.
  std::vector<GameRef> games;
  bool operator==(const PlayerForfeited&) const = default;
};

// context: "tier-assignment", "group-split", "standing", "promotion"
struct TieResolvedRandomly {
  int tier = 0;
  int group = 0;  // 0 when the decision spans the tier
  std::string context;
  // Resulting order (or chosen members for group-split).
  std::vector<PlayerId> players;
  std::uint64_t alternatives = 0;
  bool operator==(const TieResolvedRandomly&) const = default;
};

struct TierCompleted {
  int tier = 0;
  std::vector<RankedStanding> standings;  // one per group
  bool operator==(const TierCompleted&) const = default;
};

struct PromotionsApplied {
  int fromTier = 0;
  std::vector<PlayerId> players;
  bool operator==(const PromotionsApplied&) const = default;
};

struct TournamentCompleted {
  PlayerId winner;
  bool operator==(const TournamentCompleted&) const = default;
};

}  // namespace ev

using EventPayload =
    std::variant<ev::TournamentCreated, ev::TierStarted, ev::GroupsFormed, ev::PairingsPublished,
                 ev::ResultEntered, ev::PlayerForfeited, ev::TieResolvedRandomly,
                 ev::TierCompleted, ev::PromotionsApplied, ev::TournamentCompleted>;

struct Event {
  std::int64_t timestamp = 0;  // ms since epoch, or 0 under a fixed clock
  EventPayload payload;

  bool operator==(const Event&) const = default;
};

std::string_view event_type(const EventPayload& payload);

}  // namespace mtt
