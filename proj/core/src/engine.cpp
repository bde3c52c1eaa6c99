#include "mtt/engine.hpp"

#include <algorithm>
#include <numeric>

#include "mtt/config.hpp"
#include "mtt/error.hpp"
#include "mtt/scheduling.hpp"
#include "mtt/tiering.hpp"

namespace mtt {
namespace {

std::string stream_name(std::string_view what, int tier, int group = 0) {
  std::string name(what);
  name += "/t" + std::to_string(tier);
  if (group > 0) name += "/g" + std::to_string(group);
  return name;
}

struct Builder {
  TournamentState state;
  std::int64_t now;
  std::vector<Event> events;

  void emit(EventPayload payload) {
    Event e{now, std::move(payload)};
    state = apply_event(std::move(state), e);
    events.push_back(std::move(e));
  }

  Step finish() { return Step{std::move(state), std::move(events)}; }
};

void start_tier(Builder& b, int tier) {
  const auto& cfg = b.state.config;
  std::vector<PlayerId> players = b.state.baseTiers[tier - 1];
  if (tier > 1) {
    const auto& promoted = b.state.tiers.back().promoted;
    players.insert(players.end(), promoted.begin(), promoted.end());
  }
  b.emit(ev::TierStarted{tier, players});

  std::vector<Player> pool;
  for (const auto& id : players) pool.push_back(*b.state.find_player(id));
  RngStream splitRng(cfg.seed, stream_name("groups", tier));
  const auto split = split_tier(pool, cfg.tiers[tier - 1].maxGroupSize, splitRng);
  b.emit(ev::GroupsFormed{tier, split.groups});
  for (std::size_t g = 0; g < split.coMinimizers.size(); ++g) {
    if (split.coMinimizers[g] > 1) {
      b.emit(ev::TieResolvedRandomly{tier, static_cast<int>(g) + 1, "group-split", split.groups[g],
                                     split.coMinimizers[g]});
    }
  }
  for (std::size_t g = 0; g < split.groups.size(); ++g) {
    const int group = static_cast<int>(g) + 1;
    RngStream scheduleRng(cfg.seed, stream_name("schedule", tier, group));
    b.emit(ev::PairingsPublished{tier, group, round_robin(split.groups[g], scheduleRng)});
  }
}

const TierRun& open_tier_or_throw(const TournamentState& state) {
  const TierRun* t = state.active_tier();
  if (t == nullptr) throw Error(ErrorCode::IllegalTransition, "tournament has not started");
  if (t->completed || state.finished()) throw Error(ErrorCode::TierClosed, "no open tier");
  return *t;
}

// True when every adjacency between positions `from` and `to` of the
// standing was decided by the random device.
bool random_between(const RankedStanding& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t i = from + 1; i <= to; ++i)
    if (s.entries[i].rule != TieRule::Random) return false;
  return true;
}

}  // namespace

Step create_tournament(const TournamentConfig& config, const std::vector<Player>& roster, std::int64_t now) {
  validate_config(config, roster);
  RngStream tierRng(config.seed, "tiers");
  auto assignment = assign_tiers(roster, config, tierRng);

  Builder b{TournamentState{}, now, {}};
  b.emit(ev::TournamentCreated{config, roster, assignment.tiers});
  for (const auto& tied : assignment.boundaryTies) {
    b.emit(ev::TieResolvedRandomly{0, 0, "tier-assignment", tied, tied.size()});
  }
  start_tier(b, 1);
  return b.finish();
}

Step enter_result(TournamentState state, const GameRef& game, GameResult result, int moveCount,
                  std::int64_t now) {
  const GameSlot* slot = state.find_game(game);
  if (slot == nullptr) throw Error(ErrorCode::UnknownGame, "unknown game " + game.to_string());
  const TierRun* t = state.active_tier();
  if (state.finished() || t->index != game.tier || t->completed) {
    throw Error(ErrorCode::TierClosed, "tier " + std::to_string(game.tier) + " is closed");
  }
  if (slot->reported()) throw Error(ErrorCode::AlreadyReported, game.to_string() + " already reported");
  if (moveCount < 1) throw Error(ErrorCode::InvalidArgument, "move count must be positive");

  Builder b{std::move(state), now, {}};
  b.emit(ev::ResultEntered{game, result, moveCount});
  return b.finish();
}

Step forfeit(TournamentState state, const PlayerId& player, std::string reason, std::int64_t now) {
  if (state.find_player(player) == nullptr) throw Error(ErrorCode::UnknownPlayer, "unknown player " + player);
  const TierRun* t = state.active_tier();
  const bool inTier = t != nullptr && !t->completed && !state.finished() &&
                      std::find(t->players.begin(), t->players.end(), player) != t->players.end();
  if (!inTier || t->withdrawn.count(player)) {
    throw Error(ErrorCode::NotActive, player + " is not active in the current tier");
  }
  std::vector<GameRef> games;
  for (const auto& g : t->groups)
    for (const auto& slot : g.games)
      if (!slot.reported() && (slot.white == player || slot.black == player)) games.push_back(slot.ref);

  Builder b{std::move(state), now, {}};
  const int tier = b.state.active_tier()->index;
  b.emit(ev::PlayerForfeited{tier, player, std::move(reason), std::move(games)});
  return b.finish();
}

RankedStanding group_standing(const TournamentState& state, int tier, int group) {
  for (const auto& t : state.tiers) {
    if (t.index != tier) continue;
    if (group < 1 || group > static_cast<int>(t.groups.size())) break;
    if (t.completed) return t.standings[group - 1];
    const auto& g = t.groups[group - 1];
    const auto records = g.records();
    RngStream rng(state.config.seed, stream_name("standing", tier, group));
    return rank_group(score_lines(g.members, records), records, rng);
  }
  throw Error(ErrorCode::InvalidArgument, "no group " + std::to_string(group) + " in tier " + std::to_string(tier));
}

std::vector<GameRef> missing_games(const TournamentState& state) {
  std::vector<GameRef> missing;
  const TierRun* t = state.active_tier();
  if (t == nullptr || t->completed) return missing;
  for (const auto& g : t->groups)
    for (const auto& slot : g.games)
      if (!slot.reported()) missing.push_back(slot.ref);
  return missing;
}

std::optional<int> current_round(const TournamentState& state, int tier, int group) {
  for (const auto& t : state.tiers) {
    if (t.index != tier || group < 1 || group > static_cast<int>(t.groups.size())) continue;
    std::optional<int> round;
    for (const auto& slot : t.groups[group - 1].games)
      if (!slot.reported() && (!round || slot.ref.round < *round)) round = slot.ref.round;
    return round;
  }
  return std::nullopt;
}

int games_played(const TournamentState& state, const PlayerId& player) {
  int n = 0;
  for (const auto& t : state.tiers)
    for (const auto& g : t.groups)
      for (const auto& slot : g.games)
        if (slot.reported() && (slot.white == player || slot.black == player)) ++n;
  return n;
}

PromotionDecision select_promotions(const std::vector<RankedStanding>& standings, int count,
                                    const std::set<PlayerId>& withdrawn, RngStream& rng) {
  PromotionDecision out;
  const int groups = static_cast<int>(standings.size());
  const int cap = groups == 1 ? count : (count + groups - 1) / groups;

  // Positions of eligible players within each standing.
  std::vector<std::vector<std::size_t>> eligible(groups);
  int available = 0;
  for (int g = 0; g < groups; ++g) {
    for (std::size_t i = 0; i < standings[g].entries.size(); ++i)
      if (!withdrawn.count(standings[g].entries[i].line.player)) eligible[g].push_back(i);
    available += std::min<int>(cap, static_cast<int>(eligible[g].size()));
  }
  if (available < count) {
    throw Error(ErrorCode::InsufficientEligible, "only " + std::to_string(available) +
                                                     " eligible players for " + std::to_string(count) + " places");
  }

  auto entry = [&](int g, std::size_t k) -> const StandingEntry& { return standings[g].entries[eligible[g][k]]; };

  // Deterministic cross-group order: tier score, wins, moves per win.
  auto compare = [&](const StandingEntry& a, const StandingEntry& b) {
    if (a.key != b.key) return a.key > b.key ? -1 : 1;
    if (a.line.wins != b.line.wins) return a.line.wins > b.line.wins ? -1 : 1;
    return compare_moves_per_win(a.line.movesToWin, b.line.movesToWin);
  };

  std::vector<std::size_t> taken(groups, 0);
  std::vector<std::uint64_t> priority;
  std::vector<PlayerId> candidates;
  for (int g = 0; g < groups; ++g)
    for (std::size_t k = 0; k < std::min<std::size_t>(cap, eligible[g].size()); ++k)
      candidates.push_back(entry(g, k).line.player);
  std::sort(candidates.begin(), candidates.end());
  auto priority_of = [&](const PlayerId& id) {
    if (priority.empty()) {
      priority.resize(candidates.size());
      std::iota(priority.begin(), priority.end(), 0);
      rng.shuffle(std::span(priority));
    }
    return priority[std::lower_bound(candidates.begin(), candidates.end(), id) - candidates.begin()];
  };

  const bool merge = groups > 1 && static_cast<int>(candidates.size()) > count;
  int lastGroup = 0;
  for (int pick = 0; pick < count; ++pick) {
    std::vector<int> heads;
    for (int g = 0; g < groups; ++g)
      if (taken[g] < std::min<std::size_t>(cap, eligible[g].size())) heads.push_back(g);

    int best = heads.front();
    std::vector<int> tiedWithBest{best};
    if (merge) {
      for (std::size_t h = 1; h < heads.size(); ++h) {
        const int c = compare(entry(heads[h], taken[heads[h]]), entry(best, taken[best]));
        if (c < 0) {
          best = heads[h];
          tiedWithBest = {best};
        } else if (c == 0) {
          tiedWithBest.push_back(heads[h]);
        }
      }
      if (tiedWithBest.size() > 1) {
        for (int g : tiedWithBest)
          if (priority_of(entry(g, taken[g]).line.player) > priority_of(entry(best, taken[best]).line.player)) best = g;
        std::vector<PlayerId> tie;
        tie.push_back(entry(best, taken[best]).line.player);
        for (int g : tiedWithBest)
          if (g != best) tie.push_back(entry(g, taken[g]).line.player);
        out.mergeTies.push_back(tie);
        if (pick == count - 1) out.boundaryTie = tie;
      }
    } else {
      // No merge: every candidate is promoted; take groups round-robin.
      best = heads[pick % heads.size()];
      for (int g : heads)
        if (taken[g] < taken[best]) best = g;
    }
    out.promoted.push_back(entry(best, taken[best]).line.player);
    ++taken[best];
    lastGroup = best;
  }

  // Within-group boundary: the last candidate taken from a group against
  // the first eligible player that group leaves out.
  if (out.boundaryTie.empty()) {
    for (int g = 0; g < groups; ++g) {
      const std::size_t k = taken[g];
      if (k == 0 || k >= eligible[g].size()) continue;
      if (merge && g != lastGroup) continue;
      if (random_between(standings[g], eligible[g][k - 1], eligible[g][k])) {
        out.boundaryTie = {entry(g, k - 1).line.player, entry(g, k).line.player};
        break;
      }
    }
  }
  return out;
}

Step complete_tier(TournamentState state, CompletionOptions options, std::int64_t now) {
  const TierRun& t = open_tier_or_throw(state);
  const auto missing = missing_games(state);
  if (!missing.empty()) {
    std::vector<std::string> refs;
    for (const auto& r : missing) refs.push_back(r.to_string());
    throw Error(ErrorCode::IncompleteResults, std::to_string(refs.size()) + " game(s) unreported", refs);
  }

  const int tier = t.index;
  const bool finalTier = tier == static_cast<int>(state.config.tiers.size());
  std::vector<RankedStanding> standings;
  for (std::size_t g = 0; g < t.groups.size(); ++g) standings.push_back(group_standing(state, tier, static_cast<int>(g) + 1));

  const int count = finalTier ? 1 : state.config.tiers[tier - 1].promoteCount;
  RngStream selectRng(state.config.seed, stream_name(finalTier ? "winner" : "promotion", tier));
  const auto decision = select_promotions(standings, count, t.withdrawn, selectRng);

  if (state.config.tieBreakMode == TieBreakMode::Interactive && !options.acceptRandom &&
      !decision.boundaryTie.empty()) {
    throw Error(ErrorCode::PendingDecision, "random tie-break needs director confirmation", decision.boundaryTie);
  }

  Builder b{std::move(state), now, {}};
  for (std::size_t g = 0; g < standings.size(); ++g) {
    for (const auto& tie : standings[g].randomTies) {
      b.emit(ev::TieResolvedRandomly{tier, static_cast<int>(g) + 1, "standing", tie, 0});
    }
  }
  for (const auto& tie : decision.mergeTies) {
    b.emit(ev::TieResolvedRandomly{tier, 0, finalTier ? "winner" : "promotion", tie, tie.size()});
  }
  b.emit(ev::TierCompleted{tier, standings});
  if (finalTier) {
    b.emit(ev::TournamentCompleted{decision.promoted.front()});
  } else {
    b.emit(ev::PromotionsApplied{tier, decision.promoted});
    start_tier(b, tier + 1);
  }
  return b.finish();
}

}  // namespace mtt
