#include "mtt/state.hpp"

#include <algorithm>
#include <set>

#include "mtt/config.hpp"
#include "mtt/error.hpp"

namespace mtt {
namespace {

[[noreturn]] void illegal(const std::string& what) {
  throw Error(ErrorCode::IllegalTransition, what);
}

void require(bool ok, const std::string& what) {
  if (!ok) illegal(what);
}

std::set<PlayerId> as_set(const std::vector<PlayerId>& ids) { return {ids.begin(), ids.end()}; }

TierRun& open_tier(TournamentState& s, int tier, const std::string& op) {
  TierRun* t = s.active_tier();
  require(t != nullptr && t->index == tier, op + ": tier " + std::to_string(tier) + " is not active");
  return *t;
}

GameSlot* find_slot(TournamentState& s, const GameRef& ref) {
  for (auto& tier : s.tiers) {
    if (tier.index != ref.tier) continue;
    if (ref.group < 1 || ref.group > static_cast<int>(tier.groups.size())) return nullptr;
    for (auto& g : tier.groups[ref.group - 1].games)
      if (g.ref == ref) return &g;
  }
  return nullptr;
}

struct Applier {
  TournamentState& s;

  void operator()(const ev::TournamentCreated& e) {
    require(!s.created(), "TournamentCreated: log already started");
    validate_config(e.config, e.roster);
    require(e.baseTiers.size() == e.config.tiers.size(), "TournamentCreated: tier count mismatch");
    std::set<PlayerId> seen;
    for (std::size_t i = 0; i < e.baseTiers.size(); ++i) {
      require(static_cast<int>(e.baseTiers[i].size()) == e.config.tiers[i].baseSize,
              "TournamentCreated: base tier size mismatch");
      for (const auto& id : e.baseTiers[i]) {
        require(std::any_of(e.roster.begin(), e.roster.end(), [&](const Player& p) { return p.id == id; }),
                "TournamentCreated: unknown player " + id);
        require(seen.insert(id).second, "TournamentCreated: player in two tiers " + id);
      }
    }
    s.config = e.config;
    s.roster = e.roster;
    s.baseTiers = e.baseTiers;
  }

  void operator()(const ev::TierStarted& e) {
    require(s.created(), "TierStarted: no tournament");
    require(!s.finished(), "TierStarted: tournament finished");
    require(e.tier == static_cast<int>(s.tiers.size()) + 1, "TierStarted: tiers must start in order");
    require(e.tier <= static_cast<int>(s.config.tiers.size()), "TierStarted: no such tier");
    std::vector<PlayerId> expected = s.baseTiers[e.tier - 1];
    if (e.tier > 1) {
      const TierRun& prev = s.tiers.back();
      require(prev.completed && prev.promotionsApplied, "TierStarted: previous tier still open");
      expected.insert(expected.end(), prev.promoted.begin(), prev.promoted.end());
    }
    require(as_set(e.players) == as_set(expected) && e.players.size() == expected.size(),
            "TierStarted: players differ from base tier plus promotions");
    TierRun run;
    run.index = e.tier;
    run.players = e.players;
    s.tiers.push_back(std::move(run));
  }

  void operator()(const ev::GroupsFormed& e) {
    TierRun& t = open_tier(s, e.tier, "GroupsFormed");
    require(!t.groupsFormed, "GroupsFormed: groups already formed");
    std::vector<PlayerId> all;
    for (const auto& g : e.groups) {
      require(g.size() >= 2, "GroupsFormed: group smaller than 2");
      all.insert(all.end(), g.begin(), g.end());
    }
    require(all.size() == t.players.size() && as_set(all) == as_set(t.players),
            "GroupsFormed: groups do not partition the tier");
    for (const auto& g : e.groups) t.groups.push_back(GroupRun{g, {}, {}, false});
    t.groupsFormed = true;
  }

  void operator()(const ev::PairingsPublished& e) {
    TierRun& t = open_tier(s, e.tier, "PairingsPublished");
    require(t.groupsFormed, "PairingsPublished: groups not formed");
    require(e.group >= 1 && e.group <= static_cast<int>(t.groups.size()), "PairingsPublished: no such group");
    GroupRun& g = t.groups[e.group - 1];
    require(!g.published, "PairingsPublished: group already published");

    const auto members = as_set(g.members);
    std::set<std::pair<PlayerId, PlayerId>> pairs;
    std::vector<GameSlot> slots;
    for (std::size_t r = 0; r < e.schedule.size(); ++r) {
      const auto& round = e.schedule[r];
      require(round.round == static_cast<int>(r) + 1, "PairingsPublished: rounds out of order");
      for (std::size_t b = 0; b < round.boards.size(); ++b) {
        const auto& board = round.boards[b];
        require(members.count(board.white) && members.count(board.black) && board.white != board.black,
                "PairingsPublished: pairing outside group");
        auto key = std::minmax(board.white, board.black);
        require(pairs.insert({key.first, key.second}).second, "PairingsPublished: pair meets twice");
        slots.push_back(GameSlot{GameRef{e.tier, e.group, round.round, static_cast<int>(b) + 1},
                                 board.white, board.black, std::nullopt, 0, false});
      }
    }
    const std::size_t n = members.size();
    require(pairs.size() == n * (n - 1) / 2, "PairingsPublished: schedule is not a full round robin");
    g.schedule = e.schedule;
    g.games = std::move(slots);
    g.published = true;
  }

  void operator()(const ev::ResultEntered& e) {
    TierRun* t = s.active_tier();
    require(t != nullptr && t->index == e.game.tier && !t->completed,
            "ResultEntered: " + e.game.to_string() + " is not in an open tier");
    GameSlot* slot = find_slot(s, e.game);
    require(slot != nullptr, "ResultEntered: unknown game " + e.game.to_string());
    require(!slot->reported(), "ResultEntered: " + e.game.to_string() + " already reported");
    require(e.moves >= 1, "ResultEntered: move count must be positive");
    slot->result = e.result;
    slot->moves = e.moves;
  }

  void operator()(const ev::PlayerForfeited& e) {
    TierRun& t = open_tier(s, e.tier, "PlayerForfeited");
    require(!t.completed, "PlayerForfeited: tier completed");
    require(std::find(t.players.begin(), t.players.end(), e.player) != t.players.end(),
            "PlayerForfeited: " + e.player + " not in tier");
    require(!t.withdrawn.count(e.player), "PlayerForfeited: " + e.player + " already withdrawn");
    std::set<GameRef> expected;
    for (const auto& g : t.groups)
      for (const auto& slot : g.games)
        if (!slot.reported() && (slot.white == e.player || slot.black == e.player)) expected.insert(slot.ref);
    require(std::set<GameRef>(e.games.begin(), e.games.end()) == expected && e.games.size() == expected.size(),
            "PlayerForfeited: game list differs from the player's unplayed games");
    for (const auto& ref : e.games) {
      GameSlot* slot = find_slot(s, ref);
      slot->result = slot->white == e.player ? GameResult::BlackWin : GameResult::WhiteWin;
      slot->moves = 0;
      slot->forfeit = true;
    }
    t.withdrawn.insert(e.player);
  }

  void operator()(const ev::TieResolvedRandomly& e) {
    require(s.created(), "TieResolvedRandomly: no tournament");
    s.randomTies.push_back(e);
  }

  void operator()(const ev::TierCompleted& e) {
    TierRun& t = open_tier(s, e.tier, "TierCompleted");
    require(!t.completed, "TierCompleted: tier already completed");
    require(t.all_published(), "TierCompleted: pairings not published");
    for (const auto& g : t.groups)
      for (const auto& slot : g.games) require(slot.reported(), "TierCompleted: " + slot.ref.to_string() + " unreported");
    require(e.standings.size() == t.groups.size(), "TierCompleted: one standing per group required");
    for (std::size_t i = 0; i < t.groups.size(); ++i) {
      const auto order = e.standings[i].order();
      require(order.size() == t.groups[i].members.size() && as_set(order) == as_set(t.groups[i].members),
              "TierCompleted: standing does not match group");
    }
    t.standings = e.standings;
    t.completed = true;
  }

  void operator()(const ev::PromotionsApplied& e) {
    TierRun& t = open_tier(s, e.fromTier, "PromotionsApplied");
    require(t.completed, "PromotionsApplied: tier not completed");
    require(!t.promotionsApplied, "PromotionsApplied: already applied");
    require(e.fromTier < static_cast<int>(s.config.tiers.size()), "PromotionsApplied: final tier");
    require(static_cast<int>(e.players.size()) == s.config.tiers[e.fromTier - 1].promoteCount,
            "PromotionsApplied: wrong promotion count");
    require(as_set(e.players).size() == e.players.size(), "PromotionsApplied: duplicate player");
    for (const auto& id : e.players) {
      require(std::find(t.players.begin(), t.players.end(), id) != t.players.end(),
              "PromotionsApplied: " + id + " not in tier");
      require(!t.withdrawn.count(id), "PromotionsApplied: " + id + " withdrew");
    }
    t.promoted = e.players;
    t.promotionsApplied = true;
  }

  void operator()(const ev::TournamentCompleted& e) {
    require(!s.finished(), "TournamentCompleted: already completed");
    const TierRun* t = s.active_tier();
    require(t != nullptr && t->index == static_cast<int>(s.config.tiers.size()) && t->completed,
            "TournamentCompleted: final tier not completed");
    require(std::find(t->players.begin(), t->players.end(), e.winner) != t->players.end(),
            "TournamentCompleted: winner not in final tier");
    s.winner = e.winner;
  }
};

}  // namespace

std::vector<GameRecord> GroupRun::records() const {
  std::vector<GameRecord> out;
  for (const auto& g : games) {
    if (!g.reported()) continue;
    out.push_back(GameRecord{g.white, g.black, *g.result, g.moves, g.ref.round, g.ref.group, g.forfeit});
  }
  return out;
}

bool TierRun::all_published() const {
  return groupsFormed && std::all_of(groups.begin(), groups.end(), [](const GroupRun& g) { return g.published; });
}

const Player* TournamentState::find_player(const PlayerId& id) const {
  for (const auto& p : roster)
    if (p.id == id) return &p;
  return nullptr;
}

const GameSlot* TournamentState::find_game(const GameRef& ref) const {
  return find_slot(const_cast<TournamentState&>(*this), ref);
}

TournamentState apply_event(TournamentState state, const Event& event) {
  std::visit(Applier{state}, event.payload);
  ++state.eventCount;
  return state;
}

TournamentState replay(std::span<const Event> events) {
  TournamentState state;
  for (const auto& e : events) state = apply_event(std::move(state), e);
  return state;
}

}  // namespace mtt
