#include "mtt/scoring.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "mtt/error.hpp"

namespace mtt {

TierScore::TierScore(std::int64_t numerator, std::int64_t games) : num_(numerator), den_(games) {
  if (games < 0 || numerator > games || numerator < -games) {
    throw Error(ErrorCode::InvalidArgument, "tier score outside [-1, +1]");
  }
}

std::strong_ordering operator<=>(const TierScore& a, const TierScore& b) {
  const Rational x = a.value();
  const Rational y = b.value();
  if (x < y) return std::strong_ordering::less;
  if (y < x) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

TierScore tier_score(int wins, int losses, int draws) {
  if (wins < 0 || losses < 0 || draws < 0) {
    throw Error(ErrorCode::InvalidArgument, "negative game count");
  }
  const int games = wins + losses + draws;
  if (games == 0) throw Error(ErrorCode::NoGames, "tier score needs at least one game");
  return TierScore(wins - losses, games);
}

std::vector<ScoreLine> score_lines(std::span<const PlayerId> members,
                                   std::span<const GameRecord> games) {
  std::vector<ScoreLine> lines;
  lines.reserve(members.size());
  for (const auto& id : members) {
    ScoreLine line;
    line.player = id;
    for (const auto& g : games) {
      if (!g.involves(id)) continue;
      switch (g.outcome_for(id)) {
        case 1:
          ++line.wins;
          line.movesToWin.push_back(g.forfeit ? 0 : g.moveCount);
          break;
        case -1: ++line.losses; break;
        default: ++line.draws; break;
      }
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

TierScore pairwise_ts(const PlayerId& a, std::span<const GameRecord> gamesAB) {
  if (gamesAB.empty()) return TierScore();
  const PlayerId* opponent = nullptr;
  std::int64_t net = 0;
  for (const auto& g : gamesAB) {
    if (!g.involves(a) || g.white == g.black) {
      throw Error(ErrorCode::MixedPair, "game does not involve " + a);
    }
    const PlayerId& other = g.white == a ? g.black : g.white;
    if (opponent == nullptr) {
      opponent = &other;
    } else if (*opponent != other) {
      throw Error(ErrorCode::MixedPair, "games against both " + *opponent + " and " + other);
    }
    net += g.outcome_for(a);
  }
  return TierScore(net, static_cast<std::int64_t>(gamesAB.size()));
}

Rational mean_pairwise_ts(const PlayerId& player, std::span<const PlayerId> opponents,
                          const HeadToHeadDb& db) {
  if (opponents.empty()) throw Error(ErrorCode::InvalidArgument, "no opponents");
  Rational sum(0);
  for (const auto& o : opponents) {
    if (o == player) throw Error(ErrorCode::SelfOpponent, player + " listed as own opponent");
    const auto games = db.games_between(player, o);
    sum += pairwise_ts(player, games).value();
  }
  return sum / static_cast<std::int64_t>(opponents.size());
}

std::string_view to_code(TieRule rule) {
  switch (rule) {
    case TieRule::None: return "-";
    case TieRule::Score: return "score";
    case TieRule::HeadToHead: return "i";
    case TieRule::MoreWins: return "ii";
    case TieRule::FewerMoves: return "iii";
    case TieRule::Random: return "iv";
  }
  return "?";
}

std::string_view describe(TieRule rule) {
  switch (rule) {
    case TieRule::None: return "";
    case TieRule::Score: return "higher tier score";
    case TieRule::HeadToHead: return "head-to-head win";
    case TieRule::MoreWins: return "more wins";
    case TieRule::FewerMoves: return "fewer moves per win";
    case TieRule::Random: return "random draw";
  }
  return "";
}

std::optional<TieRule> parse_tie_rule(std::string_view code) {
  for (auto r : {TieRule::None, TieRule::Score, TieRule::HeadToHead, TieRule::MoreWins,
                 TieRule::FewerMoves, TieRule::Random}) {
    if (to_code(r) == code) return r;
  }
  return std::nullopt;
}

std::vector<PlayerId> RankedStanding::order() const {
  std::vector<PlayerId> ids;
  ids.reserve(entries.size());
  for (const auto& e : entries) ids.push_back(e.line.player);
  return ids;
}

int compare_moves_per_win(std::span<const int> a, std::span<const int> b) {
  auto stats = [](std::span<const int> moves) {
    std::int64_t sum = 0, count = 0;
    for (int m : moves) {
      if (m > 0) {
        sum += m;
        ++count;
      }
    }
    return std::pair{sum, count};
  };
  const auto [sa, ca] = stats(a);
  const auto [sb, cb] = stats(b);
  if (ca == 0 && cb == 0) return 0;
  if (ca == 0) return 1;
  if (cb == 0) return -1;
  const std::int64_t lhs = sa * cb;
  const std::int64_t rhs = sb * ca;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

namespace {

// Strongly connected components of a dense digraph; returns a component id
// per vertex plus component sizes.
struct Components {
  std::vector<int> id;
  std::vector<int> size;
  bool same_cycle(std::size_t a, std::size_t b) const { return id[a] == id[b] && size[id[a]] > 1; }
};

Components strongly_connected(const std::vector<std::vector<bool>>& adj) {
  const int n = static_cast<int>(adj.size());
  Components out{std::vector<int>(n, -1), {}};
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> onStack(n, false);
  int counter = 0;

  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    onStack[v] = true;
    for (int w = 0; w < n; ++w) {
      if (!adj[v][w]) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (onStack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      const int comp = static_cast<int>(out.size.size());
      int count = 0, w;
      do {
        w = stack.back();
        stack.pop_back();
        onStack[w] = false;
        out.id[w] = comp;
        ++count;
      } while (w != v);
      out.size.push_back(count);
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return out;
}

struct Decision {
  int winner = -1;  // index into the tied set, -1 if undecided
  TieRule rule = TieRule::Random;
};

// Orders one set of entries with equal keys. Appends the ordered entries to
// `out`, labelling every entry after the first.
void rank_tied_set(std::vector<CascadeEntry>& tied, const HeadToHeadFn& headToHead, RngStream& rng,
                   RankedStanding& out) {
  const std::size_t m = tied.size();
  std::vector<std::vector<int>> net(m, std::vector<int>(m, 0));
  std::vector<std::vector<bool>> beat(m, std::vector<bool>(m, false));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      net[a][b] = headToHead ? headToHead(tied[a].line.player, tied[b].line.player) : 0;
      beat[a][b] = net[a][b] > 0;
    }
  }

  // Head-to-head cycles make rule (i) inapplicable among their members.
  std::vector<std::vector<bool>> suppressed(m, std::vector<bool>(m, false));
  const auto beatCycles = strongly_connected(beat);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) suppressed[a][b] = a != b && beatCycles.same_cycle(a, b);

  auto decide = [&](std::size_t a, std::size_t b) -> Decision {
    if (!suppressed[a][b] && net[a][b] != 0) {
      return {net[a][b] > 0 ? static_cast<int>(a) : static_cast<int>(b), TieRule::HeadToHead};
    }
    const auto& la = tied[a].line;
    const auto& lb = tied[b].line;
    if (la.wins != lb.wins) {
      return {la.wins > lb.wins ? static_cast<int>(a) : static_cast<int>(b), TieRule::MoreWins};
    }
    const int moves = compare_moves_per_win(la.movesToWin, lb.movesToWin);
    if (moves != 0) return {moves < 0 ? static_cast<int>(a) : static_cast<int>(b), TieRule::FewerMoves};
    return {};
  };

  // A surviving head-to-head edge can still close a cycle through rules
  // (ii)/(iii). Suspend rule (i) inside such cycles too; what remains is a
  // lexicographic order and therefore acyclic.
  std::vector<std::vector<bool>> decided(m, std::vector<bool>(m, false));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b) decided[a][b] = decide(a, b).winner == static_cast<int>(a);
  const auto mixedCycles = strongly_connected(decided);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && mixedCycles.same_cycle(a, b)) suppressed[a][b] = true;

  std::vector<int> indegree(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      decided[a][b] = decide(a, b).winner == static_cast<int>(a);
      if (decided[a][b]) ++indegree[b];
    }
  }

  // Topological order of the decided relation; the random priority picks
  // among mutually undecided candidates.
  std::vector<std::uint64_t> priority;
  std::vector<bool> placed(m, false);
  std::vector<std::size_t> order;
  std::vector<std::size_t> randomMembers;
  while (order.size() < m) {
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < m; ++v)
      if (!placed[v] && indegree[v] == 0) ready.push_back(v);
    std::size_t pick = ready.front();
    if (ready.size() > 1) {
      if (priority.empty()) {
        priority.resize(m);
        std::iota(priority.begin(), priority.end(), 0);
        rng.shuffle(std::span(priority));
      }
      for (auto v : ready) {
        if (priority[v] > priority[pick]) pick = v;
        if (std::find(randomMembers.begin(), randomMembers.end(), v) == randomMembers.end())
          randomMembers.push_back(v);
      }
    }
    placed[pick] = true;
    order.push_back(pick);
    for (std::size_t b = 0; b < m; ++b)
      if (decided[pick][b]) --indegree[b];
  }

  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t v = order[k];
    StandingEntry entry{tied[v].line, tied[v].key, TieRule::Score, false};
    if (k > 0) {
      const std::size_t u = order[k - 1];
      const Decision d = decide(u, v);
      entry.rule = d.winner < 0 ? TieRule::Random : d.rule;
      entry.headToHeadSuspended = suppressed[u][v] && net[u][v] != 0;
    }
    out.entries.push_back(std::move(entry));
  }

  if (!randomMembers.empty()) {
    std::vector<PlayerId> ids;
    for (auto v : order)
      if (std::find(randomMembers.begin(), randomMembers.end(), v) != randomMembers.end())
        ids.push_back(tied[v].line.player);
    out.randomTies.push_back(std::move(ids));
  }
}

}  // namespace

RankedStanding rank_with_cascade(std::vector<CascadeEntry> entries, const HeadToHeadFn& headToHead,
                                 RngStream& rng) {
  // Canonical input order keeps the result independent of how the caller
  // listed the players.
  std::sort(entries.begin(), entries.end(), [](const CascadeEntry& a, const CascadeEntry& b) {
    if (a.key != b.key) return a.key > b.key;
    return a.line.player < b.line.player;
  });

  RankedStanding out;
  out.entries.reserve(entries.size());
  std::size_t i = 0;
  while (i < entries.size()) {
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].key == entries[i].key) ++j;
    std::vector<CascadeEntry> tied(std::make_move_iterator(entries.begin() + i),
                                   std::make_move_iterator(entries.begin() + j));
    const std::size_t first = out.entries.size();
    if (tied.size() == 1) {
      out.entries.push_back({std::move(tied[0].line), tied[0].key, TieRule::Score, false});
    } else {
      rank_tied_set(tied, headToHead, rng, out);
    }
    out.entries[first].rule = first == 0 ? TieRule::None : TieRule::Score;
    i = j;
  }
  return out;
}

RankedStanding rank_group(std::span<const ScoreLine> scores, std::span<const GameRecord> games,
                          RngStream& rng) {
  std::vector<PlayerId> members;
  for (const auto& s : scores) members.push_back(s.player);
  for (const auto& g : games) {
    const bool known = std::find(members.begin(), members.end(), g.white) != members.end() &&
                       std::find(members.begin(), members.end(), g.black) != members.end();
    if (!known) {
      throw Error(ErrorCode::InconsistentScores,
                  "game " + g.white + "-" + g.black + " involves a player outside the group");
    }
  }
  const auto recomputed = score_lines(members, games);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    auto a = scores[i].movesToWin;
    auto b = recomputed[i].movesToWin;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (scores[i].wins != recomputed[i].wins || scores[i].losses != recomputed[i].losses ||
        scores[i].draws != recomputed[i].draws || a != b) {
      throw Error(ErrorCode::InconsistentScores, "score line of " + scores[i].player +
                                                     " disagrees with the group's games");
    }
  }

  std::map<std::pair<PlayerId, PlayerId>, int> net;
  for (const auto& g : games) {
    const int o = g.outcome_for(g.white);
    net[{g.white, g.black}] += o;
    net[{g.black, g.white}] -= o;
  }
  HeadToHeadFn h2h = [&net](const PlayerId& a, const PlayerId& b) {
    auto it = net.find({a, b});
    return it == net.end() ? 0 : it->second;
  };

  std::vector<CascadeEntry> entries;
  entries.reserve(scores.size());
  for (const auto& s : scores) entries.push_back({s, s.score().value()});
  return rank_with_cascade(std::move(entries), h2h, rng);
}

}  // namespace mtt
