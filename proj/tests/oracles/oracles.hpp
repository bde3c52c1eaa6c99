#pragma once
// Brute-force reference implementations used only by tests. They share no
// code with the library beyond plain data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace oracle {

using Q = boost::rational<std::int64_t>;

// ---- subsets ---------------------------------------------------------------

struct SubsetMin {
  Q deviation;           // |mean - target|
  std::uint64_t count;   // subsets attaining it
};

inline SubsetMin min_subset_deviation(const std::vector<int>& ratings, int k, Q target) {
  const int n = static_cast<int>(ratings.size());
  std::optional<Q> best;
  std::uint64_t count = 0;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  if (k == 0) return {target < 0 ? -target : target, 1};
  while (true) {
    std::int64_t sum = 0;
    for (int i : pick) sum += ratings[i];
    Q dev = Q(sum, k) - target;
    if (dev < 0) dev = -dev;
    if (!best || dev < *best) {
      best = dev;
      count = 1;
    } else if (dev == *best) {
      ++count;
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return {*best, count};
}

inline std::uint64_t binomial(int n, int k) {
  // Pascal's triangle, no multiplicative shortcut.
  std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
  }
  return c[n][k];
}

// ---- breaks ----------------------------------------------------------------

// Rounds of unordered pairs over players 0..n-1 (every player plays every
// round). Returns the fewest breaks over all 2^games colorings by DP over
// the last color of each player, which visits every coloring's state.
inline int min_breaks_dp(int n, const std::vector<std::vector<std::pair<int, int>>>& rounds) {
  const int full = 1 << n;
  const int inf = 1 << 29;
  // state bit p = 1 means p's last game was White.
  std::vector<int> cost(full, inf), next(full);
  bool first = true;
  for (const auto& round : rounds) {
    std::fill(next.begin(), next.end(), inf);
    const int boards = static_cast<int>(round.size());
    for (int s = 0; s < full; ++s) {
      if (!first && cost[s] >= inf) continue;
      for (int mask = 0; mask < (1 << boards); ++mask) {
        int t = s, breaks = 0;
        for (int b = 0; b < boards; ++b) {
          auto [x, y] = round[b];
          if (mask >> b & 1) std::swap(x, y);  // x is White
          if (!first) {
            breaks += (s >> x & 1) == 1;
            breaks += (s >> y & 1) == 0;
          }
          t |= 1 << x;
          t &= ~(1 << y);
        }
        const int base = first ? 0 : cost[s];
        next[t] = std::min(next[t], base + breaks);
      }
      if (first) break;
    }
    cost.swap(next);
    first = false;
  }
  return *std::min_element(cost.begin(), cost.end());
}

// Plain 2^games enumeration for small n.
inline int min_breaks_enumerate(int n, const std::vector<std::vector<std::pair<int, int>>>& rounds) {
  std::vector<std::pair<int, int>> games;
  for (const auto& r : rounds) games.insert(games.end(), r.begin(), r.end());
  const int g = static_cast<int>(games.size());
  int best = 1 << 29;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g); ++mask) {
    std::vector<std::vector<int>> seq(n);
    for (int i = 0; i < g; ++i) {
      const bool swap = mask >> i & 1;
      seq[swap ? games[i].second : games[i].first].push_back(1);
      seq[swap ? games[i].first : games[i].second].push_back(0);
    }
    int breaks = 0;
    for (const auto& s : seq)
      for (std::size_t i = 1; i < s.size(); ++i) breaks += s[i] == s[i - 1];
    best = std::min(best, breaks);
  }
  return best;
}

// ---- tie-break cascade -------------------------------------------------------

struct Line {
  std::string id;
  int wins = 0, losses = 0, draws = 0;
  std::vector<int> moves;  // per win; 0 = unknown
};

// 'i', 'w' (more wins), 'm' (fewer moves), or 0 when undecided. Positive
// `who` means a is ahead.
struct PairVerdict {
  char rule = 0;
  int who = 0;
};

inline PairVerdict wins_moves(const Line& a, const Line& b) {
  if (a.wins != b.wins) return {'w', a.wins > b.wins ? 1 : -1};
  auto mean = [](const std::vector<int>& m) -> std::optional<Q> {
    std::int64_t s = 0, c = 0;
    for (int x : m)
      if (x > 0) s += x, ++c;
    if (c == 0) return std::nullopt;
    return Q(s, c);
  };
  const auto ma = mean(a.moves), mb = mean(b.moves);
  if (!ma && !mb) return {};
  if (!ma) return {'m', -1};
  if (!mb) return {'m', 1};
  if (*ma == *mb) return {};
  return {'m', *ma < *mb ? 1 : -1};
}

// Tied set ranking reference. `net(a,b)` is a's decisive wins over b minus
// b's over a. Rule (i) is dropped between players that reach each other in
// the head-to-head digraph, then (repeatedly) between players that reach
// each other in the combined decision digraph. Returns every permutation of
// the set consistent with the remaining decisions, plus the pair verdicts.
struct TiedSetReference {
  std::vector<std::vector<PairVerdict>> verdict;  // [a][b]
  std::vector<std::vector<std::size_t>> orders;   // consistent permutations
};

inline std::vector<std::vector<bool>> closure(std::vector<std::vector<bool>> r) {
  const std::size_t m = r.size();
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

inline TiedSetReference rank_tied(const std::vector<Line>& set, const std::function<int(std::size_t, std::size_t)>& net) {
  const std::size_t m = set.size();
  std::vector<std::vector<bool>> beat(m, std::vector<bool>(m, false)), dropI(m, std::vector<bool>(m, false));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) beat[a][b] = a != b && net(a, b) > 0;
  auto reach = closure(beat);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) dropI[a][b] = a != b && reach[a][b] && reach[b][a];

  TiedSetReference out;
  auto compute = [&] {
    out.verdict.assign(m, std::vector<PairVerdict>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        if (a == b) continue;
        const int h = net(a, b);
        if (h != 0 && !dropI[a][b]) out.verdict[a][b] = {'i', h > 0 ? 1 : -1};
        else out.verdict[a][b] = wins_moves(set[a], set[b]);
      }
  };
  for (;;) {
    compute();
    std::vector<std::vector<bool>> ahead(m, std::vector<bool>(m, false));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) ahead[a][b] = a != b && out.verdict[a][b].who > 0;
    const auto r = closure(ahead);
    bool changed = false;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (a != b && r[a][b] && r[b][a] && !dropI[a][b]) dropI[a][b] = changed = true;
    if (!changed) break;
  }

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = i + 1; j < m && ok; ++j)
        if (out.verdict[perm[i]][perm[j]].who < 0) ok = false;
    if (ok) out.orders.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline char rule_code_to_char(const std::string& code) {
  if (code == "i") return 'i';
  if (code == "ii") return 'w';
  if (code == "iii") return 'm';
  if (code == "iv") return 'r';
  return 's';
}

// ---- group scoring from raw results ----------------------------------------

struct RawGame {
  std::string white, black;
  int result;  // +1 white won, -1 black won, 0 draw
  int moves;
};

inline std::map<std::string, Line> tally(const std::vector<std::string>& members, const std::vector<RawGame>& games) {
  std::map<std::string, Line> lines;
  for (const auto& m : members) lines[m].id = m;
  for (const auto& g : games) {
    auto& w = lines[g.white];
    auto& b = lines[g.black];
    if (g.result > 0) {
      ++w.wins, ++b.losses;
      w.moves.push_back(g.moves);
    } else if (g.result < 0) {
      ++b.wins, ++w.losses;
      b.moves.push_back(g.moves);
    } else {
      ++w.draws, ++b.draws;
    }
  }
  return lines;
}

inline Q ts(const Line& l) {
  const int g = l.wins + l.losses + l.draws;
  return g == 0 ? Q(0) : Q(l.wins - l.losses, g);
}

}  // namespace oracle
