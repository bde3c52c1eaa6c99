#include "mtt/tiering.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "mtt/error.hpp"

namespace mtt {
namespace {

constexpr std::uint64_t kEnumerationLimit = 100'000;
constexpr std::size_t kCountTableBudget = std::size_t{1} << 25;

// |q*sum - k*p| is the deviation scaled by k*q; minimizing it over integers
// is exact.
std::int64_t scaled_deviation(std::int64_t sum, int k, const Rational& target) {
  return std::llabs(target.denominator() * sum - k * target.numerator());
}

SubsetChoice make_choice(std::span<const Player> pool, const std::vector<bool>& chosen,
                         std::uint64_t coMinimizers, std::int64_t scaled, int k,
                         const Rational& target) {
  SubsetChoice out;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (chosen[i]) out.members.push_back(pool[i].id);
  out.coMinimizers = coMinimizers;
  out.deviation = Rational(scaled, k * target.denominator());
  return out;
}

void check_request(std::span<const Player> pool, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "subset size must be positive");
  if (static_cast<std::size_t>(k) > pool.size()) {
    throw Error(ErrorCode::PoolTooSmall, "pool of " + std::to_string(pool.size()) +
                                             " cannot supply " + std::to_string(k) + " players");
  }
}

}  // namespace

TierAssignment assign_tiers(std::span<const Player> roster, const TournamentConfig& config,
                            RngStream& rng) {
  std::vector<Player> sorted(roster.begin(), roster.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Player& a, const Player& b) { return a.id < b.id; });
  rng.shuffle(std::span(sorted));
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Player& a, const Player& b) { return a.elo < b.elo; });

  TierAssignment out;
  std::size_t next = 0;
  for (const auto& tier : config.tiers) {
    std::vector<PlayerId> members;
    for (int i = 0; i < tier.baseSize && next < sorted.size(); ++i) members.push_back(sorted[next++].id);
    if (!out.tiers.empty() && !members.empty() && next - members.size() > 0) {
      const int below = sorted[next - members.size() - 1].elo;
      const int above = sorted[next - members.size()].elo;
      if (below == above) {
        std::vector<PlayerId> tied;
        for (const auto& p : sorted)
          if (p.elo == below) tied.push_back(p.id);
        out.boundaryTies.push_back(std::move(tied));
      }
    }
    out.tiers.push_back(std::move(members));
  }
  return out;
}

__extension__ typedef unsigned __int128 Wide;

std::uint64_t count_subsets(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw Error(ErrorCode::InvalidArgument, "need 0 <= k <= n");
  k = std::min(k, n - k);
  Wide c = 1;
  for (int i = 1; i <= k; ++i) {
    // c * (n - k + i) / i is always an integer at this step.
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (c > UINT64_MAX) throw Error(ErrorCode::InvalidArgument, "binomial coefficient overflows");
  }
  return static_cast<std::uint64_t>(c);
}

Rational mean_elo(std::span<const Player> players) {
  if (players.empty()) throw Error(ErrorCode::InvalidArgument, "mean of no players");
  std::int64_t sum = 0;
  for (const auto& p : players) sum += p.elo;
  return Rational(sum, static_cast<std::int64_t>(players.size()));
}

SubsetChoice min_deviation_subset_enumerate(std::span<const Player> pool, int k,
                                            Rational targetMean, RngStream& rng) {
  check_request(pool, k);
  const int n = static_cast<int>(pool.size());
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::int64_t best = -1;
  std::vector<std::vector<int>> minimizers;
  while (true) {
    std::int64_t sum = 0;
    for (int i : idx) sum += pool[i].elo;
    const std::int64_t d = scaled_deviation(sum, k, targetMean);
    if (best < 0 || d < best) {
      best = d;
      minimizers.clear();
    }
    if (d == best) minimizers.push_back(idx);

    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  const auto& pick = minimizers[rng.below(minimizers.size())];
  std::vector<bool> chosen(pool.size(), false);
  for (int i : pick) chosen[i] = true;
  return make_choice(pool, chosen, minimizers.size(), best, k, targetMean);
}

SubsetChoice min_deviation_subset_dp(std::span<const Player> pool, int k, Rational targetMean,
                                     RngStream& rng) {
  check_request(pool, k);
  const int n = static_cast<int>(pool.size());

  // Shifting every rating and the target by the pool minimum leaves the
  // objective unchanged and keeps the sum axis short.
  int low = pool[0].elo, high = pool[0].elo;
  for (const auto& p : pool) {
    low = std::min(low, p.elo);
    high = std::max(high, p.elo);
  }
  std::vector<int> shifted(n);
  for (int i = 0; i < n; ++i) shifted[i] = pool[i].elo - low;
  const Rational target = targetMean - Rational(low);
  const std::size_t maxSum = static_cast<std::size_t>(k) * static_cast<std::size_t>(high - low);

  const std::size_t layer = (static_cast<std::size_t>(k) + 1) * (maxSum + 1);
  if (layer * (static_cast<std::size_t>(n) + 1) > kCountTableBudget) {
    throw Error(ErrorCode::PoolTooLarge, "subset count table exceeds memory budget");
  }
  // ways[i][j][s]: number of size-j subsets of the first i players with shifted sum s.
  std::vector<std::uint64_t> ways(layer * (n + 1), 0);
  auto at = [&](int i, int j, std::size_t s) -> std::uint64_t& {
    return ways[static_cast<std::size_t>(i) * layer + static_cast<std::size_t>(j) * (maxSum + 1) + s];
  };
  at(0, 0, 0) = 1;
  for (int i = 1; i <= n; ++i) {
    const auto r = static_cast<std::size_t>(shifted[i - 1]);
    for (int j = 0; j <= std::min(i, k); ++j) {
      for (std::size_t s = 0; s <= maxSum; ++s) {
        std::uint64_t v = at(i - 1, j, s);
        if (j > 0 && s >= r) {
          if (__builtin_add_overflow(v, at(i - 1, j - 1, s - r), &v)) {
            throw Error(ErrorCode::PoolTooLarge, "subset count overflows 64 bits");
          }
        }
        at(i, j, s) = v;
      }
    }
  }

  std::int64_t best = -1;
  for (std::size_t s = 0; s <= maxSum; ++s) {
    if (at(n, k, s) == 0) continue;
    const std::int64_t d = scaled_deviation(static_cast<std::int64_t>(s), k, target);
    if (best < 0 || d < best) best = d;
  }
  std::uint64_t total = 0;
  for (std::size_t s = 0; s <= maxSum; ++s) {
    if (at(n, k, s) != 0 && scaled_deviation(static_cast<std::int64_t>(s), k, target) == best) {
      if (__builtin_add_overflow(total, at(n, k, s), &total)) {
        throw Error(ErrorCode::PoolTooLarge, "minimizer count overflows 64 bits");
      }
    }
  }

  // Unrank a uniformly drawn minimizer.
  std::uint64_t rank = rng.below(total);
  std::size_t sum = 0;
  for (std::size_t s = 0; s <= maxSum; ++s) {
    if (at(n, k, s) == 0 || scaled_deviation(static_cast<std::int64_t>(s), k, target) != best) continue;
    if (rank < at(n, k, s)) {
      sum = s;
      break;
    }
    rank -= at(n, k, s);
  }
  std::vector<bool> chosen(n, false);
  int j = k;
  for (int i = n; i >= 1 && j > 0; --i) {
    const std::uint64_t without = at(i - 1, j, sum);
    if (rank < without) continue;
    rank -= without;
    chosen[i - 1] = true;
    sum -= static_cast<std::size_t>(shifted[i - 1]);
    --j;
  }
  return make_choice(pool, chosen, total, best, k, targetMean);
}

SubsetChoice min_deviation_subset(std::span<const Player> pool, int k, Rational targetMean,
                                  RngStream& rng) {
  check_request(pool, k);
  if (count_subsets(static_cast<int>(pool.size()), k) <= kEnumerationLimit) {
    return min_deviation_subset_enumerate(pool, k, targetMean, rng);
  }
  return min_deviation_subset_dp(pool, k, targetMean, rng);
}

GroupSplit split_tier(std::span<const Player> tierPlayers, int groupSize, RngStream& rng) {
  if (groupSize < 2) throw Error(ErrorCode::InvalidArgument, "group size must be at least 2");
  GroupSplit out;
  out.targetMean = mean_elo(tierPlayers);
  const auto n = tierPlayers.size();
  if (n <= static_cast<std::size_t>(groupSize)) {
    std::vector<PlayerId> ids;
    for (const auto& p : tierPlayers) ids.push_back(p.id);
    out.groups.push_back(std::move(ids));
    out.groupMeans.push_back(out.targetMean);
    return out;
  }
  if (n % static_cast<std::size_t>(groupSize) != 0) {
    throw Error(ErrorCode::IndivisibleTier, std::to_string(n) + " players cannot form groups of " +
                                                std::to_string(groupSize));
  }

  std::vector<Player> remaining(tierPlayers.begin(), tierPlayers.end());
  while (remaining.size() > static_cast<std::size_t>(groupSize)) {
    auto choice = min_deviation_subset(remaining, groupSize, out.targetMean, rng);
    std::vector<Player> group, rest;
    for (auto& p : remaining) {
      const bool in = std::find(choice.members.begin(), choice.members.end(), p.id) != choice.members.end();
      (in ? group : rest).push_back(std::move(p));
    }
    out.groupMeans.push_back(mean_elo(group));
    out.groups.push_back(std::move(choice.members));
    out.coMinimizers.push_back(choice.coMinimizers);
    remaining = std::move(rest);
  }
  std::vector<PlayerId> last;
  for (const auto& p : remaining) last.push_back(p.id);
  out.groupMeans.push_back(mean_elo(remaining));
  out.groups.push_back(std::move(last));
  return out;
}

}  // namespace mtt
