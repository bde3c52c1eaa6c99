#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtt/rng.hpp"
#include "mtt/types.hpp"

namespace mtt {

struct TierAssignment {
  // tiers[0] is the lowest-rated tier; members sorted by Elo ascending.
  std::vector<std::vector<PlayerId>> tiers;
  // Players sharing a rating that straddled a tier boundary; their
  // placement came from the random stream.
  std::vector<std::vector<PlayerId>> boundaryTies;
};

// Base tier membership: sort by Elo ascending and fill tier 1 first.
TierAssignment assign_tiers(std::span<const Player> roster, const TournamentConfig& config,
                            RngStream& rng);

// Exact binomial coefficient. Throws InvalidArgument on overflow.
std::uint64_t count_subsets(int n, int k);

struct SubsetChoice {
  // In pool order.
  std::vector<PlayerId> members;
  // Number of size-k subsets attaining the minimum deviation.
  std::uint64_t coMinimizers = 0;
  // |mean(members) - target|
  Rational deviation;
};

// Size-k subset whose mean Elo is closest to `targetMean`, chosen uniformly
// among all minimizers. Uses direct enumeration when C(n,k) <= 1e5 and an
// exact subset-sum count table otherwise.
SubsetChoice min_deviation_subset(std::span<const Player> pool, int k, Rational targetMean,
                                  RngStream& rng);

// The two strategies, exposed for cross-checking.
SubsetChoice min_deviation_subset_enumerate(std::span<const Player> pool, int k,
                                            Rational targetMean, RngStream& rng);
SubsetChoice min_deviation_subset_dp(std::span<const Player> pool, int k, Rational targetMean,
                                     RngStream& rng);

struct GroupSplit {
  std::vector<std::vector<PlayerId>> groups;
  std::vector<Rational> groupMeans;
  Rational targetMean;
  // Co-minimizer count of each extraction step; the final remainder group
  // has no entry.
  std::vector<std::uint64_t> coMinimizers;
};

Rational mean_elo(std::span<const Player> players);

// Sequential extraction: each group is the closest-mean subset of what is
// left, always measured against the full tier's mean. Returns the tier as a
// single group when it already fits.
GroupSplit split_tier(std::span<const Player> tierPlayers, int groupSize, RngStream& rng);

}  // namespace mtt
