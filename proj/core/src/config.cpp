#include "mtt/config.hpp"

#include <set>
#include <string>

#include "mtt/error.hpp"

namespace mtt {

int group_count(const TournamentConfig& config, std::size_t i) {
  const int size = config.tier_size(i);
  const int cap = config.tiers[i].maxGroupSize;
  return size <= cap ? 1 : size / cap;
}

TournamentConfig validate_config(const TournamentConfig& config, std::span<const Player> roster) {
  if (config.tiers.empty()) throw Error(ErrorCode::InvalidConfig, "no tiers configured");

  std::set<PlayerId> ids;
  for (const auto& p : roster) {
    if (p.id.empty()) throw Error(ErrorCode::InvalidConfig, "player with empty id");
    if (!ids.insert(p.id).second) throw Error(ErrorCode::DuplicatePlayer, "duplicate player " + p.id);
    if (p.elo <= 0) throw Error(ErrorCode::InvalidConfig, "non-positive rating for " + p.id);
  }

  long long total = 0;
  for (std::size_t i = 0; i < config.tiers.size(); ++i) {
    const auto& t = config.tiers[i];
    const std::string name = "tier " + std::to_string(i + 1);
    if (t.baseSize < 1) throw Error(ErrorCode::InvalidConfig, name + " has no base players");
    if (t.promoteCount < 0) throw Error(ErrorCode::InvalidConfig, name + " has negative promotions");
    if (t.maxGroupSize < 2) throw Error(ErrorCode::InvalidConfig, name + " max group size below 2");
    total += t.baseSize;
  }
  if (total != static_cast<long long>(roster.size())) {
    throw Error(ErrorCode::SizeMismatch, "tier sizes sum to " + std::to_string(total) +
                                             " but roster has " + std::to_string(roster.size()));
  }

  for (std::size_t i = 0; i < config.tiers.size(); ++i) {
    const auto& t = config.tiers[i];
    const std::string name = "tier " + std::to_string(i + 1);
    const int size = config.tier_size(i);
    if (size < 2) throw Error(ErrorCode::DegenerateTier, name + " would have " + std::to_string(size) + " player(s)");
    const bool last = i + 1 == config.tiers.size();
    if (last && t.promoteCount != 0) throw Error(ErrorCode::InvalidConfig, "final tier cannot promote");
    if (!last && t.promoteCount < 1) throw Error(ErrorCode::InvalidConfig, name + " promotes nobody");
    if (t.promoteCount >= size) {
      throw Error(ErrorCode::InvalidConfig, name + " promotes " + std::to_string(t.promoteCount) +
                                                " of " + std::to_string(size) + " players");
    }
    if (size > t.maxGroupSize && size % t.maxGroupSize != 0) {
      throw Error(ErrorCode::IndivisibleTier, name + " of " + std::to_string(size) +
                                                  " players cannot form groups of " +
                                                  std::to_string(t.maxGroupSize));
    }
  }
  return config;
}

}  // namespace mtt
