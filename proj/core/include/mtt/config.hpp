#pragma once

#include <span>

#include "mtt/types.hpp"

namespace mtt {

// Checks config against roster and returns it unchanged when valid.
// Errors: SizeMismatch, DegenerateTier, DuplicatePlayer, IndivisibleTier,
// InvalidConfig.
TournamentConfig validate_config(const TournamentConfig& config, std::span<const Player> roster);

// Number of groups tier `i` (0-based) is split into.
int group_count(const TournamentConfig& config, std::size_t i);

}  // namespace mtt
