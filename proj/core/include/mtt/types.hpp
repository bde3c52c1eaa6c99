#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace mtt {

using Rational = boost::rational<std::int64_t>;
using PlayerId = std::string;

double to_double(const Rational& r);

struct Player {
  PlayerId id;
  std::string name;
  int elo = 0;

  bool operator==(const Player&) const = default;
};

enum class Color { White, Black, Bye };

enum class GameResult { WhiteWin, BlackWin, Draw };

// "1-0", "0-1", "1/2-1/2"
std::string_view to_token(GameResult r);
std::optional<GameResult> parse_result_token(std::string_view token);

// Identifies one pairing of a published schedule: T<tier>G<group>R<round>B<board>,
// all components 1-based.
struct GameRef {
  int tier = 0;
  int group = 0;
  int round = 0;
  int board = 0;

  std::string to_string() const;
  static std::optional<GameRef> parse(std::string_view text);

  auto operator<=>(const GameRef&) const = default;
};

struct GameRecord {
  PlayerId white;
  PlayerId black;
  GameResult result = GameResult::Draw;
  // Full moves. 0 marks a forfeit or an unknown length; such wins are kept
  // out of the fewer-moves tie-break.
  int moveCount = 0;
  int round = 0;
  int group = 0;
  bool forfeit = false;

  bool involves(const PlayerId& p) const { return white == p || black == p; }
  // +1 if `p` won, -1 if `p` lost, 0 for a draw. `p` must be a participant.
  int outcome_for(const PlayerId& p) const;

  bool operator==(const GameRecord&) const = default;
};

enum class TieBreakMode { Auto, Interactive };

struct TierConfig {
  int baseSize = 0;
  int promoteCount = 0;
  int maxGroupSize = 10;

  bool operator==(const TierConfig&) const = default;
};

struct TournamentConfig {
  // Index 0 is the lowest-rated tier.
  std::vector<TierConfig> tiers;
  std::uint64_t seed = 0;
  TieBreakMode tieBreakMode = TieBreakMode::Auto;

  // Size of tier `i` (0-based) after receiving promotions from below.
  int tier_size(std::size_t i) const;
  bool operator==(const TournamentConfig&) const = default;
};

}  // namespace mtt
