#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtt/events.hpp"
#include "mtt/types.hpp"

namespace mtt {

// E = 1 / (1 + 10^((eloB - eloA) / 400))
double expected_score(double eloA, double eloB);

struct GameModel {
  double drawBase = 0.5;
  // Elo added to White's rating when sampling a game.
  double whiteBonus = 0.0;
};

struct GameProbabilities {
  double winA = 0;
  double draw = 0;
  double winB = 0;
};

// pDraw = min(drawBase, 2E, 2(1-E)); the split preserves E = winA + draw/2.
GameProbabilities game_distribution(double eloA, double eloB, const GameModel& model);

enum class BaselineFormat { RoundRobinAll, SeededKnockout };
std::string to_string(BaselineFormat format);
BaselineFormat parse_baseline(std::string_view name);

struct SimPlayerRow {
  PlayerId player;
  int elo = 0;
  std::uint64_t wins = 0;
  double winFreq = 0;
  double meanGames = 0;
  double meanColorDiff = 0;
  double meanBreaks = 0;
};

struct SimReport {
  std::string format;
  // Roster order.
  std::vector<SimPlayerRow> players;
  PlayerId topEloPlayer;
  double topEloWinFreq = 0;
  double meanGames = 0;
  double meanColorDiff = 0;
  double meanBreaks = 0;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
};

struct SimOptions {
  // Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 1;
};

// One simulated tournament driven through the engine. The per-replication
// seed is derived from (seed, rep).
struct SimulatedTournament {
  std::vector<Event> events;
  PlayerId winner;
};
SimulatedTournament simulate_tournament(const TournamentConfig& config, const std::vector<Player>& roster,
                                        const GameModel& model, std::uint64_t seed, std::uint64_t rep);

SimReport run_replications(const TournamentConfig& config, const std::vector<Player>& roster,
                           const GameModel& model, std::uint64_t n, std::uint64_t seed,
                           SimOptions options = {});

// Round robin: every player in one group, TS winner. Knockout: Elo-seeded
// bracket (roster size a power of two), drawn games replayed with colors
// reversed. Throws RosterSizeUnsupported.
SimReport run_baseline(BaselineFormat format, const std::vector<Player>& roster, const GameModel& model,
                       std::uint64_t n, std::uint64_t seed, SimOptions options = {});

// player,win_freq,mean_games,mean_color_diff
std::string sim_report_csv(const SimReport& report);
std::string sim_report_summary(const SimReport& report);

}  // namespace mtt
