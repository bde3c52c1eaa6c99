#pragma once
// Drives tournaments through the engine for tests.

#include <filesystem>
#include <functional>
#include <utility>
#include <vector>

#include "mtt/engine.hpp"
#include "mtt/io.hpp"

namespace testing_support {

using ResultFn = std::function<std::pair<mtt::GameResult, int>(const mtt::PlayerId& white, const mtt::PlayerId& black)>;

struct Session {
  mtt::TournamentState state;
  std::vector<mtt::Event> events;

  void absorb(mtt::Step s) {
    state = std::move(s.state);
    events.insert(events.end(), s.events.begin(), s.events.end());
  }
};

inline std::vector<mtt::Player> top20_roster() {
  return mtt::read_roster(std::filesystem::path(MTT_TEST_DATA_DIR) / "top20_roster.csv");
}

inline mtt::TournamentConfig make_config(std::vector<mtt::TierConfig> tiers, std::uint64_t seed = 2024,
                                         mtt::TieBreakMode mode = mtt::TieBreakMode::Auto) {
  mtt::TournamentConfig c;
  c.tiers = std::move(tiers);
  c.seed = seed;
  c.tieBreakMode = mode;
  return c;
}

inline std::vector<mtt::Player> numbered_roster(int n, int base = 2600, int step = 5) {
  std::vector<mtt::Player> r;
  for (int i = 0; i < n; ++i) {
    const std::string id = "p" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    r.push_back({id, "Player " + std::to_string(i), base + step * i});
  }
  return r;
}

// Enters every missing game of the active tier.
inline void play_tier(Session& run, const ResultFn& fn) {
  for (const auto& ref : mtt::missing_games(run.state)) {
    const auto* slot = run.state.find_game(ref);
    const auto [result, moves] = fn(slot->white, slot->black);
    run.absorb(mtt::enter_result(run.state, ref, result, moves));
  }
}

inline Session play_out(const mtt::TournamentConfig& config, const std::vector<mtt::Player>& roster, const ResultFn& fn) {
  Session run;
  run.absorb(mtt::create_tournament(config, roster));
  while (!run.state.finished()) {
    play_tier(run, fn);
    run.absorb(mtt::complete_tier(run.state, {true}));
  }
  return run;
}

inline ResultFn all_draws() {
  return [](const mtt::PlayerId&, const mtt::PlayerId&) { return std::pair{mtt::GameResult::Draw, 40}; };
}

}  // namespace testing_support
