#include "mtt/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "mtt/engine.hpp"
#include "mtt/error.hpp"
#include "mtt/scheduling.hpp"

namespace mtt {

double expected_score(double eloA, double eloB) { return 1.0 / (1.0 + std::pow(10.0, (eloB - eloA) / 400.0)); }

GameProbabilities game_distribution(double eloA, double eloB, const GameModel& model) {
  const double e = expected_score(eloA, eloB);
  const double base = std::clamp(model.drawBase, 0.0, 1.0);
  const double draw = std::min({base, 2.0 * e, 2.0 * (1.0 - e)});
  return {e - draw / 2.0, draw, 1.0 - e - draw / 2.0};
}

std::string to_string(BaselineFormat format) {
  return format == BaselineFormat::RoundRobinAll ? "round-robin" : "knockout";
}

BaselineFormat parse_baseline(std::string_view name) {
  if (name == "round-robin" || name == "roundRobinAll" || name == "round_robin") return BaselineFormat::RoundRobinAll;
  if (name == "knockout" || name == "seededKnockout" || name == "seeded_knockout") return BaselineFormat::SeededKnockout;
  throw Error(ErrorCode::InvalidArgument, "unknown baseline '" + std::string(name) + "'");
}

namespace {

GameResult sample_game(int whiteElo, int blackElo, const GameModel& model, RngStream& rng) {
  const auto p = game_distribution(whiteElo + model.whiteBonus, blackElo, model);
  const double u = rng.uniform01();
  if (u < p.winA) return GameResult::WhiteWin;
  if (u < p.winA + p.draw) return GameResult::Draw;
  return GameResult::BlackWin;
}

int sample_moves(RngStream& rng) { return 20 + static_cast<int>(rng.below(61)); }

// What one replication contributes to the report.
struct RepOutcome {
  std::size_t winner = 0;
  std::vector<int> games;
  std::vector<int> colorDiff;
  std::vector<int> breaks;
};

std::map<PlayerId, std::size_t> index_of(const std::vector<Player>& roster) {
  std::map<PlayerId, std::size_t> idx;
  for (std::size_t i = 0; i < roster.size(); ++i) idx[roster[i].id] = i;
  return idx;
}

std::string rep_name(std::string_view what, std::uint64_t rep) { return std::string(what) + "/rep" + std::to_string(rep); }

struct EngineRun {
  TournamentState state;
  std::vector<Event> events;
};

EngineRun run_engine(TournamentConfig config, const std::vector<Player>& roster, const GameModel& model,
                     std::uint64_t seed, std::uint64_t rep) {
  config.seed = RngStream::derive(seed, rep_name("tournament", rep));
  config.tieBreakMode = TieBreakMode::Auto;
  RngStream games(seed, rep_name("games", rep));

  auto step = create_tournament(config, roster);
  EngineRun run{std::move(step.state), std::move(step.events)};
  auto absorb = [&](Step s) {
    run.state = std::move(s.state);
    run.events.insert(run.events.end(), std::make_move_iterator(s.events.begin()),
                      std::make_move_iterator(s.events.end()));
  };
  while (!run.state.finished()) {
    // Missing games come back in group, round, board order.
    for (const auto& ref : missing_games(run.state)) {
      const GameSlot* slot = run.state.find_game(ref);
      const auto result = sample_game(run.state.find_player(slot->white)->elo,
                                      run.state.find_player(slot->black)->elo, model, games);
      absorb(enter_result(std::move(run.state), ref, result, sample_moves(games)));
    }
    absorb(complete_tier(std::move(run.state)));
  }
  return run;
}

RepOutcome engine_outcome(const TournamentState& state, const std::map<PlayerId, std::size_t>& idx) {
  const std::size_t n = idx.size();
  RepOutcome out{idx.at(*state.winner), std::vector<int>(n), std::vector<int>(n), std::vector<int>(n)};
  std::vector<int> white(n), black(n);
  for (const auto& tier : state.tiers) {
    for (const auto& group : tier.groups) {
      for (const auto& slot : group.games) {
        ++white[idx.at(slot.white)];
        ++black[idx.at(slot.black)];
      }
      for (const auto& stats : validate_schedule(group.schedule).perPlayer) out.breaks[idx.at(stats.player)] += stats.breaks;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.games[i] = white[i] + black[i];
    out.colorDiff[i] = std::abs(white[i] - black[i]);
  }
  return out;
}

// Standard bracket positions: seed 1 meets seed N, and the top two seeds
// can only meet in the final.
std::vector<std::size_t> bracket_order(std::size_t n) {
  std::vector<std::size_t> order{0};
  while (order.size() < n) {
    const std::size_t m = order.size() * 2;
    std::vector<std::size_t> next;
    for (auto s : order) {
      next.push_back(s);
      next.push_back(m - 1 - s);
    }
    order = std::move(next);
  }
  return order;
}

RepOutcome knockout_outcome(const std::vector<Player>& roster, const std::vector<std::size_t>& bracket,
                            const GameModel& model, std::uint64_t seed, std::uint64_t rep) {
  const std::size_t n = roster.size();
  RngStream rng(seed, rep_name("knockout", rep));
  RepOutcome out{0, std::vector<int>(n), std::vector<int>(n), std::vector<int>(n)};
  std::vector<int> white(n), black(n);
  std::vector<int> lastColor(n, 0);
  auto play = [&](std::size_t w, std::size_t b) {
    ++white[w];
    ++black[b];
    for (auto [p, c] : {std::pair{w, 1}, std::pair{b, -1}}) {
      if (lastColor[p] == c) ++out.breaks[p];
      lastColor[p] = c;
    }
    return sample_game(roster[w].elo, roster[b].elo, model, rng);
  };

  std::vector<std::size_t> alive = bracket;
  while (alive.size() > 1) {
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < alive.size(); i += 2) {
      // The better seed (earlier in the bracket) takes White first.
      std::size_t w = alive[i], b = alive[i + 1];
      std::size_t winner;
      for (int attempt = 0;; ++attempt) {
        const auto p = game_distribution(roster[w].elo + model.whiteBonus, roster[b].elo, model);
        if (p.draw >= 1.0) {
          play(w, b);
          winner = rng.below(2) == 0 ? w : b;
          break;
        }
        const auto r = play(w, b);
        if (r == GameResult::WhiteWin) { winner = w; break; }
        if (r == GameResult::BlackWin) { winner = b; break; }
        std::swap(w, b);
      }
      next.push_back(winner);
    }
    alive = std::move(next);
  }
  out.winner = alive.front();
  for (std::size_t i = 0; i < n; ++i) {
    out.games[i] = white[i] + black[i];
    out.colorDiff[i] = std::abs(white[i] - black[i]);
  }
  return out;
}

template <typename Fn>
SimReport fold(std::string format, const std::vector<Player>& roster, std::uint64_t n, std::uint64_t seed,
               SimOptions options, Fn&& runOne) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "replication count must be at least 1");
  if (roster.empty()) throw Error(ErrorCode::InvalidArgument, "empty roster");
  std::vector<RepOutcome> outcomes(n);
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
  if (threads <= 1) {
    for (std::uint64_t r = 0; r < n; ++r) outcomes[r] = runOne(r);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failureMutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t r; (r = next.fetch_add(1)) < n;) {
          try {
            outcomes[r] = runOne(r);
          } catch (...) {
            std::lock_guard lock(failureMutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Integer totals first, in replication order, so the report does not
  // depend on scheduling.
  const std::size_t players = roster.size();
  std::vector<std::uint64_t> wins(players), games(players), diff(players), breaks(players);
  for (const auto& o : outcomes) {
    ++wins[o.winner];
    for (std::size_t i = 0; i < players; ++i) {
      games[i] += o.games[i];
      diff[i] += o.colorDiff[i];
      breaks[i] += o.breaks[i];
    }
  }

  SimReport report;
  report.format = std::move(format);
  report.replications = n;
  report.seed = seed;
  const double dn = static_cast<double>(n);
  std::uint64_t allGames = 0, allDiff = 0, allBreaks = 0;
  std::size_t top = 0;
  for (std::size_t i = 0; i < players; ++i) {
    report.players.push_back({roster[i].id, roster[i].elo, wins[i], static_cast<double>(wins[i]) / dn,
                              static_cast<double>(games[i]) / dn, static_cast<double>(diff[i]) / dn,
                              static_cast<double>(breaks[i]) / dn});
    allGames += games[i];
    allDiff += diff[i];
    allBreaks += breaks[i];
    if (roster[i].elo > roster[top].elo || (roster[i].elo == roster[top].elo && roster[i].id < roster[top].id)) top = i;
  }
  const double dp = dn * static_cast<double>(players);
  report.topEloPlayer = roster[top].id;
  report.topEloWinFreq = report.players[top].winFreq;
  report.meanGames = static_cast<double>(allGames) / dp;
  report.meanColorDiff = static_cast<double>(allDiff) / dp;
  report.meanBreaks = static_cast<double>(allBreaks) / dp;
  return report;
}

}  // namespace

SimulatedTournament simulate_tournament(const TournamentConfig& config, const std::vector<Player>& roster,
                                        const GameModel& model, std::uint64_t seed, std::uint64_t rep) {
  auto run = run_engine(config, roster, model, seed, rep);
  return {std::move(run.events), *run.state.winner};
}

SimReport run_replications(const TournamentConfig& config, const std::vector<Player>& roster,
                           const GameModel& model, std::uint64_t n, std::uint64_t seed, SimOptions options) {
  const auto idx = index_of(roster);
  return fold("multi-tier", roster, n, seed, options, [&](std::uint64_t r) {
    return engine_outcome(run_engine(config, roster, model, seed, r).state, idx);
  });
}

SimReport run_baseline(BaselineFormat format, const std::vector<Player>& roster, const GameModel& model,
                       std::uint64_t n, std::uint64_t seed, SimOptions options) {
  const int size = static_cast<int>(roster.size());
  if (format == BaselineFormat::RoundRobinAll) {
    TournamentConfig config;
    config.tiers = {TierConfig{size, 0, std::max(size, 2)}};
    config.seed = seed;
    const auto idx = index_of(roster);
    return fold(to_string(format), roster, n, seed, options, [&](std::uint64_t r) {
      return engine_outcome(run_engine(config, roster, model, seed, r).state, idx);
    });
  }

  if (size < 2 || (size & (size - 1)) != 0) {
    throw Error(ErrorCode::RosterSizeUnsupported,
                "knockout needs a power-of-two roster, got " + std::to_string(size) + " players");
  }
  // Seeds by Elo descending, id ascending among equals.
  std::vector<std::size_t> bySeed(roster.size());
  for (std::size_t i = 0; i < bySeed.size(); ++i) bySeed[i] = i;
  std::sort(bySeed.begin(), bySeed.end(), [&](std::size_t a, std::size_t b) {
    if (roster[a].elo != roster[b].elo) return roster[a].elo > roster[b].elo;
    return roster[a].id < roster[b].id;
  });
  std::vector<std::size_t> bracket;
  for (auto pos : bracket_order(roster.size())) bracket.push_back(bySeed[pos]);
  return fold(to_string(format), roster, n, seed, options,
              [&](std::uint64_t r) { return knockout_outcome(roster, bracket, model, seed, r); });
}

std::string sim_report_csv(const SimReport& report) {
  std::ostringstream out;
  out << "player,win_freq,mean_games,mean_color_diff\n" << std::fixed << std::setprecision(6);
  for (const auto& p : report.players) {
    out << p.player << ',' << p.winFreq << ',' << p.meanGames << ',' << p.meanColorDiff << '\n';
  }
  return out.str();
}

std::string sim_report_summary(const SimReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "format:            " << report.format << '\n'
      << "replications:      " << report.replications << '\n'
      << "seed:              " << report.seed << '\n'
      << "top-Elo player:    " << report.topEloPlayer << " (wins " << report.topEloWinFreq << ")\n"
      << "mean games/player: " << report.meanGames << '\n'
      << "mean color diff:   " << report.meanColorDiff << '\n'
      << "mean breaks:       " << report.meanBreaks << '\n';
  return out.str();
}

}  // namespace mtt
