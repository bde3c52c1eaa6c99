#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "mtt/analyze.hpp"
#include "mtt/engine.hpp"
#include "mtt/error.hpp"
#include "mtt/event_log.hpp"
#include "mtt/io.hpp"
#include "mtt/scheduling.hpp"
#include "mtt/simulate.hpp"
#include "service.hpp"

using namespace mtt;

namespace {

// Usage problems found after CLI11 parsing (bad tokens, bad refs).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::int64_t clock_ms() {
  if (const char* fixed = std::getenv("MTT_FIXED_CLOCK")) return std::atoll(fixed);
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::vector<Player> load_roster(const std::string& path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") return roster_from_json(read_text_file(path));
  return read_roster(std::filesystem::path(path));
}

struct Loaded {
  std::vector<Event> events;
  TournamentState state;
};

Loaded load(const std::string& log) {
  Loaded l;
  l.events = read_log(std::filesystem::path(log));
  l.state = replay(l.events);
  if (!l.state.created()) throw Error(ErrorCode::IllegalTransition, log + " holds no tournament");
  return l;
}

void save(const std::string& log, const Loaded& before, const Step& step) {
  append_log(log, step.events, before.events.size());
}

// game,white,black,result,bye
void print_pairings(std::ostream& out, const TournamentState& state, bool all) {
  out << "game,white,black,result,bye\n";
  const auto* t = state.active_tier();
  if (!t) return;
  for (std::size_t g = 0; g < t->groups.size(); ++g) {
    const auto& run = t->groups[g];
    const auto current = current_round(state, t->index, static_cast<int>(g) + 1);
    for (const auto& r : run.schedule) {
      if (!all && (!current || r.round != *current)) continue;
      for (const auto& slot : run.games) {
        if (slot.ref.round != r.round) continue;
        out << slot.ref.to_string() << ',' << csv_field(slot.white) << ',' << csv_field(slot.black) << ','
            << (slot.result ? std::string(to_token(*slot.result)) : "") << ",\n";
      }
      if (r.bye) out << "T" << t->index << "G" << g + 1 << "R" << r.round << ",,,," << csv_field(*r.bye) << '\n';
    }
  }
}

void print_standings(std::ostream& out, const TournamentState& state, int tier) {
  const auto& t = state.tiers[static_cast<std::size_t>(tier) - 1];
  for (std::size_t g = 0; g < t.groups.size(); ++g) {
    out << "# tier " << tier << " group " << g + 1 << '\n';
    out << standings_csv(group_standing(state, tier, static_cast<int>(g) + 1));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-tier round-robin tournaments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mtt 1.0.0");

  std::string configPath, rosterPath, logPath, outPath, gameText, resultText, groupPath, gamesPath, baseline;
  std::string player, reason, logDir = "tournaments", host = "127.0.0.1", staticDir, format = "csv";
  int moves = 0, port = 8080, tierArg = 0;
  std::uint64_t seed = 0, reps = 1000;
  unsigned threads = 1;
  double drawBase = 0.5, whiteBonus = 0.0;
  bool all = false, acceptTiebreak = false, summary = false;

  auto* cNew = app.add_subcommand("new", "create a tournament log and print tier-1 pairings");
  cNew->add_option("--config", configPath, "tier config JSON")->required()->check(CLI::ExistingFile);
  cNew->add_option("--roster", rosterPath, "roster CSV (id,name,elo) or JSON")->required()->check(CLI::ExistingFile);
  cNew->add_option("--out", outPath, "event log to create")->required();

  auto* cPair = app.add_subcommand("pair", "print pairings of the active tier as CSV");
  cPair->add_option("--log", logPath)->required()->check(CLI::ExistingFile);
  cPair->add_flag("--all", all, "every round, not only the current one");

  auto* cResult = app.add_subcommand("result", "record a game result");
  cResult->add_option("--log", logPath)->required()->check(CLI::ExistingFile);
  cResult->add_option("--game", gameText, "game reference, e.g. T1G1R3B2")->required();
  cResult->add_option("--result", resultText, "1-0, 0-1 or 1/2-1/2")->required();
  cResult->add_option("--moves", moves, "number of moves")->required();

  auto* cComplete = app.add_subcommand("complete-tier", "score the active tier, promote and open the next");
  cComplete->add_option("--log", logPath)->required()->check(CLI::ExistingFile);
  cComplete->add_flag("--accept-tiebreak", acceptTiebreak, "confirm a pending random tie-break");

  auto* cForfeit = app.add_subcommand("forfeit", "withdraw a player from the active tier");
  cForfeit->add_option("--log", logPath)->required()->check(CLI::ExistingFile);
  cForfeit->add_option("--player", player)->required();
  cForfeit->add_option("--reason", reason);

  auto* cStandings = app.add_subcommand("standings", "print live standings as CSV");
  cStandings->add_option("--log", logPath)->required()->check(CLI::ExistingFile);
  cStandings->add_option("--tier", tierArg, "tier number (default: active)");

  auto* cSim = app.add_subcommand("simulate", "Monte Carlo report as CSV");
  cSim->add_option("--config", configPath)->check(CLI::ExistingFile);
  cSim->add_option("--roster", rosterPath)->required()->check(CLI::ExistingFile);
  cSim->add_option("--reps", reps)->required()->check(CLI::PositiveNumber);
  cSim->add_option("--seed", seed)->required();
  cSim->add_option("--draw-base", drawBase)->check(CLI::Range(0.0, 1.0));
  cSim->add_option("--white-bonus", whiteBonus, "Elo added to White");
  cSim->add_option("--baseline", baseline, "round-robin or knockout");
  cSim->add_option("--threads", threads, "0 uses every core");
  cSim->add_flag("--summary", summary, "print the summary block after the CSV");

  auto* cAnalyze = app.add_subcommand("analyze", "replay tiers from historical games");
  cAnalyze->add_option("--games", gamesPath)->required()->check(CLI::ExistingFile);
  cAnalyze->add_option("--roster", rosterPath)->required()->check(CLI::ExistingFile);
  cAnalyze->add_option("--config", configPath)->required()->check(CLI::ExistingFile);
  cAnalyze->add_option("--seed", seed)->required();
  cAnalyze->add_option("--format", format)->check(CLI::IsMember({"csv", "table"}));

  auto* cSchedule = app.add_subcommand("schedule", "round robin for one group as CSV");
  cSchedule->add_option("--group", groupPath, "CSV with an id column")->required()->check(CLI::ExistingFile);
  cSchedule->add_option("--seed", seed)->required();

  auto* cServe = app.add_subcommand("serve", "run the HTTP service");
  cServe->add_option("--log-dir", logDir);
  cServe->add_option("--port", port);
  cServe->add_option("--host", host);
  cServe->add_option("--static", staticDir, "directory served at /")->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cNew) {
      const auto config = read_config(configPath);
      const auto step = create_tournament(config, load_roster(rosterPath), clock_ms());
      if (std::filesystem::exists(outPath)) throw Error(ErrorCode::IoError, outPath + " already exists");
      write_log(std::filesystem::path(outPath), step.events);
      print_pairings(std::cout, step.state, true);
    } else if (*cPair) {
      print_pairings(std::cout, load(logPath).state, all);
    } else if (*cResult) {
      const auto ref = GameRef::parse(gameText);
      if (!ref) throw UsageError("malformed game reference '" + gameText + "'");
      const auto res = parse_result_token(resultText);
      if (!res) throw UsageError("result must be 1-0, 0-1 or 1/2-1/2, got '" + resultText + "'");
      const auto l = load(logPath);
      const auto step = enter_result(l.state, *ref, *res, moves, clock_ms());
      save(logPath, l, step);
      std::cout << ref->to_string() << ' ' << to_token(*res) << '\n';
    } else if (*cComplete) {
      const auto l = load(logPath);
      if (l.state.finished()) throw Error(ErrorCode::TierClosed, "tournament already finished");
      const int tier = l.state.active_tier()->index;
      const auto step = complete_tier(l.state, {acceptTiebreak}, clock_ms());
      save(logPath, l, step);
      print_standings(std::cout, step.state, tier);
      const auto& done = step.state.tiers[static_cast<std::size_t>(tier) - 1];
      for (const auto& e : step.events)
        if (const auto* t = std::get_if<ev::TieResolvedRandomly>(&e.payload)) {
          std::cout << "# random tie-break (" << t->context << "):";
          for (const auto& p : t->players) std::cout << ' ' << p;
          std::cout << '\n';
        }
      if (step.state.finished()) {
        std::cout << "winner," << *step.state.winner << '\n';
      } else {
        std::cout << "promoted";
        for (const auto& p : done.promoted) std::cout << ',' << p;
        std::cout << '\n';
      }
    } else if (*cForfeit) {
      const auto l = load(logPath);
      const auto step = forfeit(l.state, player, reason, clock_ms());
      save(logPath, l, step);
      for (const auto& ref : std::get<ev::PlayerForfeited>(step.events.back().payload).games)
        std::cout << ref.to_string() << " forfeited\n";
    } else if (*cStandings) {
      const auto l = load(logPath);
      const int tier = tierArg > 0 ? tierArg : l.state.active_tier()->index;
      if (tier > static_cast<int>(l.state.tiers.size())) throw UsageError("tier " + std::to_string(tier) + " has not started");
      print_standings(std::cout, l.state, tier);
      if (l.state.winner) std::cout << "winner," << *l.state.winner << '\n';
    } else if (*cSim) {
      const auto roster = load_roster(rosterPath);
      const GameModel model{drawBase, whiteBonus};
      SimReport report;
      if (!baseline.empty()) {
        BaselineFormat f;
        try {
          f = parse_baseline(baseline);
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
        report = run_baseline(f, roster, model, reps, seed, {threads});
      } else {
        if (configPath.empty()) throw UsageError("--config is required unless --baseline is given");
        report = run_replications(read_config(configPath), roster, model, reps, seed, {threads});
      }
      std::cout << sim_report_csv(report);
      if (summary) std::cout << '\n' << sim_report_summary(report);
    } else if (*cAnalyze) {
      auto ingest = ingest_games(std::filesystem::path(gamesPath));
      for (const auto& r : ingest.rejected)
        std::cerr << gamesPath << ':' << r.line << ": rejected (" << r.reason << "): " << r.text << '\n';
      const auto roster = load_roster(rosterPath);
      RngStream rng(seed, "historical");
      const auto report = replay_historical(ingest.db, roster, read_config(configPath), rng);
      std::cout << (format == "table" ? historical_report_table(report, roster) : historical_report_csv(report));
    } else if (*cSchedule) {
      const auto rows = read_text_file(groupPath);
      std::istringstream in(rows);
      std::string line;
      std::getline(in, line);
      const auto header = split_csv_line(line);
      const auto col = static_cast<std::size_t>(std::find(header.begin(), header.end(), "id") - header.begin());
      if (col == header.size()) throw Error(ErrorCode::MissingHeader, groupPath + ": header must include id");
      std::vector<PlayerId> ids;
      while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        if (col < f.size() && !f[col].empty()) ids.push_back(f[col]);
      }
      RngStream rng(seed, "schedule");
      const auto schedule = round_robin(ids, rng);
      const auto report = validate_schedule(schedule);
      if (!report.clean()) {
        for (const auto& v : report.violations) std::cerr << to_string(v.kind) << ": " << v.detail << '\n';
        return 1;
      }
      std::cout << schedule_to_csv(schedule);
    } else if (*cServe) {
      if (const char* env = std::getenv("MTT_LOG_DIR"); env && *env) logDir = env;
      service::TournamentService svc(logDir);
      httplib::Server server;
      std::optional<std::filesystem::path> mount;
      if (!staticDir.empty()) mount = staticDir;
      service::register_routes(server, svc, mount);
      std::cerr << "serving " << svc.ids().size() << " tournament(s) from " << logDir << " on " << host << ':' << port
                << '\n';
      if (!server.listen(host, port)) throw Error(ErrorCode::IoError, "cannot listen on port " + std::to_string(port));
    }
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    for (const auto& d : e.details()) std::cerr << "  " << d << '\n';
    if (e.code() == ErrorCode::PendingDecision) std::cerr << "rerun with --accept-tiebreak to confirm\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
