#include "mtt/analyze.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "mtt/config.hpp"
#include "mtt/error.hpp"
#include "mtt/io.hpp"
#include "mtt/tiering.hpp"

namespace mtt {

IngestResult ingest_games(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MissingHeader, "games file is empty");
  const auto header = split_csv_line(line);
  auto column = [&](std::string_view name) {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  const int white = column("white"), black = column("black"), result = column("result");
  const int moves = column("moves"), date = column("date");
  if (white < 0 || black < 0 || result < 0) {
    throw Error(ErrorCode::MissingHeader, "games header must include white,black,result");
  }

  IngestResult out;
  std::size_t lineNumber = 1;
  while (std::getline(in, line)) {
    ++lineNumber;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++out.rowsRead;
    const auto f = split_csv_line(line);
    auto reject = [&](std::string reason) { out.rejected.push_back({lineNumber, std::move(reason), line}); };
    auto field = [&](int col) -> std::string { return col >= 0 && col < static_cast<int>(f.size()) ? f[col] : ""; };

    const auto w = field(white), b = field(black), token = field(result);
    if (w.empty() || b.empty() || token.empty()) {
      reject("MissingField");
      continue;
    }
    const auto parsed = parse_result_token(token);
    if (!parsed) {
      reject("UnknownResultToken");
      continue;
    }
    if (w == b) {
      reject("SelfPlay");
      continue;
    }
    HistoricalGame row;
    row.game.white = w;
    row.game.black = b;
    row.game.result = *parsed;
    if (const auto m = field(moves); !m.empty()) {
      auto [ptr, ec] = std::from_chars(m.data(), m.data() + m.size(), row.game.moveCount);
      if (ec != std::errc{} || ptr != m.data() + m.size() || row.game.moveCount < 0) {
        reject("BadMoveCount");
        continue;
      }
    }
    if (const auto d = field(date); !d.empty()) row.date = d;
    out.db.add(std::move(row));
  }
  return out;
}

IngestResult ingest_games(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return ingest_games(in);
}

PairAggregate crosstable(const HeadToHeadDb& db, const PlayerId& a, const PlayerId& b) {
  PairAggregate agg;
  for (const auto& g : db.games_between(a, b)) {
    const int o = g.outcome_for(a);
    if (o > 0) ++agg.winsA;
    else if (o < 0) ++agg.winsB;
    else ++agg.draws;
    ++agg.games;
  }
  return agg;
}

std::map<std::pair<PlayerId, PlayerId>, PairAggregate> crosstable(const HeadToHeadDb& db,
                                                                  const std::vector<PlayerId>& players) {
  std::map<std::pair<PlayerId, PlayerId>, PairAggregate> out;
  for (std::size_t i = 0; i < players.size(); ++i)
    for (std::size_t j = i + 1; j < players.size(); ++j) out[{players[i], players[j]}] = crosstable(db, players[i], players[j]);
  return out;
}

HistoricalTierReport replay_historical(const HeadToHeadDb& db, const std::vector<Player>& roster,
                                       const TournamentConfig& config, RngStream& rng) {
  validate_config(config, roster);
  const auto known = db.players();
  for (const auto& p : roster) {
    if (!std::binary_search(known.begin(), known.end(), p.id)) {
      throw Error(ErrorCode::UnknownPlayer, p.id + " has no games in the dataset");
    }
  }
  const auto assignment = assign_tiers(roster, config, rng);

  HistoricalTierReport report;
  std::vector<PlayerId> promoted;
  for (std::size_t t = 0; t < config.tiers.size(); ++t) {
    HistoricalTier tier;
    tier.tier = static_cast<int>(t) + 1;
    tier.members = assignment.tiers[t];
    tier.members.insert(tier.members.end(), promoted.begin(), promoted.end());

    std::vector<CascadeEntry> entries;
    for (const auto& m : tier.members) {
      std::vector<PlayerId> others;
      ScoreLine line;
      line.player = m;
      for (const auto& o : tier.members) {
        if (o == m) continue;
        others.push_back(o);
        for (const auto& g : db.games_between(m, o)) {
          const int r = g.outcome_for(m);
          if (r > 0) {
            ++line.wins;
            line.movesToWin.push_back(g.moveCount);
          } else if (r < 0) {
            ++line.losses;
          } else {
            ++line.draws;
          }
        }
      }
      entries.push_back({std::move(line), mean_pairwise_ts(m, others, db)});
    }
    auto headToHead = [&](const PlayerId& a, const PlayerId& b) {
      const auto agg = crosstable(db, a, b);
      return agg.winsA - agg.winsB;
    };
    tier.standing = rank_with_cascade(std::move(entries), headToHead, rng);

    std::int64_t pairs = 0, games = 0;
    for (std::size_t i = 0; i < tier.members.size(); ++i) {
      for (std::size_t j = i + 1; j < tier.members.size(); ++j) {
        const auto& a = tier.members[i];
        const auto& b = tier.members[j];
        const int n = static_cast<int>(db.count_between(a, b));
        report.pairGames[std::minmax(a, b)] = n;
        ++pairs;
        games += n;
      }
    }
    tier.meanGamesPerMatchup = pairs == 0 ? Rational(0) : Rational(games, pairs);

    const auto order = tier.standing.order();
    const int count = config.tiers[t].promoteCount;
    tier.promoted.assign(order.begin(), order.begin() + count);
    promoted = tier.promoted;
    if (t + 1 == config.tiers.size()) report.winner = order.front();
    report.tiers.push_back(std::move(tier));
  }
  return report;
}

namespace {

std::string decimal(const Rational& r, int places) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(places) << to_double(r);
  return out.str();
}

}  // namespace

std::string historical_report_csv(const HistoricalTierReport& report) {
  std::ostringstream out;
  out << "tier,rank,player,mean_ts\n";
  for (const auto& t : report.tiers) {
    int rank = 0;
    for (const auto& e : t.standing.entries) {
      out << t.tier << ',' << ++rank << ',' << csv_field(e.line.player) << ',' << decimal(e.key, 6) << '\n';
    }
  }
  return out.str();
}

std::string historical_report_table(const HistoricalTierReport& report, const std::vector<Player>& roster) {
  auto elo_of = [&](const PlayerId& id) {
    for (const auto& p : roster)
      if (p.id == id) return p.elo;
    return 0;
  };
  std::ostringstream out;
  for (const auto& t : report.tiers) {
    out << "Tier " << t.tier << " (" << t.members.size() << " players, " << decimal(t.meanGamesPerMatchup, 1)
        << " games per matchup)\n";
    out << "  rank  player                   elo   mean TS  tie-break\n";
    int rank = 0;
    for (const auto& e : t.standing.entries) {
      const bool up = std::find(t.promoted.begin(), t.promoted.end(), e.line.player) != t.promoted.end();
      const bool won = e.line.player == report.winner && &t == &report.tiers.back();
      std::string name = e.line.player + (up ? " ^" : "") + (won ? " *" : "");
      const auto ts = decimal(e.key, 3);
      out << "  " << std::setw(4) << ++rank << "  " << std::left << std::setw(22) << name << std::right
          << std::setw(6) << elo_of(e.line.player) << std::setw(10) << ts << "  "
          << (e.rule == TieRule::Score || e.rule == TieRule::None ? "" : std::string(describe(e.rule))) << '\n';
    }
  }
  out << "Winner: " << report.winner << '\n';
  out << "(^ promoted, * winner)\n";
  return out.str();
}

ColorBiasReport color_bias_report(const std::vector<PlayerId>& standings,
                                  const std::map<PlayerId, ColorCounts>& colorCounts, std::size_t k) {
  if (k == 0 || k > standings.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "cutoff " + std::to_string(k) + " outside 1.." + std::to_string(standings.size()));
  }
  ColorBiasReport out;
  for (std::size_t i = 0; i < k; ++i) {
    const auto it = colorCounts.find(standings[i]);
    if (it == colorCounts.end()) throw Error(ErrorCode::MissingColorCounts, "no color counts for " + standings[i]);
    if (it->second.white > it->second.black) out.extraWhite.push_back(standings[i]);
  }
  out.fraction = Rational(static_cast<std::int64_t>(out.extraWhite.size()), static_cast<std::int64_t>(k));
  return out;
}

}  // namespace mtt
