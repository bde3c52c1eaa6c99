#include "mtt/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json_codec.hpp"
#include "mtt/error.hpp"

namespace mtt {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<Player> read_roster(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MissingHeader, "roster is empty");
  const auto header = split_csv_line(line);
  int idCol = -1, nameCol = -1, eloCol = -1;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    if (header[i] == "id") idCol = i;
    if (header[i] == "name") nameCol = i;
    if (header[i] == "elo") eloCol = i;
  }
  if (idCol < 0 || eloCol < 0) throw Error(ErrorCode::MissingHeader, "roster header must name id,name,elo");

  std::vector<Player> roster;
  std::size_t lineNumber = 1;
  while (std::getline(in, line)) {
    ++lineNumber;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    const auto need = static_cast<std::size_t>(std::max({idCol, nameCol, eloCol}));
    if (f.size() <= need) {
      throw Error(ErrorCode::InvalidArgument, "roster line " + std::to_string(lineNumber) + ": missing field");
    }
    Player p;
    p.id = f[idCol];
    p.name = nameCol >= 0 ? f[nameCol] : p.id;
    const auto& e = f[eloCol];
    auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), p.elo);
    if (ec != std::errc{} || ptr != e.data() + e.size()) {
      throw Error(ErrorCode::InvalidArgument, "roster line " + std::to_string(lineNumber) + ": bad elo '" + e + "'");
    }
    roster.push_back(std::move(p));
  }
  return roster;
}

std::vector<Player> read_roster(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return read_roster(in);
}

void write_roster(std::ostream& out, const std::vector<Player>& roster) {
  out << "id,name,elo\n";
  for (const auto& p : roster) out << csv_field(p.id) << ',' << csv_field(p.name) << ',' << p.elo << '\n';
}

std::vector<Player> roster_from_json(std::string_view text) {
  try {
    return json::parse(text).get<std::vector<Player>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad roster: ") + e.what());
  }
}

TournamentConfig config_from_json(std::string_view text) {
  try {
    return json::parse(text).get<TournamentConfig>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("bad config: ") + e.what());
  }
}

std::string config_to_json(const TournamentConfig& config) { return json(config).dump(2); }

TournamentConfig read_config(const std::filesystem::path& path) { return config_from_json(read_text_file(path)); }

std::string standings_csv(const RankedStanding& standing, bool header) {
  std::ostringstream out;
  if (header) out << "rank,player,ts_num,ts_den,wins,losses,draws,tiebreak_rule\n";
  int rank = 0;
  for (const auto& e : standing.entries) {
    const auto& l = e.line;
    out << ++rank << ',' << csv_field(l.player) << ',' << (l.wins - l.losses) << ',' << l.games() << ','
        << l.wins << ',' << l.losses << ',' << l.draws << ',' << to_code(e.rule) << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mtt
