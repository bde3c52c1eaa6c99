#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mtt/scoring.hpp"
#include "mtt/types.hpp"

namespace mtt {

// Splits one CSV record; double-quoted fields may contain commas and "".
std::vector<std::string> split_csv_line(std::string_view line);
// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(std::string_view value);

// Roster CSV with header `id,name,elo` (columns in any order).
std::vector<Player> read_roster(std::istream& in);
std::vector<Player> read_roster(const std::filesystem::path& path);
void write_roster(std::ostream& out, const std::vector<Player>& roster);

// Roster as a JSON array of {"id","name","elo"} objects.
std::vector<Player> roster_from_json(std::string_view text);

// Tournament config JSON:
//   {"tiers":[{"base":8,"promote":2,"max_group":10},...],
//    "seed":42, "tie_break_mode":"auto"|"interactive"}
TournamentConfig config_from_json(std::string_view text);
std::string config_to_json(const TournamentConfig& config);
TournamentConfig read_config(const std::filesystem::path& path);

// rank,player,ts_num,ts_den,wins,losses,draws,tiebreak_rule
std::string standings_csv(const RankedStanding& standing, bool header = true);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace mtt
