#include "mtt/scheduling.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "mtt/error.hpp"

namespace mtt {

Schedule round_robin_seated(std::span<const PlayerId> seats) {
  if (seats.size() < 2) throw Error(ErrorCode::GroupTooSmall, "round robin needs at least 2 players");
  const bool odd = seats.size() % 2 == 1;
  const int n = static_cast<int>(seats.size()) + (odd ? 1 : 0);
  const int fixed = n - 1;
  const int rotating = n - 1;
  // In odd groups seat `fixed` is the phantom; its partner has the bye.
  auto real = [&](int seat) { return !(odd && seat == fixed); };

  Schedule schedule;
  for (int r = 0; r < rotating; ++r) {
    RoundPairing round;
    round.round = r + 1;
    std::vector<std::pair<int, int>> games;
    games.emplace_back(r % 2 == 0 ? std::pair{r, fixed} : std::pair{fixed, r});
    for (int i = 1; i < n / 2; ++i) {
      const int a = (r + i) % rotating;
      const int b = (r - i + rotating) % rotating;
      games.emplace_back(i % 2 == 1 ? std::pair{a, b} : std::pair{b, a});
    }
    for (auto [w, b] : games) {
      if (!real(w)) {
        round.bye = seats[b];
      } else if (!real(b)) {
        round.bye = seats[w];
      } else {
        round.boards.push_back({seats[w], seats[b]});
      }
    }
    schedule.push_back(std::move(round));
  }
  return schedule;
}

Schedule round_robin(std::span<const PlayerId> group, RngStream& rng) {
  if (group.size() < 2) throw Error(ErrorCode::GroupTooSmall, "round robin needs at least 2 players");
  std::vector<PlayerId> seats(group.begin(), group.end());
  std::sort(seats.begin(), seats.end());
  rng.shuffle(std::span(seats));
  return round_robin_seated(seats);
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::RepeatedPairing: return "pair meets twice";
    case ViolationKind::ColorDiffOverOne: return "color diff > 1";
    case ViolationKind::ColorDiffOverTwo: return "color diff > 2";
    case ViolationKind::SameColorRun: return "same-color run >= 3";
    case ViolationKind::DoubleBooking: return "player double-booked in round";
    case ViolationKind::SelfPairing: return "player paired with self";
  }
  return "?";
}

const PlayerColorStats* ScheduleReport::find(const PlayerId& id) const {
  auto it = std::lower_bound(perPlayer.begin(), perPlayer.end(), id,
                             [](const PlayerColorStats& s, const PlayerId& p) { return s.player < p; });
  return it != perPlayer.end() && it->player == id ? &*it : nullptr;
}

ScheduleReport validate_schedule(const Schedule& schedule) {
  ScheduleReport report;
  std::map<PlayerId, std::vector<Color>> colors;
  std::map<PlayerId, int> byes;
  std::set<std::pair<PlayerId, PlayerId>> met;

  for (const auto& round : schedule) {
    std::set<PlayerId> seen;
    auto book = [&](const PlayerId& p) {
      if (!seen.insert(p).second) {
        report.violations.push_back({ViolationKind::DoubleBooking, round.round, p});
      }
    };
    for (const auto& b : round.boards) {
      if (b.white == b.black) {
        report.violations.push_back({ViolationKind::SelfPairing, round.round, b.white});
        continue;
      }
      book(b.white);
      book(b.black);
      auto key = std::minmax(b.white, b.black);
      if (!met.insert({key.first, key.second}).second) {
        report.violations.push_back(
            {ViolationKind::RepeatedPairing, round.round, key.first + " vs " + key.second});
      }
      colors[b.white].push_back(Color::White);
      colors[b.black].push_back(Color::Black);
    }
    if (round.bye) {
      book(*round.bye);
      ++byes[*round.bye];
      colors[*round.bye];
    }
  }

  for (const auto& [player, seq] : colors) {
    PlayerColorStats s;
    s.player = player;
    s.byes = byes.count(player) ? byes.at(player) : 0;
    int run = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      (seq[i] == Color::White ? s.white : s.black)++;
      if (i > 0 && seq[i] == seq[i - 1]) {
        ++s.breaks;
        ++run;
      } else {
        run = 1;
      }
      s.maxSameColorRun = std::max(s.maxSameColorRun, run);
    }
    s.colorDiff = std::abs(s.white - s.black);
    report.totalBreaks += s.breaks;
    if (s.colorDiff > 1) {
      report.violations.push_back({ViolationKind::ColorDiffOverOne, 0, player});
    }
    if (s.colorDiff > 2) {
      report.violations.push_back({ViolationKind::ColorDiffOverTwo, 0, player});
    }
    if (s.maxSameColorRun >= 3) {
      report.violations.push_back({ViolationKind::SameColorRun, 0, player});
    }
    report.perPlayer.push_back(std::move(s));
  }
  return report;
}

std::string schedule_to_csv(const Schedule& schedule) {
  std::ostringstream out;
  out << "round,white,black,bye\n";
  for (const auto& round : schedule) {
    for (const auto& b : round.boards) out << round.round << ',' << b.white << ',' << b.black << ",\n";
    if (round.bye) out << round.round << ",,," << *round.bye << '\n';
  }
  return out.str();
}

}  // namespace mtt
