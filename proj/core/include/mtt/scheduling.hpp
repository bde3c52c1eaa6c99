#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtt/rng.hpp"
#include "mtt/types.hpp"

namespace mtt {

struct Board {
  PlayerId white;
  PlayerId black;

  bool operator==(const Board&) const = default;
};

struct RoundPairing {
  int round = 0;  // 1-based
  std::vector<Board> boards;
  std::optional<PlayerId> bye;

  bool operator==(const RoundPairing&) const = default;
};

using Schedule = std::vector<RoundPairing>;

// Single round robin over the group with seats shuffled by `rng`.
// Throws GroupTooSmall for fewer than 2 players.
Schedule round_robin(std::span<const PlayerId> group, RngStream& rng);

// Circle method over the seats as given. The last seat (or a phantom seat
// for odd groups, whose partner sits out) stays fixed and alternates color;
// the rotating pairs take their color from the parity of their offset. Even
// groups get n-2 breaks, at most one per player.
Schedule round_robin_seated(std::span<const PlayerId> seats);

struct PlayerColorStats {
  PlayerId player;
  int white = 0;
  int black = 0;
  int byes = 0;
  int colorDiff = 0;  // |white - black|
  int maxSameColorRun = 0;
  int breaks = 0;

  bool operator==(const PlayerColorStats&) const = default;
};

enum class ViolationKind {
  RepeatedPairing,
  ColorDiffOverOne,
  ColorDiffOverTwo,
  SameColorRun,
  DoubleBooking,
  SelfPairing,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int round = 0;
  std::string detail;
};

// Byes count neither toward color balance nor toward same-color runs.
struct ScheduleReport {
  std::vector<PlayerColorStats> perPlayer;  // sorted by player id
  int totalBreaks = 0;
  std::vector<Violation> violations;

  bool clean() const { return violations.empty(); }
  const PlayerColorStats* find(const PlayerId& id) const;
};

ScheduleReport validate_schedule(const Schedule& schedule);

// Pairing-sheet CSV: round,white,black,bye
std::string schedule_to_csv(const Schedule& schedule);

}  // namespace mtt
