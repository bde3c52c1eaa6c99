#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtt/types.hpp"

namespace mtt {

// A historical game row. moveCount in `game` is 0 when the source omitted it.
struct HistoricalGame {
  GameRecord game;
  std::optional<std::string> date;

  bool operator==(const HistoricalGame&) const = default;
};

// Indexed store of historical games with unordered-pair lookup. Lookup of
// (A, B) and (B, A) returns the same rows; colors are preserved in the rows.
class HeadToHeadDb {
 public:
  void add(HistoricalGame row);

  std::size_t size() const { return rows_.size(); }
  const std::vector<HistoricalGame>& rows() const { return rows_; }

  // Games between a and b in insertion order.
  std::vector<GameRecord> games_between(const PlayerId& a, const PlayerId& b) const;
  std::size_t count_between(const PlayerId& a, const PlayerId& b) const;

  // Every player id appearing in any row, sorted.
  std::vector<PlayerId> players() const;

 private:
  static std::pair<PlayerId, PlayerId> key(const PlayerId& a, const PlayerId& b);

  std::vector<HistoricalGame> rows_;
  std::map<std::pair<PlayerId, PlayerId>, std::vector<std::size_t>> index_;
};

}  // namespace mtt
