#include "mtt/head_to_head.hpp"

#include <set>

namespace mtt {

std::pair<PlayerId, PlayerId> HeadToHeadDb::key(const PlayerId& a, const PlayerId& b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

void HeadToHeadDb::add(HistoricalGame row) {
  index_[key(row.game.white, row.game.black)].push_back(rows_.size());
  rows_.push_back(std::move(row));
}

std::vector<GameRecord> HeadToHeadDb::games_between(const PlayerId& a, const PlayerId& b) const {
  std::vector<GameRecord> out;
  auto it = index_.find(key(a, b));
  if (it == index_.end()) return out;
  out.reserve(it->second.size());
  for (auto i : it->second) out.push_back(rows_[i].game);
  return out;
}

std::size_t HeadToHeadDb::count_between(const PlayerId& a, const PlayerId& b) const {
  auto it = index_.find(key(a, b));
  return it == index_.end() ? 0 : it->second.size();
}

std::vector<PlayerId> HeadToHeadDb::players() const {
  std::set<PlayerId> ids;
  for (const auto& r : rows_) {
    ids.insert(r.game.white);
    ids.insert(r.game.black);
  }
  return {ids.begin(), ids.end()};
}

}  // namespace mtt
