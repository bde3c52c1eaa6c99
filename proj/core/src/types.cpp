#include "mtt/types.hpp"

#include <charconv>
#include <cstdio>

#include "mtt/error.hpp"

namespace mtt {

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::DegenerateTier: return "DegenerateTier";
    case ErrorCode::DuplicatePlayer: return "DuplicatePlayer";
    case ErrorCode::IndivisibleTier: return "IndivisibleTier";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IllegalTransition: return "IllegalTransition";
    case ErrorCode::CorruptLine: return "CorruptLine";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::NoGames: return "NoGames";
    case ErrorCode::MixedPair: return "MixedPair";
    case ErrorCode::SelfOpponent: return "SelfOpponent";
    case ErrorCode::InconsistentScores: return "InconsistentScores";
    case ErrorCode::PoolTooSmall: return "PoolTooSmall";
    case ErrorCode::PoolTooLarge: return "PoolTooLarge";
    case ErrorCode::GroupTooSmall: return "GroupTooSmall";
    case ErrorCode::UnknownGame: return "UnknownGame";
    case ErrorCode::AlreadyReported: return "AlreadyReported";
    case ErrorCode::TierClosed: return "TierClosed";
    case ErrorCode::IncompleteResults: return "IncompleteResults";
    case ErrorCode::PendingDecision: return "PendingRandomTieBreak";
    case ErrorCode::NoPendingDecision: return "NoPendingDecision";
    case ErrorCode::UnknownPlayer: return "UnknownPlayer";
    case ErrorCode::NotActive: return "NotActive";
    case ErrorCode::InsufficientEligible: return "InsufficientEligible";
    case ErrorCode::RosterSizeUnsupported: return "RosterSizeUnsupported";
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::MissingColorCounts: return "MissingColorCounts";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_token(GameResult r) {
  switch (r) {
    case GameResult::WhiteWin: return "1-0";
    case GameResult::BlackWin: return "0-1";
    case GameResult::Draw: return "1/2-1/2";
  }
  return "?";
}

std::optional<GameResult> parse_result_token(std::string_view token) {
  if (token == "1-0") return GameResult::WhiteWin;
  if (token == "0-1") return GameResult::BlackWin;
  if (token == "1/2-1/2") return GameResult::Draw;
  return std::nullopt;
}

std::string GameRef::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "T%dG%dR%dB%d", tier, group, round, board);
  return buf;
}

std::optional<GameRef> GameRef::parse(std::string_view text) {
  GameRef ref;
  int* fields[] = {&ref.tier, &ref.group, &ref.round, &ref.board};
  const char tags[] = {'T', 'G', 'R', 'B'};
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 4; ++i) {
    if (p == end || (*p != tags[i] && *p != tags[i] + ('a' - 'A'))) return std::nullopt;
    ++p;
    auto [next, ec] = std::from_chars(p, end, *fields[i]);
    if (ec != std::errc{} || next == p || *fields[i] < 1) return std::nullopt;
    p = next;
  }
  if (p != end) return std::nullopt;
  return ref;
}

int GameRecord::outcome_for(const PlayerId& p) const {
  if (result == GameResult::Draw) return 0;
  const bool whiteWon = result == GameResult::WhiteWin;
  return (p == white) == whiteWon ? 1 : -1;
}

int TournamentConfig::tier_size(std::size_t i) const {
  int size = tiers.at(i).baseSize;
  if (i > 0) size += tiers[i - 1].promoteCount;
  return size;
}

}  // namespace mtt
