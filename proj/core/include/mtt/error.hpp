#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mtt {

enum class ErrorCode {
  SizeMismatch,
  DegenerateTier,
  DuplicatePlayer,
  IndivisibleTier,
  InvalidConfig,
  IllegalTransition,
  CorruptLine,
  VersionMismatch,
  NoGames,
  MixedPair,
  SelfOpponent,
  InconsistentScores,
  PoolTooSmall,
  PoolTooLarge,
  GroupTooSmall,
  UnknownGame,
  AlreadyReported,
  TierClosed,
  IncompleteResults,
  PendingDecision,
  NoPendingDecision,
  UnknownPlayer,
  NotActive,
  InsufficientEligible,
  RosterSizeUnsupported,
  MissingHeader,
  MissingColorCounts,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Domain error. `details` carries structured payload such as the list of
// missing game refs (IncompleteResults) or the tied players (PendingDecision).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace mtt
