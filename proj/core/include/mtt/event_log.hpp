#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mtt/events.hpp"

namespace mtt {

inline constexpr int kLogSchemaVersion = 1;

// One JSON object per line: {"v":1,"seq":N,"ts":...,"type":"...",...payload}.
// Keys are emitted in sorted order, so equal events serialize to equal bytes.
std::string serialize_event(const Event& event, std::size_t seq);
// Throws CorruptLine (with `lineNumber`) or VersionMismatch.
Event parse_event(std::string_view line, std::size_t lineNumber, std::size_t expectedSeq);

void write_log(std::ostream& out, std::span<const Event> events);
std::vector<Event> read_log(std::istream& in);

void write_log(const std::filesystem::path& path, std::span<const Event> events);
std::vector<Event> read_log(const std::filesystem::path& path);

// Appends `events` to the file, numbering from `firstSeq`, and flushes
// before returning.
void append_log(const std::filesystem::path& path, std::span<const Event> events, std::size_t firstSeq);

}  // namespace mtt
