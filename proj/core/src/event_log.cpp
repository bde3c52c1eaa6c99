#include "mtt/event_log.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "json_codec.hpp"
#include "mtt/error.hpp"

namespace mtt {

std::string serialize_event(const Event& event, std::size_t seq) {
  json j{{"v", kLogSchemaVersion},
         {"seq", seq},
         {"ts", event.timestamp},
         {"type", event_type(event.payload)},
         {"data", payload_to_json(event.payload)}};
  return j.dump();
}

Event parse_event(std::string_view line, std::size_t lineNumber, std::size_t expectedSeq) {
  auto corrupt = [&](const std::string& why) {
    return Error(ErrorCode::CorruptLine, "line " + std::to_string(lineNumber) + ": " + why,
                 {std::to_string(lineNumber)});
  };
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw corrupt(std::string("not JSON: ") + e.what());
  }
  if (!j.is_object()) throw corrupt("not an object");
  if (!j.contains("v") || !j["v"].is_number_integer()) throw corrupt("missing schema version");
  if (j["v"].get<int>() != kLogSchemaVersion) {
    throw Error(ErrorCode::VersionMismatch,
                "line " + std::to_string(lineNumber) + ": schema version " + j["v"].dump() +
                    ", expected " + std::to_string(kLogSchemaVersion));
  }
  try {
    if (j.at("seq").get<std::size_t>() != expectedSeq) {
      throw corrupt("sequence number " + j["seq"].dump() + ", expected " + std::to_string(expectedSeq));
    }
    Event event;
    event.timestamp = j.at("ts").get<std::int64_t>();
    event.payload = payload_from_json(j.at("type").get<std::string>(), j.at("data"));
    return event;
  } catch (const json::exception& e) {
    throw corrupt(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptLine) throw;
    throw corrupt(e.what());
  }
}

void write_log(std::ostream& out, std::span<const Event> events) {
  for (std::size_t i = 0; i < events.size(); ++i) out << serialize_event(events[i], i) << '\n';
}

std::vector<Event> read_log(std::istream& in) {
  std::vector<Event> events;
  std::string line;
  std::size_t lineNumber = 0;
  while (std::getline(in, line)) {
    ++lineNumber;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    events.push_back(parse_event(line, lineNumber, events.size()));
  }
  return events;
}

void write_log(const std::filesystem::path& path, std::span<const Event> events) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_log(out, events);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<Event> read_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return read_log(in);
}

void append_log(const std::filesystem::path& path, std::span<const Event> events, std::size_t firstSeq) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::IoError, "cannot append to " + path.string());
  for (std::size_t i = 0; i < events.size(); ++i) out << serialize_event(events[i], firstSeq + i) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "append failed for " + path.string());
}

}  // namespace mtt
