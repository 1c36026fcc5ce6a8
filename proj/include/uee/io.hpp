#pragma once

// File export/import plumbing: event files (delimited text + JSON), fixed
// precision formatting, key-value manifests and FNV-1a checksums for the
// run manifest.  Ratios are written with nine decimals; fields that must
// round-trip exactly (prices, returns in the event file) use the shortest
// representation that re-parses to the identical double.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "uee/detect.hpp"
#include "uee/records.hpp"

namespace uee {

inline constexpr std::string_view kEventSchema = "uee.events.v1";

inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 14695981039346656037ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_text_file(const std::filesystem::path& path,
                            std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write: " + path.string());
}

inline std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  return fnv1a64(read_text_file(path));
}

inline std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

inline std::string fmt_ratio(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

inline std::string fmt_shortest(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// Ordered key=value document; insertion order is preserved so reruns are
// byte-identical.
struct KvDoc {
  std::vector<std::pair<std::string, std::string>> items;

  void add(std::string key, std::string value) {
    items.emplace_back(std::move(key), std::move(value));
  }
  void add(std::string key, std::uint64_t v) {
    add(std::move(key), std::to_string(v));
  }
  void add(std::string key, std::int64_t v) {
    add(std::move(key), std::to_string(v));
  }
  void add(std::string key, int v) { add(std::move(key), std::to_string(v)); }
  void add(std::string key, double v) { add(std::move(key), fmt_shortest(v)); }

  std::string to_string() const {
    std::string out;
    for (const auto& [k, v] : items) {
      out += k;
      out += '=';
      out += v;
      out += '\n';
    }
    return out;
  }
};

// Stable per-event ids: SYMBOL-DATE-NNN, numbered within the symbol-day in
// stream order.  Events must already be consolidated in (symbol, date,
// t_start) order.
inline std::vector<std::string> make_event_ids(
    const std::vector<UeeEvent>& events) {
  std::vector<std::string> ids;
  ids.reserve(events.size());
  std::string prev_key;
  int counter = 0;
  for (const UeeEvent& e : events) {
    std::string key = e.symbol + "-" + format_date(e.date);
    if (key != prev_key) {
      counter = 0;
      prev_key = key;
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "-%03d", counter++);
    ids.push_back(key + buf);
  }
  return ids;
}

inline std::string events_to_csv(const std::vector<UeeEvent>& events,
                                 const std::vector<std::string>& ids) {
  std::string out;
  out += "#schema=";
  out += kEventSchema;
  out += "\nevent_id,symbol,date,direction,t_start,t_change,t_end,"
         "s_start,s_change,s_end,trades_to_change,trades_total,duration_ns,"
         "r_uee,start_idx,change_idx,end_idx\n";
  for (std::size_t i = 0; i < events.size(); ++i) {
    const UeeEvent& e = events[i];
    out += ids[i];
    out += ',';
    out += e.symbol;
    out += ',';
    out += format_date(e.date);
    out += ',';
    out += direction_name(e.direction);
    out += ',';
    out += format_time_of_day(e.t_start);
    out += ',';
    out += format_time_of_day(e.t_change);
    out += ',';
    out += format_time_of_day(e.t_end);
    out += ',';
    out += fmt_shortest(e.s_start);
    out += ',';
    out += fmt_shortest(e.s_change);
    out += ',';
    out += fmt_shortest(e.s_end);
    out += ',';
    out += std::to_string(e.trades_to_change);
    out += ',';
    out += std::to_string(e.trades_total);
    out += ',';
    out += std::to_string(e.duration);
    out += ',';
    out += fmt_shortest(e.r_uee);
    out += ',';
    out += std::to_string(e.start_idx);
    out += ',';
    out += std::to_string(e.change_idx);
    out += ',';
    out += std::to_string(e.end_idx);
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json event_to_json(const UeeEvent& e,
                                            const std::string& id) {
  nlohmann::ordered_json j;
  j["event_id"] = id;
  j["symbol"] = e.symbol;
  j["date"] = format_date(e.date);
  j["direction"] = direction_name(e.direction);
  j["t_start"] = e.t_start;
  j["t_change"] = e.t_change;
  j["t_end"] = e.t_end;
  j["s_start"] = e.s_start;
  j["s_change"] = e.s_change;
  j["s_end"] = e.s_end;
  j["trades_to_change"] = e.trades_to_change;
  j["trades_total"] = e.trades_total;
  j["duration_ns"] = e.duration;
  j["r_uee"] = e.r_uee;
  j["start_idx"] = e.start_idx;
  j["change_idx"] = e.change_idx;
  j["end_idx"] = e.end_idx;
  return j;
}

inline std::string events_to_json(const std::vector<UeeEvent>& events,
                                  const std::vector<std::string>& ids) {
  nlohmann::ordered_json j;
  j["schema"] = kEventSchema;
  j["events"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < events.size(); ++i)
    j["events"].push_back(event_to_json(events[i], ids[i]));
  return j.dump(2) + "\n";
}

struct EventFile {
  std::vector<UeeEvent> events;
  std::vector<std::string> ids;
};

inline EventFile read_events_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open events file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != std::string("#schema=") + std::string(kEventSchema))
    throw std::runtime_error(path.string() + ": unknown event file schema");
  std::getline(in, line);  // column header
  EventFile out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    f.push_back(cur);
    if (f.size() != 17)
      throw std::runtime_error(path.string() + ": malformed event row");
    UeeEvent e;
    e.symbol = f[1];
    const auto date = parse_date(f[2]);
    if (!date) throw std::runtime_error(path.string() + ": bad event date");
    e.date = *date;
    if (f[3] == "crash") e.direction = Direction::FlashCrash;
    else if (f[3] == "spike") e.direction = Direction::FlashSpike;
    else throw std::runtime_error(path.string() + ": bad event direction");
    auto ts = [&](const std::string& s) {
      const auto t = parse_time_of_day(s);
      if (!t) throw std::runtime_error(path.string() + ": bad event time");
      return *t;
    };
    auto num = [&](const std::string& s) {
      double v = 0.0;
      const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
      if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::runtime_error(path.string() + ": bad event number");
      return v;
    };
    e.t_start = ts(f[4]);
    e.t_change = ts(f[5]);
    e.t_end = ts(f[6]);
    e.s_start = num(f[7]);
    e.s_change = num(f[8]);
    e.s_end = num(f[9]);
    e.trades_to_change = std::stoi(f[10]);
    e.trades_total = std::stoi(f[11]);
    e.duration = std::stoll(f[12]);
    e.r_uee = num(f[13]);
    e.start_idx = static_cast<std::size_t>(std::stoull(f[14]));
    e.change_idx = static_cast<std::size_t>(std::stoull(f[15]));
    e.end_idx = static_cast<std::size_t>(std::stoull(f[16]));
    out.ids.push_back(f[0]);
    out.events.push_back(std::move(e));
  }
  return out;
}

}  // namespace uee
