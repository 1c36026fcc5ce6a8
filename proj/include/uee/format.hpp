#pragma once

// Input-format descriptor: maps a delimited-text layout onto the canonical
// trade/quote columns.  Real TAQ-style layouts plug in via the column list;
// the defaults describe the canonical format emitted by this project.

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "uee/time.hpp"

namespace uee {

enum class TimeResolution { Nanoseconds, Milliseconds };

inline const char* resolution_name(TimeResolution r) {
  return r == TimeResolution::Nanoseconds ? "ns" : "ms";
}

struct TradeColumnMap {
  int timestamp = -1, symbol = -1, price = -1, volume = -1;
  int width = 0;  // total columns expected per line
};

struct QuoteColumnMap {
  int timestamp = -1, symbol = -1, bid = -1, bid_size = -1, ask = -1,
      ask_size = -1;
  int width = 0;
};

struct FormatDescriptor {
  char delimiter = ',';
  bool has_header = true;
  // Declared granularity of the source clock.  Timestamps always normalize
  // to nanoseconds; this records what the file actually resolves.
  TimeResolution resolution = TimeResolution::Nanoseconds;
  std::vector<std::string> trade_columns{"timestamp", "symbol", "price",
                                         "volume"};
  std::vector<std::string> quote_columns{"timestamp", "symbol",  "bid",
                                         "bid_size",  "ask",     "ask_size"};
  // Optional date override for files whose name carries no date.
  std::optional<Date> date;

  TradeColumnMap trade_map() const {
    TradeColumnMap m;
    m.width = static_cast<int>(trade_columns.size());
    for (int i = 0; i < m.width; ++i) {
      const std::string& c = trade_columns[i];
      if (c == "timestamp") m.timestamp = i;
      else if (c == "symbol") m.symbol = i;
      else if (c == "price") m.price = i;
      else if (c == "volume") m.volume = i;
      else if (c != "skip")
        throw std::runtime_error("format: unknown trade column '" + c + "'");
    }
    if (m.timestamp < 0 || m.symbol < 0 || m.price < 0 || m.volume < 0)
      throw std::runtime_error("format: trade columns missing a required name");
    return m;
  }

  QuoteColumnMap quote_map() const {
    QuoteColumnMap m;
    m.width = static_cast<int>(quote_columns.size());
    for (int i = 0; i < m.width; ++i) {
      const std::string& c = quote_columns[i];
      if (c == "timestamp") m.timestamp = i;
      else if (c == "symbol") m.symbol = i;
      else if (c == "bid") m.bid = i;
      else if (c == "bid_size") m.bid_size = i;
      else if (c == "ask") m.ask = i;
      else if (c == "ask_size") m.ask_size = i;
      else if (c != "skip")
        throw std::runtime_error("format: unknown quote column '" + c + "'");
    }
    if (m.timestamp < 0 || m.symbol < 0 || m.bid < 0 || m.bid_size < 0 ||
        m.ask < 0 || m.ask_size < 0)
      throw std::runtime_error("format: quote columns missing a required name");
    return m;
  }
};

namespace detail {
inline std::vector<std::string> split_csv_names(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}
}  // namespace detail

// Key-value descriptor file, one `key=value` per line, '#' comments.
inline FormatDescriptor load_format_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open format descriptor: " + path);
  FormatDescriptor fd;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "delimiter") {
      if (val == "\\t") fd.delimiter = '\t';
      else if (val.size() == 1) fd.delimiter = val[0];
      else throw std::runtime_error(path + ": bad delimiter '" + val + "'");
    } else if (key == "header") {
      fd.has_header = (val == "true" || val == "1");
    } else if (key == "resolution") {
      if (val == "ns") fd.resolution = TimeResolution::Nanoseconds;
      else if (val == "ms") fd.resolution = TimeResolution::Milliseconds;
      else throw std::runtime_error(path + ": bad resolution '" + val + "'");
    } else if (key == "trade_columns") {
      fd.trade_columns = detail::split_csv_names(val);
    } else if (key == "quote_columns") {
      fd.quote_columns = detail::split_csv_names(val);
    } else if (key == "date") {
      const auto d = parse_date(val);
      if (!d) throw std::runtime_error(path + ": bad date '" + val + "'");
      fd.date = *d;
    } else {
      throw std::runtime_error(path + ": unknown key '" + key + "'");
    }
  }
  fd.trade_map();  // validate eagerly
  fd.quote_map();
  return fd;
}

inline std::string format_descriptor_text(const FormatDescriptor& fd) {
  std::ostringstream os;
  os << "delimiter=" << (fd.delimiter == '\t' ? "\\t" : std::string(1, fd.delimiter))
     << "\nheader=" << (fd.has_header ? "true" : "false")
     << "\nresolution=" << resolution_name(fd.resolution) << "\ntrade_columns=";
  for (std::size_t i = 0; i < fd.trade_columns.size(); ++i)
    os << (i ? "," : "") << fd.trade_columns[i];
  os << "\nquote_columns=";
  for (std::size_t i = 0; i < fd.quote_columns.size(); ++i)
    os << (i ? "," : "") << fd.quote_columns[i];
  if (fd.date) os << "\ndate=" << format_date(*fd.date);
  os << "\n";
  return os.str();
}

}  // namespace uee
