#pragma once

// Delimited-text parsing and serialization for the canonical trade/quote
// formats.  Malformed records are rejected per line with a reason, never
// silently dropped; streams come out grouped by symbol, time-ordered, with
// the sequence ordinal assigned in file order.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "uee/format.hpp"
#include "uee/records.hpp"
#include "uee/universe.hpp"
#include "uee/validation.hpp"

namespace uee {

namespace detail {

inline bool parse_f64(std::string_view s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  const auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e;
}

inline bool parse_i64(std::string_view s, std::int64_t& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  const auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e;
}

// Splits into at most N fields; returns the field count or -1 on overflow.
template <std::size_t N>
inline int split_line(std::string_view line, char delim,
                      std::array<std::string_view, N>& out) {
  std::size_t n = 0, start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == delim) {
      if (n == N) return -1;
      out[n++] = line.substr(start, i - start);
      start = i + 1;
    }
  }
  return static_cast<int>(n);
}

inline void append_shortest(std::string& out, double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, r.ptr);
}

}  // namespace detail

struct TradeParseResult {
  std::vector<TradeSeries> series;  // sorted by symbol
  ValidationReport report;
};

struct QuoteParseResult {
  std::vector<QuoteSeries> series;
  ValidationReport report;
};

inline TradeParseResult parse_trades(std::istream& in,
                                     const FormatDescriptor& fmt, Date date,
                                     const Universe* universe = nullptr) {
  TradeParseResult out;
  ValidationReport& vr = out.report;
  const TradeColumnMap cm = fmt.trade_map();

  struct PerSymbol {
    TradeSeries series;
    Nanos last_ts = -1;
  };
  std::map<std::string, PerSymbol, std::less<>> by_symbol;

  std::string line;
  std::array<std::string_view, 16> f;
  bool header_pending = fmt.has_header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header_pending) {
      header_pending = false;
      continue;
    }
    ++vr.lines_total;
    const int n = detail::split_line(line, fmt.delimiter, f);
    if (n != cm.width) {
      vr.reject(RejectReason::MalformedLine);
      continue;
    }
    const auto ts = parse_time_of_day(f[cm.timestamp]);
    if (!ts) {
      vr.reject(RejectReason::BadTimestamp);
      continue;
    }
    const std::string_view sym = f[cm.symbol];
    if (sym.empty()) {
      vr.reject(RejectReason::MalformedLine);
      continue;
    }
    double price = 0.0;
    if (!detail::parse_f64(f[cm.price], price) || !std::isfinite(price)) {
      vr.reject(RejectReason::MalformedLine);
      continue;
    }
    if (price <= 0.0) {
      vr.reject(RejectReason::NonPositivePrice);
      continue;
    }
    std::int64_t volume = 0;
    if (!detail::parse_i64(f[cm.volume], volume)) {
      vr.reject(RejectReason::MalformedLine);
      continue;
    }
    if (volume <= 0) {
      vr.reject(RejectReason::NonPositiveVolume);
      continue;
    }
    if (universe && !universe->contains(sym)) {
      vr.reject(RejectReason::UniverseFiltered);
      continue;
    }
    auto it = by_symbol.find(sym);
    if (it == by_symbol.end()) {
      it = by_symbol.emplace(std::string(sym), PerSymbol{}).first;
      it->second.series.key = {std::string(sym), date};
    }
    PerSymbol& ps = it->second;
    if (*ts < ps.last_ts) {
      vr.reject(RejectReason::OutOfOrder);
      continue;
    }
    ps.last_ts = *ts;
    TradeRecord rec{*ts, price, static_cast<std::uint64_t>(volume),
                    static_cast<std::uint32_t>(ps.series.trades.size())};
    ps.series.trades.push_back(rec);
    ++vr.accepted;
  }

  for (auto& [sym, ps] : by_symbol) {
    auto& cov = vr.coverage[sym];
    cov.records += ps.series.trades.size();
    cov.symbol_days += 1;
    cov.first_ts = ps.series.trades.front().ts;
    cov.last_ts = ps.series.trades.back().ts;
    out.series.push_back(std::move(ps.series));
  }
  return out;
}

inline QuoteParseResult parse_quotes(std::istream& in,
                                     const FormatDescriptor& fmt, Date date,
                                     const Universe* universe = nullptr) {
  QuoteParseResult out;
  ValidationReport& vr = out.report;
  const QuoteColumnMap cm = fmt.quote_map();

  struct PerSymbol {
    QuoteSeries series;
    Nanos last_ts = -1;
  };
  std::map<std::string, PerSymbol, std::less<>> by_symbol;

  std::string line;
  std::array<std::string_view, 16> f;
  bool header_pending = fmt.has_header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header_pending) {
      header_pending = false;
      continue;
    }
    ++vr.lines_total;
    const int n = detail::split_line(line, fmt.delimiter, f);
    if (n != cm.width) {
      vr.reject(RejectReason::MalformedLine);
      continue;
    }
    const auto ts = parse_time_of_day(f[cm.timestamp]);
    if (!ts) {
      vr.reject(RejectReason::BadTimestamp);
      continue;
    }
    const std::string_view sym = f[cm.symbol];
    if (sym.empty()) {
      vr.reject(RejectReason::MalformedLine);
      continue;
    }
    double bid = 0.0, ask = 0.0;
    if (!detail::parse_f64(f[cm.bid], bid) || !std::isfinite(bid) ||
        !detail::parse_f64(f[cm.ask], ask) || !std::isfinite(ask)) {
      vr.reject(RejectReason::MalformedLine);
      continue;
    }
    if (bid < 0.0 || ask < 0.0) {
      vr.reject(RejectReason::NegativeQuote);
      continue;
    }
    std::int64_t bs = 0, as = 0;
    if (!detail::parse_i64(f[cm.bid_size], bs) ||
        !detail::parse_i64(f[cm.ask_size], as) || bs < 0 || as < 0) {
      vr.reject(RejectReason::MalformedLine);
      continue;
    }
    if (universe && !universe->contains(sym)) {
      vr.reject(RejectReason::UniverseFiltered);
      continue;
    }
    auto it = by_symbol.find(sym);
    if (it == by_symbol.end()) {
      it = by_symbol.emplace(std::string(sym), PerSymbol{}).first;
      it->second.series.key = {std::string(sym), date};
    }
    PerSymbol& ps = it->second;
    if (*ts < ps.last_ts) {
      vr.reject(RejectReason::OutOfOrder);
      continue;
    }
    ps.last_ts = *ts;
    QuoteRecord rec{*ts,
                    bid,
                    ask,
                    static_cast<std::uint64_t>(bs),
                    static_cast<std::uint64_t>(as),
                    static_cast<std::uint32_t>(ps.series.quotes.size()),
                    0};
    if (bid > ask) {
      rec.flags |= kQuoteCrossed;
      ++vr.crossed_quotes;
    }
    if (bid <= 0.0 || ask <= 0.0) {
      rec.flags |= kQuoteDegenerate;
      ++vr.degenerate_quotes;
    }
    ps.series.quotes.push_back(rec);
    ++vr.accepted;
  }

  for (auto& [sym, ps] : by_symbol) {
    auto& cov = vr.coverage[sym];
    cov.records += ps.series.quotes.size();
    cov.symbol_days += 1;
    cov.first_ts = ps.series.quotes.front().ts;
    cov.last_ts = ps.series.quotes.back().ts;
    out.series.push_back(std::move(ps.series));
  }
  return out;
}

inline std::string trade_header(char delim = ',') {
  std::string h = "timestamp";
  h += delim;
  h += "symbol";
  h += delim;
  h += "price";
  h += delim;
  h += "volume";
  return h;
}

inline std::string quote_header(char delim = ',') {
  std::string h = "timestamp";
  for (const char* c : {"symbol", "bid", "bid_size", "ask", "ask_size"}) {
    h += delim;
    h += c;
  }
  return h;
}

// Prices use the shortest representation that round-trips the double, so
// serialize-then-parse yields the identical record.
inline void append_trade_line(std::string& out, const TradeRecord& r,
                              std::string_view symbol, char delim = ',') {
  out += format_time_of_day(r.ts);
  out += delim;
  out.append(symbol.data(), symbol.size());
  out += delim;
  detail::append_shortest(out, r.price);
  out += delim;
  out += std::to_string(r.volume);
  out += '\n';
}

inline void append_quote_line(std::string& out, const QuoteRecord& r,
                              std::string_view symbol, char delim = ',') {
  out += format_time_of_day(r.ts);
  out += delim;
  out.append(symbol.data(), symbol.size());
  out += delim;
  detail::append_shortest(out, r.bid);
  out += delim;
  out += std::to_string(r.bid_size);
  out += delim;
  detail::append_shortest(out, r.ask);
  out += delim;
  out += std::to_string(r.ask_size);
  out += '\n';
}

}  // namespace uee
