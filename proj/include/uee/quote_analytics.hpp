#pragma once

// Per-event quote analytics: the largest return in the quotes inside the
// event interval, the trading volume accumulated to criterion fulfillment,
// and relative-spread windows around the event start.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "uee/detect.hpp"
#include "uee/records.hpp"

namespace uee {

// s(t) = (a(t) - b(t)) / a(t).  Undefined for ask <= 0 and for crossed or
// negative quotes; a one-sided quote (bid == 0) yields 1, the boundary of
// the definition, and is flagged degenerate upstream.
inline std::optional<double> relative_spread(const QuoteRecord& q) {
  if (q.ask <= 0.0 || q.bid < 0.0 || q.bid > q.ask) return std::nullopt;
  return (q.ask - q.bid) / q.ask;
}

enum class QuoteSide { Bid, Ask };

inline const char* quote_side_name(QuoteSide s) {
  return s == QuoteSide::Bid ? "bid" : "ask";
}

struct LargestQuoteMove {
  QuoteSide side = QuoteSide::Bid;
  double value = 0.0;  // signed; max magnitude over consecutive updates
  Nanos t_from = 0, t_to = 0;
  bool operator==(const LargestQuoteMove&) const = default;
};

// Largest-magnitude return between consecutive quote updates with
// t_start <= t <= t_end, on the bid side for crashes and the ask side for
// spikes.  Zero-priced side values are skipped (the prior quote is the
// divisor).  Fewer than two usable in-interval updates: no result; the
// caller counts the event in a diagnostics tally.
inline std::optional<LargestQuoteMove> largest_quote_return(
    const UeeEvent& e, const QuoteSeries& qs) {
  const QuoteSide side =
      e.direction == Direction::FlashCrash ? QuoteSide::Bid : QuoteSide::Ask;
  const auto& q = qs.quotes;
  auto it = std::lower_bound(
      q.begin(), q.end(), e.t_start,
      [](const QuoteRecord& r, Nanos t) { return r.ts < t; });

  bool have_prev = false, have_best = false;
  double prev_price = 0.0;
  Nanos prev_ts = 0;
  LargestQuoteMove best{side, 0.0, 0, 0};
  for (; it != q.end() && it->ts <= e.t_end; ++it) {
    const double p = side == QuoteSide::Bid ? it->bid : it->ask;
    if (p <= 0.0) continue;
    if (have_prev) {
      const double ret = (p - prev_price) / prev_price;
      if (!have_best || std::fabs(ret) > std::fabs(best.value)) {
        best.value = ret;
        best.t_from = prev_ts;
        best.t_to = it->ts;
        have_best = true;
      }
    }
    prev_price = p;
    prev_ts = it->ts;
    have_prev = true;
  }
  if (!have_best) return std::nullopt;
  return best;
}

// Sum of trade volumes from the run start through t_change, inclusive.
inline std::uint64_t accumulated_volume(const UeeEvent& e,
                                        const TradeSeries& day) {
  std::uint64_t shares = 0;
  for (std::size_t k = e.start_idx; k <= e.change_idx; ++k)
    shares += day.trades[k].volume;
  return shares;
}

// The quote tape reduced to spread events: accepted (two-sided, uncrossed)
// updates with their relative spread.  With `spread_changes_only`, updates
// that leave the spread value unchanged are dropped (sensitivity flag).
struct SpreadTape {
  std::vector<Nanos> ts;
  std::vector<double> s;

  static SpreadTape build(const QuoteSeries& qs,
                          bool spread_changes_only = false) {
    SpreadTape tape;
    tape.ts.reserve(qs.quotes.size());
    tape.s.reserve(qs.quotes.size());
    for (const QuoteRecord& q : qs.quotes) {
      if (!q.spread_ok()) continue;
      const double s = (q.ask - q.bid) / q.ask;
      if (spread_changes_only && !tape.s.empty() && s == tape.s.back())
        continue;
      tape.ts.push_back(q.ts);
      tape.s.push_back(s);
    }
    return tape;
  }
};

struct SpreadWindow {
  int half_width = 400;
  // values[half_width + offset] for offset in -W..W; absent offsets hold 0
  // with present[] false.  Windows truncated by the day edge are incomplete.
  std::vector<double> values;
  std::vector<std::uint8_t> present;

  bool complete() const {
    for (std::uint8_t p : present)
      if (!p) return false;
    return true;
  }
};

// Offset 0 anchors at the last spread event at or before t_start; offsets
// -W..-1 are the W preceding events, +1..+W the following.  No anchor (no
// spread event at or before t_start): no result, the event is excluded from
// averaging.
inline std::optional<SpreadWindow> spread_window(const UeeEvent& e,
                                                 const SpreadTape& tape,
                                                 int half_width = 400) {
  auto up = std::upper_bound(tape.ts.begin(), tape.ts.end(), e.t_start);
  if (up == tape.ts.begin()) return std::nullopt;
  const std::ptrdiff_t anchor = (up - tape.ts.begin()) - 1;

  SpreadWindow w;
  w.half_width = half_width;
  const int width = 2 * half_width + 1;
  w.values.assign(width, 0.0);
  w.present.assign(width, 0);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(tape.s.size());
  for (int off = -half_width; off <= half_width; ++off) {
    const std::ptrdiff_t idx = anchor + off;
    if (idx < 0 || idx >= n) continue;
    w.values[half_width + off] = tape.s[idx];
    w.present[half_width + off] = 1;
  }
  return w;
}

inline std::optional<SpreadWindow> spread_window(
    const UeeEvent& e, const QuoteSeries& qs, int half_width = 400,
    bool spread_changes_only = false) {
  return spread_window(e, SpreadTape::build(qs, spread_changes_only),
                       half_width);
}

struct SpreadProfile {
  int half_width = 0;
  std::size_t windows = 0;         // complete windows averaged
  std::vector<double> mean;        // empty when no complete window exists
};

// Arithmetic mean per offset over complete windows only, so day-edge
// truncation cannot bias the profile.
inline SpreadProfile average_spread_profile(
    const std::vector<SpreadWindow>& windows) {
  SpreadProfile p;
  for (const SpreadWindow& w : windows) {
    if (!w.complete()) continue;
    if (p.windows == 0) {
      p.half_width = w.half_width;
      p.mean.assign(w.values.size(), 0.0);
    }
    for (std::size_t i = 0; i < w.values.size(); ++i) p.mean[i] += w.values[i];
    ++p.windows;
  }
  if (p.windows)
    for (double& v : p.mean) v /= static_cast<double>(p.windows);
  return p;
}

}  // namespace uee
