#pragma once

// UEE detection: scan a symbol-day trade stream for maximal monotonic price
// runs and classify runs that satisfy the criteria (return above threshold,
// enough trades, fast enough) as flash crashes or flash spikes.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "uee/records.hpp"

namespace uee {

struct DetectionCriteria {
  double threshold = 0.008;           // strict: |return| must exceed this
  int min_trades = 11;                // ">10 trades", counted through t_change
  Nanos max_duration = 1'500'000'000; // strict upper bound on run duration
  bool strict_monotonic = false;      // default: repeated prices keep a run

  bool valid() const {
    return threshold > 0.0 && min_trades >= 2 && max_duration > 0;
  }
  // e.g. "1500ms"; used to suffix per-criterion output files.
  std::string duration_label() const {
    return std::to_string(max_duration / 1'000'000) + "ms";
  }
};

enum class Direction { FlashCrash, FlashSpike };

inline const char* direction_name(Direction d) {
  return d == Direction::FlashCrash ? "crash" : "spike";
}

struct MonotonicRun {
  Direction direction;
  std::size_t first = 0;  // inclusive indices into the trade stream
  std::size_t last = 0;
  std::size_t length() const { return last - first + 1; }
  // Cumulative return of trade k from the run start.
  double cum_return(const std::vector<TradeRecord>& trades,
                    std::size_t k) const {
    return (trades[k].price - trades[first].price) / trades[first].price;
  }
  bool operator==(const MonotonicRun&) const = default;
};

// All maximal monotonic runs of length >= 2 with nonzero net price change.
// Monotonicity is non-strict unless `strict`: repeated prices extend a run.
// A trade at a local extremum ends one run and begins the next, so adjacent
// runs share trades.  Flat runs are not emitted.
inline std::vector<MonotonicRun> monotonic_runs(
    const std::vector<TradeRecord>& trades, bool strict = false) {
  std::vector<MonotonicRun> runs;
  const std::size_t n = trades.size();
  if (n < 2) return runs;

  auto scan = [&](bool decreasing) {
    auto step_ok = [&](double from, double to) {
      if (decreasing) return strict ? to < from : to <= from;
      return strict ? to > from : to >= from;
    };
    std::size_t i = 0;
    while (i + 1 < n) {
      if (!step_ok(trades[i].price, trades[i + 1].price)) {
        ++i;
        continue;
      }
      std::size_t j = i + 1;
      while (j + 1 < n && step_ok(trades[j].price, trades[j + 1].price)) ++j;
      if (trades[j].price != trades[i].price)
        runs.push_back({decreasing ? Direction::FlashCrash
                                   : Direction::FlashSpike,
                        i, j});
      i = j;  // a maximal run's last trade may begin the next run
    }
  };
  scan(true);
  scan(false);
  std::sort(runs.begin(), runs.end(),
            [](const MonotonicRun& a, const MonotonicRun& b) {
              if (a.first != b.first) return a.first < b.first;
              if (a.last != b.last) return a.last < b.last;
              return a.direction < b.direction;
            });
  return runs;
}

struct UeeEvent {
  std::string symbol;
  Date date;
  Direction direction = Direction::FlashCrash;
  std::size_t start_idx = 0, change_idx = 0, end_idx = 0;
  Nanos t_start = 0, t_change = 0, t_end = 0;
  double s_start = 0.0, s_change = 0.0, s_end = 0.0;
  int trades_to_change = 0;  // run start through t_change, inclusive
  int trades_total = 0;      // run start through run end
  Nanos duration = 0;        // t_end - t_start
  double r_uee = 0.0;        // (s_end - s_start) / s_start
  bool operator==(const UeeEvent&) const = default;
};

inline double uee_return(const UeeEvent& e) {
  return (e.s_end - e.s_start) / e.s_start;
}

// Emits one event per qualifying run.  t_change is the earliest trade at
// which all of these hold at once: cumulative |return| from the run start
// exceeds the threshold, at least min_trades trades have printed (run start
// inclusive), and the elapsed time is under max_duration.  Runs whose
// monotonic trend outlives max_duration are excluded entirely, not
// truncated.
inline std::vector<UeeEvent> detect_events(const TradeSeries& day,
                                           const DetectionCriteria& c) {
  if (!c.valid()) throw std::invalid_argument("invalid detection criteria");
  std::vector<UeeEvent> events;
  const auto& tr = day.trades;
  constexpr std::size_t npos = static_cast<std::size_t>(-1);

  for (const MonotonicRun& run : monotonic_runs(tr, c.strict_monotonic)) {
    if (tr[run.last].ts - tr[run.first].ts >= c.max_duration) continue;
    const double base = tr[run.first].price;
    const Nanos t0 = tr[run.first].ts;
    std::size_t change = npos;
    for (std::size_t k = run.first; k <= run.last; ++k) {
      const double ret = (tr[k].price - base) / base;
      if (std::fabs(ret) > c.threshold &&
          k - run.first + 1 >= static_cast<std::size_t>(c.min_trades) &&
          tr[k].ts - t0 < c.max_duration) {
        change = k;
        break;
      }
    }
    if (change == npos) continue;

    UeeEvent e;
    e.symbol = day.key.symbol;
    e.date = day.key.date;
    e.direction = run.direction;
    e.start_idx = run.first;
    e.change_idx = change;
    e.end_idx = run.last;
    e.t_start = tr[run.first].ts;
    e.t_change = tr[change].ts;
    e.t_end = tr[run.last].ts;
    e.s_start = tr[run.first].price;
    e.s_change = tr[change].price;
    e.s_end = tr[run.last].price;
    e.trades_to_change = static_cast<int>(change - run.first + 1);
    e.trades_total = static_cast<int>(run.length());
    e.duration = e.t_end - e.t_start;
    e.r_uee = (e.s_end - e.s_start) / e.s_start;
    events.push_back(std::move(e));
  }
  return events;
}

}  // namespace uee
