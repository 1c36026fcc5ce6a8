#pragma once

// Reference detector.  Every candidate start index is extended to its
// maximal monotone interval and the event criteria are re-evaluated from
// scratch, quadratic in the worst case.  Used as the detection oracle in
// tests and as the generation-time self check in synthgen; kept separate
// from (and independent of) the linear scan in detect.hpp.

#include <cmath>
#include <cstddef>
#include <vector>

#include "uee/detect.hpp"
#include "uee/records.hpp"

namespace uee {

inline std::vector<MonotonicRun> brute_force_runs(
    const std::vector<TradeRecord>& t, bool strict = false) {
  std::vector<MonotonicRun> out;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (int d = 0; d < 2; ++d) {
      const bool dec = (d == 0);
      auto ok = [&](double from, double to) {
        if (dec) return strict ? to < from : to <= from;
        return strict ? to > from : to >= from;
      };
      if (i > 0 && ok(t[i - 1].price, t[i].price)) continue;  // extendable left
      std::size_t j = i;
      while (j + 1 < n && ok(t[j].price, t[j + 1].price)) ++j;
      if (j == i) continue;
      const bool net_down = t[j].price < t[i].price;
      const bool net_up = t[j].price > t[i].price;
      if (dec && !net_down) continue;
      if (!dec && !net_up) continue;
      out.push_back(
          {dec ? Direction::FlashCrash : Direction::FlashSpike, i, j});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const MonotonicRun& a, const MonotonicRun& b) {
              if (a.first != b.first) return a.first < b.first;
              if (a.last != b.last) return a.last < b.last;
              return a.direction < b.direction;
            });
  return out;
}

inline std::vector<UeeEvent> brute_force_detect(const TradeSeries& day,
                                                const DetectionCriteria& c) {
  std::vector<UeeEvent> events;
  const auto& tr = day.trades;
  for (const MonotonicRun& run : brute_force_runs(tr, c.strict_monotonic)) {
    const Nanos run_span = tr[run.last].ts - tr[run.first].ts;
    if (run_span >= c.max_duration) continue;

    bool found = false;
    std::size_t change = 0;
    for (std::size_t k = run.first; k <= run.last && !found; ++k) {
      const double ret = (tr[k].price - tr[run.first].price) /
                         tr[run.first].price;
      const bool over_threshold = std::fabs(ret) > c.threshold;
      const bool enough_trades =
          k - run.first + 1 >= static_cast<std::size_t>(c.min_trades);
      const bool fast_enough = tr[k].ts - tr[run.first].ts < c.max_duration;
      if (over_threshold && enough_trades && fast_enough) {
        change = k;
        found = true;
      }
    }
    if (!found) continue;

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
