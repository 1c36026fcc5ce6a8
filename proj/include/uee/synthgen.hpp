#pragma once

// Synthetic symbol-days with planted, fully specified UEEs and near-miss
// negatives.  The generator is the validation oracle for the detector and
// the analytics: every planted event records its exact expected fields,
// computed from the realized tick prices with the same arithmetic the
// pipeline uses, so comparisons are exact after the CSV round trip.
//
// Layout of a planted region, spliced over erased baseline:
//
//   [ramp quotes] [lead trade] [event trades + quotes (gap mid-event)]
//   [recovery trades + settling quotes]
//
// The lead trade sits one tick on the far side of the run start and the
// first recovery trade reverses strictly past the run end, so the planted
// run is maximal by construction.  The baseline walk reverses direction
// every few steps, which caps its monotonic runs far below the trade-count
// criterion; a brute-force scan at generation time verifies that each
// finished day contains exactly the planted events and nothing else.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uee/brute_force.hpp"
#include "uee/csv.hpp"
#include "uee/detect.hpp"
#include "uee/io.hpp"
#include "uee/quote_analytics.hpp"
#include "uee/records.hpp"

namespace uee::synth {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PlantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BaselineParams {
  double initial_price = 100.0;
  double tick = 0.01;
  Nanos start_tod = time_of_day(9, 15);
  Nanos end_tod = time_of_day(17, 15);
  Nanos mean_trade_gap = kNsPerSec;
  int max_run_steps = 5;  // strict reversal forced after this many steps
  int quotes_per_trade = 2;
  int spread_ticks = 2;
  std::uint64_t base_volume = 100;
  bool emit_quotes = true;
};

struct SyntheticDay {
  std::string symbol;
  Date date;
  BaselineParams params;
  std::vector<TradeRecord> trades;
  std::vector<QuoteRecord> quotes;
  std::vector<std::pair<Nanos, Nanos>> reserved;  // planted regions

  TradeSeries trade_series() const {
    return TradeSeries{{symbol, date}, trades};
  }
  QuoteSeries quote_series() const {
    return QuoteSeries{{symbol, date}, quotes};
  }

  void renumber() {
    for (std::size_t i = 0; i < trades.size(); ++i)
      trades[i].seq = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < quotes.size(); ++i)
      quotes[i].seq = static_cast<std::uint32_t>(i);
  }

  std::string trades_csv() const {
    std::string out = trade_header() + "\n";
    out.reserve(out.size() + trades.size() * 40);
    for (const TradeRecord& r : trades) append_trade_line(out, r, symbol);
    return out;
  }
  std::string quotes_csv() const {
    std::string out = quote_header() + "\n";
    out.reserve(out.size() + quotes.size() * 56);
    for (const QuoteRecord& r : quotes) append_quote_line(out, r, symbol);
    return out;
  }
};

namespace detail {

inline std::int64_t ticks_of(double price, double tick) {
  return std::llround(price / tick);
}
inline double price_of(std::int64_t ticks, double tick) {
  return static_cast<double>(ticks) * tick;
}

inline QuoteRecord make_quote(Nanos ts, std::int64_t bid_ticks,
                              std::int64_t ask_ticks, double tick,
                              std::uint64_t bs, std::uint64_t as) {
  QuoteRecord q;
  q.ts = ts;
  q.bid = price_of(bid_ticks, tick);
  q.ask = price_of(ask_ticks, tick);
  q.bid_size = bs;
  q.ask_size = as;
  if (q.bid > q.ask) q.flags |= kQuoteCrossed;
  if (q.bid <= 0.0 || q.ask <= 0.0) q.flags |= kQuoteDegenerate;
  return q;
}

}  // namespace detail

inline std::vector<DetectionCriteria> default_check_criteria(
    double threshold = 0.008, int min_trades = 11) {
  DetectionCriteria c15;
  c15.threshold = threshold;
  c15.min_trades = min_trades;
  c15.max_duration = 1'500'000'000;
  DetectionCriteria c20 = c15;
  c20.max_duration = 2'000'000'000;
  return {c15, c20};
}

// Reproducible bounded-volatility walk with jittered arrivals and quotes
// straddling the trade price.  Contains no interval satisfying the given
// criteria; verified with the brute-force scan, regenerating from a derived
// seed a few times before giving up.
inline SyntheticDay generate_baseline(
    std::uint64_t seed, const std::string& symbol, Date date,
    const BaselineParams& params = {},
    const std::vector<DetectionCriteria>& check = default_check_criteria()) {
  if (params.initial_price <= 0.0 || params.tick <= 0.0 ||
      params.mean_trade_gap <= 0)
    throw GenerationError("baseline: non-positive price, tick or trade rate");

  for (int attempt = 0; attempt < 5; ++attempt) {
    SyntheticDay day;
    day.symbol = symbol;
    day.date = date;
    day.params = params;
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * attempt);

    std::int64_t ticks = detail::ticks_of(params.initial_price, params.tick);
    const std::int64_t floor_ticks = std::max<std::int64_t>(100, ticks / 10);
    int dir = (rng() & 1) ? 1 : -1;
    int run_steps = 0;
    Nanos t = params.start_tod;

    while (t < params.end_tod) {
      const bool flip = run_steps >= params.max_run_steps || (rng() % 100) < 35;
      if (flip) {
        dir = -dir;
        run_steps = 0;
      }
      ++run_steps;
      const int mag = 1 + static_cast<int>(rng() % 2);
      ticks += dir * mag;
      if (ticks < floor_ticks) {  // reflect away from zero
        ticks += 2 * mag;
        dir = 1;
        run_steps = 1;
      }
      const std::uint64_t volume =
          params.base_volume * (1 + rng() % 10);
      day.trades.push_back(
          {t, detail::price_of(ticks, params.tick), volume, 0});

      const Nanos gap = static_cast<Nanos>(
          static_cast<double>(params.mean_trade_gap) *
          (0.4 + 1.2 * static_cast<double>(rng() % 1000) / 1000.0));
      if (params.emit_quotes) {
        for (int k = 1; k <= params.quotes_per_trade; ++k) {
          const Nanos qt =
              t + gap * k / (params.quotes_per_trade + 1);
          const std::int64_t jb = static_cast<std::int64_t>(rng() % 2);
          const std::int64_t ja = static_cast<std::int64_t>(rng() % 2);
          day.quotes.push_back(detail::make_quote(
              qt, ticks - params.spread_ticks - jb,
              ticks + params.spread_ticks + ja, params.tick,
              100 * (1 + rng() % 10), 100 * (1 + rng() % 10)));
        }
      }
      t += std::max<Nanos>(gap, 1);
    }
    if (day.trades.size() < 2) throw GenerationError("baseline: day too short");
    day.renumber();

    bool clean = true;
    const TradeSeries series = day.trade_series();
    for (const DetectionCriteria& c : check)
      if (!brute_force_detect(series, c).empty()) {
        clean = false;
        break;
      }
    if (clean) return day;
  }
  throw GenerationError("baseline: could not avoid accidental events for " +
                        symbol + " " + format_date(date));
}

struct PlantSpec {
  Direction direction = Direction::FlashCrash;
  double total_return = 0.009;  // magnitude; the sign follows direction
  int trade_count = 12;
  Nanos duration = kNsPerSec;
  Nanos start_tod = 0;
  bool reversal = false;  // one mid-run counter-tick; never an event
  std::vector<std::uint64_t> volumes;  // padded with the baseline volume

  // quote path (full_quotes: ramp + mid-event gap + settling updates)
  bool full_quotes = true;
  double quote_gap = 0.012;
  int ramp_updates = 50;
  Nanos ramp_spacing = 10 * kNsPerMilli;
  double ramp_start_spread = 0.0004;
  double ramp_end_spread = 0.004;

  // recovery path; eta targets are realized on the tick grid
  std::vector<double> recovery_eta;
  Nanos recovery_gap = 250 * kNsPerMilli;
  Nanos lead_gap = 100 * kNsPerMilli;
};

struct PlantContext {
  double threshold = 0.008;
  int min_trades = 11;
  std::vector<Nanos> durations{1'500'000'000, 2'000'000'000};
};

struct ExpectedEvent {
  Direction direction = Direction::FlashCrash;
  Nanos t_start = 0, t_change = 0, t_end = 0;
  double s_start = 0, s_change = 0, s_end = 0;
  int trades_to_change = 0, trades_total = 0;
  double r_uee = 0;
  bool operator==(const ExpectedEvent&) const = default;
};

struct GroundTruthEntry {
  std::string symbol;
  Date date;
  std::string kind;  // positive | too_few_trades | below_threshold |
                     // too_slow | reversal
  Nanos plant_start = 0;
  std::map<Nanos, ExpectedEvent> expected;  // keyed by max_duration
  std::optional<LargestQuoteMove> quote_move;
  std::uint64_t accumulated_volume = 0;
  std::vector<double> ramp_spread;  // realized, offsets -(R-1)..0
  std::vector<double> eta;          // realized recovery ratios
};

struct GroundTruth {
  std::uint64_t seed = 0;
  double threshold = 0.008;
  int min_trades = 11;
  std::vector<Nanos> durations;
  std::vector<GroundTruthEntry> entries;

  std::uint64_t positives(Nanos duration) const {
    std::uint64_t n = 0;
    for (const auto& e : entries) n += e.expected.count(duration) ? 1 : 0;
    return n;
  }
};

// Inserts the specified monotonic run, quote path and recovery path into an
// existing day and records all expected analytics.  Throws PlantError when
// the spec is inconsistent, the location has no room, or it overlaps a
// previous plant.
inline GroundTruthEntry plant_uee(SyntheticDay& day, const PlantSpec& spec,
                                  const PlantContext& ctx = {}) {
  const double tick = day.params.tick;
  const int n = spec.trade_count;
  if (n < 2) throw PlantError("plant: trade_count < 2");
  if (spec.duration <= 0) throw PlantError("plant: non-positive duration");
  if (spec.total_return <= 0.0) throw PlantError("plant: non-positive return");
  if (spec.full_quotes && spec.ramp_updates < 2)
    throw PlantError("plant: ramp needs at least two updates");

  const bool crash = spec.direction == Direction::FlashCrash;
  const Nanos t_start = spec.start_tod;
  const Nanos t_end = t_start + spec.duration;
  const int n_rec = static_cast<int>(spec.recovery_eta.size());

  // region to replace
  const Nanos ramp_span =
      spec.full_quotes
          ? kNsPerMilli + static_cast<Nanos>(spec.ramp_updates - 1) *
                              spec.ramp_spacing
          : 0;
  const Nanos pre_span = std::max(spec.lead_gap, ramp_span);
  const Nanos region_lo = t_start - pre_span - kNsPerMilli;
  const Nanos tail_span =
      (n_rec > 0 ? static_cast<Nanos>(n_rec) * spec.recovery_gap
                 : spec.lead_gap) +
      spec.recovery_gap;
  const Nanos region_hi = t_end + tail_span;
  if (region_lo <= day.params.start_tod || region_hi >= day.params.end_tod)
    throw PlantError("plant: no room in the day at the requested start");
  for (const auto& [lo, hi] : day.reserved)
    if (region_lo < hi && lo < region_hi)
      throw PlantError("plant: overlaps an existing plant");

  // anchor price: last kept trade before the region
  auto before = std::lower_bound(
      day.trades.begin(), day.trades.end(), region_lo,
      [](const TradeRecord& r, Nanos t) { return r.ts < t; });
  const std::int64_t anchor_ticks =
      before == day.trades.begin()
          ? detail::ticks_of(day.params.initial_price, tick)
          : detail::ticks_of(std::prev(before)->price, tick);

  const std::int64_t lead_ticks = anchor_ticks;
  const std::int64_t s0_ticks = anchor_ticks + (crash ? 1 : -1);
  if (s0_ticks <= 1) throw PlantError("plant: start price too low");

  // Net move in ticks, clamped to stay strictly on the intended side of the
  // threshold; the realized return then cannot straddle the boundary within
  // double rounding.
  const bool crossing = spec.total_return > ctx.threshold;
  const double bound = ctx.threshold * static_cast<double>(s0_ticks);
  std::int64_t net_mag =
      std::llround(spec.total_return * static_cast<double>(s0_ticks));
  if (crossing)
    net_mag = std::max<std::int64_t>(
        net_mag, static_cast<std::int64_t>(std::ceil(bound + 0.05)));
  else
    net_mag = std::min<std::int64_t>(
        net_mag, static_cast<std::int64_t>(std::floor(bound - 0.05)));
  net_mag = std::max<std::int64_t>(net_mag, 1);
  const std::int64_t net = crash ? -net_mag : net_mag;

  // event trade times and tick path
  std::vector<Nanos> times(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    times[static_cast<std::size_t>(i)] =
        t_start + std::llround(static_cast<double>(i) *
                               static_cast<double>(spec.duration) /
                               static_cast<double>(n - 1));

  std::vector<std::int64_t> cum(static_cast<std::size_t>(n));
  if (!spec.reversal) {
    for (int i = 0; i < n; ++i)
      cum[static_cast<std::size_t>(i)] =
          std::llround(static_cast<double>(net) * i / (n - 1));
  } else {
    const int m = n / 2;
    if (m < 2 || m >= ctx.min_trades || n - m >= ctx.min_trades)
      throw PlantError("plant: reversal pieces must stay below min_trades");
    const std::int64_t d1 = std::llround(0.55 * static_cast<double>(net));
    const std::int64_t up = crash ? 2 : -2;
    if (std::llabs(net - d1 - up) < 1)
      throw PlantError("plant: reversal move too small");
    for (int i = 0; i < m; ++i)
      cum[static_cast<std::size_t>(i)] =
          std::llround(static_cast<double>(d1) * i / (m - 1));
    cum[static_cast<std::size_t>(m)] = d1 + up;
    for (int i = m + 1; i < n; ++i)
      cum[static_cast<std::size_t>(i)] =
          d1 + up +
          std::llround(static_cast<double>(net - d1 - up) * (i - m) /
                       (n - 1 - m));
  }

  std::vector<std::int64_t> path(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    path[static_cast<std::size_t>(i)] = s0_ticks + cum[static_cast<std::size_t>(i)];

  std::vector<std::uint64_t> volumes(static_cast<std::size_t>(n),
                                     day.params.base_volume);
  for (std::size_t i = 0; i < spec.volumes.size() && i < volumes.size(); ++i)
    volumes[i] = spec.volumes[i];

  // planted trades
  std::vector<TradeRecord> planted;
  planted.reserve(static_cast<std::size_t>(n) + 2 +
                  static_cast<std::size_t>(n_rec));
  planted.push_back({t_start - spec.lead_gap,
                     detail::price_of(lead_ticks, tick),
                     day.params.base_volume, 0});
  for (int i = 0; i < n; ++i)
    planted.push_back({times[static_cast<std::size_t>(i)],
                       detail::price_of(path[static_cast<std::size_t>(i)], tick),
                       volumes[static_cast<std::size_t>(i)], 0});

  // recovery trades (or a single break trade for negatives)
  const std::int64_t end_ticks = path.back();
  const std::int64_t delta_ticks = end_ticks - s0_ticks;  // nonzero
  std::vector<std::int64_t> rec_ticks;
  if (n_rec > 0) {
    rec_ticks.reserve(static_cast<std::size_t>(n_rec));
    for (int k = 0; k < n_rec; ++k) {
      std::int64_t off = std::llround(
          spec.recovery_eta[static_cast<std::size_t>(k)] *
          static_cast<double>(delta_ticks));
      if (k == 0 && off == 0) off = delta_ticks < 0 ? -1 : 1;
      rec_ticks.push_back(end_ticks - off);
    }
    // The first recovery trade must reverse past the run end, otherwise the
    // monotone run would extend and the recorded boundaries would be wrong.
    if (crash ? rec_ticks[0] <= end_ticks : rec_ticks[0] >= end_ticks)
      throw PlantError("plant: first recovery step must reverse the trend");
    for (int k = 0; k < n_rec; ++k)
      planted.push_back({t_end + (k + 1) * spec.recovery_gap,
                         detail::price_of(rec_ticks[static_cast<std::size_t>(k)],
                                          tick),
                         day.params.base_volume, 0});
  } else {
    const std::int64_t brk = end_ticks + (crash ? 1 : -1);
    planted.push_back({t_end + spec.lead_gap, detail::price_of(brk, tick),
                       day.params.base_volume, 0});
  }
  for (const TradeRecord& r : planted)
    if (r.price <= 0.0) throw PlantError("plant: price path hit zero");

  // planted quotes
  std::vector<QuoteRecord> q_planted;
  std::vector<double> ramp_spread;
  const std::int64_t base_spr = day.params.spread_ticks;
  std::size_t gap_update = 0;
  if (spec.full_quotes) {
    const int r_n = spec.ramp_updates;
    const std::int64_t rb = anchor_ticks - 1;
    for (int k = 0; k < r_n; ++k) {
      const double s_k = spec.ramp_start_spread +
                         (spec.ramp_end_spread - spec.ramp_start_spread) * k /
                             (r_n - 1);
      const std::int64_t ra =
          std::llround(static_cast<double>(rb) / (1.0 - s_k));
      const Nanos qt = t_start - kNsPerMilli -
                       static_cast<Nanos>(r_n - 1 - k) * spec.ramp_spacing;
      q_planted.push_back(
          detail::make_quote(qt, rb, ra, tick, 500, 500));
      ramp_spread.push_back((q_planted.back().ask - q_planted.back().bid) /
                            q_planted.back().ask);
    }

    // in-event updates: one per trade, the planted gap at mid-event, no
    // rebound inside the interval
    const std::int64_t spr_ev = std::max<std::int64_t>(
        base_spr, std::llround(spec.ramp_end_spread *
                               static_cast<double>(s0_ticks) / 2.0));
    const int g = n / 2;
    std::int64_t max_step = 0;
    for (int i = 1; i < n; ++i)
      max_step = std::max<std::int64_t>(
          max_step, std::llabs(path[static_cast<std::size_t>(i)] -
                               path[static_cast<std::size_t>(i - 1)]));
    std::vector<std::int64_t> bid_path(static_cast<std::size_t>(n)),
        ask_path(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      bid_path[static_cast<std::size_t>(i)] =
          path[static_cast<std::size_t>(i)] - spr_ev;
      ask_path[static_cast<std::size_t>(i)] =
          path[static_cast<std::size_t>(i)] + spr_ev;
    }
    if (crash) {
      std::int64_t gap_ticks = std::llround(
          spec.quote_gap * static_cast<double>(bid_path[g - 1]));
      gap_ticks = std::max(gap_ticks, max_step + 2);
      const std::int64_t shift =
          bid_path[static_cast<std::size_t>(g - 1)] - gap_ticks -
          bid_path[static_cast<std::size_t>(g)];
      for (int i = g; i < n; ++i)
        bid_path[static_cast<std::size_t>(i)] += shift;  // parallel, no rebound
    } else {
      std::int64_t gap_ticks = std::llround(
          spec.quote_gap * static_cast<double>(ask_path[g - 1]));
      gap_ticks = std::max(gap_ticks, max_step + 2);
      const std::int64_t shift =
          ask_path[static_cast<std::size_t>(g - 1)] + gap_ticks -
          ask_path[static_cast<std::size_t>(g)];
      for (int i = g; i < n; ++i)
        ask_path[static_cast<std::size_t>(i)] += shift;
    }
    for (int i = 0; i < n; ++i) {
      const Nanos qt =
          i + 1 < n
              ? times[static_cast<std::size_t>(i)] +
                    (times[static_cast<std::size_t>(i + 1)] -
                     times[static_cast<std::size_t>(i)]) /
                        2
              : t_end;
      if (i == g) gap_update = q_planted.size();
      q_planted.push_back(detail::make_quote(
          qt, bid_path[static_cast<std::size_t>(i)],
          ask_path[static_cast<std::size_t>(i)], tick, 300, 300));
    }

    // settling updates track the recovery prices, spread easing back
    for (int k = 0; k < n_rec; ++k) {
      const std::int64_t spr =
          std::max(base_spr,
                   spr_ev - (spr_ev - base_spr) * (k + 1) / std::max(n_rec, 1));
      const std::int64_t p = rec_ticks[static_cast<std::size_t>(k)];
      q_planted.push_back(detail::make_quote(
          t_end + (k + 1) * spec.recovery_gap + spec.recovery_gap / 2,
          p - spr, p + spr, tick, 400, 400));
    }
  } else {
    for (const TradeRecord& r : planted) {
      const std::int64_t p = detail::ticks_of(r.price, tick);
      q_planted.push_back(detail::make_quote(r.ts + kNsPerMilli, p - base_spr,
                                             p + base_spr, tick, 400, 400));
    }
  }

  // ground truth from the realized path
  GroundTruthEntry gt;
  gt.symbol = day.symbol;
  gt.date = day.date;
  gt.plant_start = t_start;
  gt.ramp_spread = ramp_spread;

  auto expected_for = [&](Nanos max_dur) -> std::optional<ExpectedEvent> {
    if (spec.reversal) return std::nullopt;
    const double p0 = detail::price_of(path[0], tick);
    if (times.back() - times.front() >= max_dur) return std::nullopt;
    for (int k = 0; k < n; ++k) {
      const double pk = detail::price_of(path[static_cast<std::size_t>(k)], tick);
      const double ret = (pk - p0) / p0;
      if (std::fabs(ret) > ctx.threshold && k + 1 >= ctx.min_trades &&
          times[static_cast<std::size_t>(k)] - times.front() < max_dur) {
        ExpectedEvent ev;
        ev.direction = spec.direction;
        ev.t_start = times.front();
        ev.t_change = times[static_cast<std::size_t>(k)];
        ev.t_end = times.back();
        ev.s_start = p0;
        ev.s_change = pk;
        ev.s_end = detail::price_of(path.back(), tick);
        ev.trades_to_change = k + 1;
        ev.trades_total = n;
        ev.r_uee = (ev.s_end - ev.s_start) / ev.s_start;
        return ev;
      }
    }
    return std::nullopt;
  };
  for (Nanos d : ctx.durations) {
    const auto ev = expected_for(d);
    if (ev) gt.expected.emplace(d, *ev);
  }

  if (!gt.expected.empty()) {
    const ExpectedEvent& ev = gt.expected.begin()->second;
    std::uint64_t acc = 0;
    for (int k = 0; k < ev.trades_to_change; ++k)
      acc += volumes[static_cast<std::size_t>(k)];
    gt.accumulated_volume = acc;

    // largest same-side consecutive return inside [t_start, t_end]; all
    // in-interval quotes are planted, so this is exhaustive
    bool have_prev = false, have_best = false;
    double prev = 0.0;
    Nanos prev_ts = 0;
    LargestQuoteMove best{crash ? QuoteSide::Bid : QuoteSide::Ask, 0.0, 0, 0};
    std::size_t best_pair_to = 0;
    for (std::size_t i = 0; i < q_planted.size(); ++i) {
      const QuoteRecord& q = q_planted[i];
      if (q.ts < ev.t_start || q.ts > ev.t_end) continue;
      const double p = crash ? q.bid : q.ask;
      if (p <= 0.0) continue;
      if (have_prev) {
        const double ret = (p - prev) / prev;
        if (!have_best || std::fabs(ret) > std::fabs(best.value)) {
          best.value = ret;
          best.t_from = prev_ts;
          best.t_to = q.ts;
          best_pair_to = i;
          have_best = true;
        }
      }
      prev = p;
      prev_ts = q.ts;
      have_prev = true;
    }
    if (!have_best)
      throw PlantError("plant: no in-interval quote pair for the event");
    if (spec.full_quotes && best_pair_to != gap_update)
      throw PlantError("plant: planted gap is not the largest quote move");
    gt.quote_move = best;
  }

  if (n_rec > 0 && !gt.expected.empty()) {
    const ExpectedEvent& ev = gt.expected.begin()->second;
    const double denom = ev.s_end - ev.s_start;
    for (int k = 0; k < n_rec; ++k)
      gt.eta.push_back(
          (ev.s_end -
           detail::price_of(rec_ticks[static_cast<std::size_t>(k)], tick)) /
          denom);
  }

  // splice: erase the region, insert the planted records, rebase the tail
  auto t_lo = std::lower_bound(
      day.trades.begin(), day.trades.end(), region_lo,
      [](const TradeRecord& r, Nanos t) { return r.ts < t; });
  auto t_hi = std::lower_bound(
      t_lo, day.trades.end(), region_hi,
      [](const TradeRecord& r, Nanos t) { return r.ts < t; });
  const std::size_t t_pos = static_cast<std::size_t>(t_lo - day.trades.begin());
  day.trades.erase(t_lo, t_hi);
  day.trades.insert(day.trades.begin() + static_cast<std::ptrdiff_t>(t_pos),
                    planted.begin(), planted.end());

  auto q_lo = std::lower_bound(
      day.quotes.begin(), day.quotes.end(), region_lo,
      [](const QuoteRecord& r, Nanos t) { return r.ts < t; });
  auto q_hi = std::lower_bound(
      q_lo, day.quotes.end(), region_hi,
      [](const QuoteRecord& r, Nanos t) { return r.ts < t; });
  const std::size_t q_pos = static_cast<std::size_t>(q_lo - day.quotes.begin());
  day.quotes.erase(q_lo, q_hi);
  day.quotes.insert(day.quotes.begin() + static_cast<std::ptrdiff_t>(q_pos),
                    q_planted.begin(), q_planted.end());

  const std::size_t tail_start = t_pos + planted.size();
  if (tail_start < day.trades.size()) {
    const std::int64_t resume =
        detail::ticks_of(planted.back().price, tick) + (crash ? 1 : -1);
    const std::int64_t shift =
        resume - detail::ticks_of(day.trades[tail_start].price, tick);
    if (shift != 0) {
      for (std::size_t i = tail_start; i < day.trades.size(); ++i) {
        const std::int64_t p =
            detail::ticks_of(day.trades[i].price, tick) + shift;
        if (p <= 0) throw PlantError("plant: tail rebase hit zero price");
        day.trades[i].price = detail::price_of(p, tick);
      }
      for (std::size_t i = q_pos + q_planted.size(); i < day.quotes.size();
           ++i) {
        QuoteRecord& q = day.quotes[i];
        q.bid = detail::price_of(detail::ticks_of(q.bid, tick) + shift, tick);
        q.ask = detail::price_of(detail::ticks_of(q.ask, tick) + shift, tick);
        if (q.bid <= 0.0 || q.ask <= 0.0)
          throw PlantError("plant: tail rebase hit zero quote");
      }
    }
  }

  day.renumber();
  day.reserved.emplace_back(region_lo, region_hi);
  std::sort(day.reserved.begin(), day.reserved.end());
  return gt;
}

}  // namespace uee::synth
