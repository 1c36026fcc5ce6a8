#pragma once

// Aggregation of detected events into summary statistics, histograms and
// plot-ready tables.  Every histogram conserves counts: bins plus the
// out-of-range tally sum to the number of inputs.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uee/detect.hpp"
#include "uee/quote_analytics.hpp"
#include "uee/time.hpp"

namespace uee {

struct SummaryRow {
  std::string criterion;
  std::uint64_t total = 0;
  std::uint64_t spikes = 0;
  std::uint64_t crashes = 0;
  double spike_share() const {
    return total ? static_cast<double>(spikes) / static_cast<double>(total)
                 : 0.0;
  }
  double crash_share() const {
    return total ? static_cast<double>(crashes) / static_cast<double>(total)
                 : 0.0;
  }
};

inline SummaryRow summary_row(std::string criterion,
                              const std::vector<UeeEvent>& events) {
  SummaryRow row;
  row.criterion = std::move(criterion);
  row.total = events.size();
  for (const UeeEvent& e : events)
    e.direction == Direction::FlashSpike ? ++row.spikes : ++row.crashes;
  return row;
}

// Counts per ISO week, zero-filled between the first and last event week so
// empty weeks export as raw zeros.
inline std::map<IsoWeek, std::uint64_t> weekly_histogram(
    const std::vector<UeeEvent>& events) {
  std::map<IsoWeek, std::uint64_t> weeks;
  for (const UeeEvent& e : events) ++weeks[iso_week_of(e.date)];
  if (weeks.size() > 1) {
    const IsoWeek last = weeks.rbegin()->first;
    for (IsoWeek w = weeks.begin()->first; w < last; w = next_week(w))
      weeks.emplace(w, 0);  // no-op for weeks that already have counts
  }
  return weeks;
}

struct IntradayHistogram {
  Nanos axis_lo = kPreMarketOpen;
  Nanos axis_hi = kAfterClose;
  Nanos bin_width = 5 * kNsPerMin;
  std::vector<std::uint64_t> counts;
  std::uint64_t out_of_range = 0;

  Nanos bin_lo(std::size_t i) const {
    return axis_lo + static_cast<Nanos>(i) * bin_width;
  }
  Nanos bin_hi(std::size_t i) const {
    return std::min(axis_hi, bin_lo(i) + bin_width);
  }
};

// Bins events by t_start time of day over 04:00-20:00 (half-open bins).
inline IntradayHistogram intraday_histogram(const std::vector<UeeEvent>& events,
                                            Nanos bin_width = 5 * kNsPerMin) {
  IntradayHistogram h;
  h.bin_width = bin_width;
  const std::size_t nbins = static_cast<std::size_t>(
      (h.axis_hi - h.axis_lo + bin_width - 1) / bin_width);
  h.counts.assign(nbins, 0);
  for (const UeeEvent& e : events) {
    if (e.t_start < h.axis_lo || e.t_start >= h.axis_hi) {
      ++h.out_of_range;
      continue;
    }
    ++h.counts[static_cast<std::size_t>((e.t_start - h.axis_lo) / bin_width)];
  }
  return h;
}

struct ReturnHistogram {
  double lo = -0.03, hi = 0.03, width = 0.001;
  std::vector<std::uint64_t> counts;
  std::uint64_t out_of_range = 0;

  std::uint64_t total_in_bins() const {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    return n;
  }
  double bin_lo(std::size_t i) const {
    return lo + static_cast<double>(i) * width;
  }
};

inline ReturnHistogram return_histogram(const std::vector<double>& values,
                                        double lo = -0.03, double hi = 0.03,
                                        double width = 0.001) {
  ReturnHistogram h;
  h.lo = lo;
  h.hi = hi;
  h.width = width;
  const std::size_t nbins =
      static_cast<std::size_t>(std::llround((hi - lo) / width));
  h.counts.assign(nbins, 0);
  for (double v : values) {
    const double pos = (v - lo) / width;
    const auto idx = static_cast<std::int64_t>(std::floor(pos));
    if (v < lo || idx < 0 || idx >= static_cast<std::int64_t>(nbins)) {
      ++h.out_of_range;
      continue;
    }
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

struct ThresholdCount {
  double cutoff = 0.0;
  std::uint64_t above = 0;  // |return| strictly greater than cutoff
  std::uint64_t total = 0;
  double fraction() const {
    return total ? static_cast<double>(above) / static_cast<double>(total)
                 : 0.0;
  }
};

struct ReturnHistograms {
  ReturnHistogram uee_crash, uee_spike;
  ReturnHistogram quote_crash, quote_spike;
  // Fractions of |quote return| above the two cutoffs the paper's barplots
  // use, per direction and combined.
  ThresholdCount crash_005{0.005}, crash_008{0.008};
  ThresholdCount spike_005{0.005}, spike_008{0.008};
  ThresholdCount all_005{0.005}, all_008{0.008};
  std::uint64_t events_without_quote_move = 0;
};

inline ReturnHistograms return_histograms(
    const std::vector<UeeEvent>& events,
    const std::vector<std::optional<LargestQuoteMove>>& moves,
    double lo = -0.03, double hi = 0.03, double width = 0.001) {
  std::vector<double> uee_c, uee_s, q_c, q_s;
  ReturnHistograms out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const bool crash = events[i].direction == Direction::FlashCrash;
    (crash ? uee_c : uee_s).push_back(events[i].r_uee);
    const auto& mv = i < moves.size() ? moves[i] : std::nullopt;
    if (!mv) {
      ++out.events_without_quote_move;
      continue;
    }
    (crash ? q_c : q_s).push_back(mv->value);
    const double mag = std::fabs(mv->value);
    auto count = [&](ThresholdCount& tc) {
      ++tc.total;
      if (mag > tc.cutoff) ++tc.above;
    };
    count(crash ? out.crash_005 : out.spike_005);
    count(crash ? out.crash_008 : out.spike_008);
    count(out.all_005);
    count(out.all_008);
  }
  out.uee_crash = return_histogram(uee_c, lo, hi, width);
  out.uee_spike = return_histogram(uee_s, lo, hi, width);
  out.quote_crash = return_histogram(q_c, lo, hi, width);
  out.quote_spike = return_histogram(q_s, lo, hi, width);
  return out;
}

// Two-dimensional accumulated-volume x |largest quote return| histogram.
// Volume bins are logarithmic with each decade subdivided, return bins
// linear; both configurable since the paper states no edges.
struct Hist2dSpec {
  int bins_per_decade = 5;
  int vol_bin_lo = 0;   // bin k spans [10^(k/bpd), 10^((k+1)/bpd))
  int vol_bin_hi = 40;  // exclusive; default covers volumes 1..10^8
  double ret_lo = 0.0, ret_hi = 0.02, ret_width = 0.001;

  int vol_bins() const { return vol_bin_hi - vol_bin_lo; }
  int ret_bins() const {
    return static_cast<int>(std::llround((ret_hi - ret_lo) / ret_width));
  }
  double vol_edge(int k) const {
    return std::pow(10.0, static_cast<double>(k) / bins_per_decade);
  }
};

struct Hist2d {
  Hist2dSpec spec;
  std::vector<std::uint64_t> counts;  // volume-major: [vi * ret_bins + ri]
  std::uint64_t out_of_range = 0;

  std::uint64_t& at(int vi, int ri) {
    return counts[static_cast<std::size_t>(vi) * spec.ret_bins() + ri];
  }
  std::uint64_t at(int vi, int ri) const {
    return counts[static_cast<std::size_t>(vi) * spec.ret_bins() + ri];
  }
  std::vector<std::uint64_t> volume_marginal() const {
    std::vector<std::uint64_t> m(static_cast<std::size_t>(spec.vol_bins()), 0);
    for (int v = 0; v < spec.vol_bins(); ++v)
      for (int r = 0; r < spec.ret_bins(); ++r) m[v] += at(v, r);
    return m;
  }
  std::vector<std::uint64_t> return_marginal() const {
    std::vector<std::uint64_t> m(static_cast<std::size_t>(spec.ret_bins()), 0);
    for (int v = 0; v < spec.vol_bins(); ++v)
      for (int r = 0; r < spec.ret_bins(); ++r) m[r] += at(v, r);
    return m;
  }
};

// One record per event with a quote move: (accumulated volume, |return|).
inline Hist2d volume_return_hist2d(
    const std::vector<std::pair<std::uint64_t, double>>& records,
    const Hist2dSpec& spec = {}) {
  Hist2d h;
  h.spec = spec;
  h.counts.assign(
      static_cast<std::size_t>(spec.vol_bins()) * spec.ret_bins(), 0);
  for (const auto& [volume, ret] : records) {
    if (volume == 0) {
      ++h.out_of_range;
      continue;
    }
    const int vi = static_cast<int>(std::floor(
                       std::log10(static_cast<double>(volume)) *
                       spec.bins_per_decade)) -
                   spec.vol_bin_lo;
    const double rpos = (ret - spec.ret_lo) / spec.ret_width;
    const auto ri = static_cast<std::int64_t>(std::floor(rpos));
    if (vi < 0 || vi >= spec.vol_bins() || ret < spec.ret_lo || ri < 0 ||
        ri >= spec.ret_bins()) {
      ++h.out_of_range;
      continue;
    }
    ++h.at(vi, static_cast<int>(ri));
  }
  return h;
}

// Per-day-per-symbol event counts; the paper reports clustering only
// qualitatively, so the export is the raw table plus the maxima.
struct ClusterTable {
  std::map<std::pair<Date, std::string>, std::uint64_t> by_day_symbol;
  std::map<Date, std::uint64_t> by_day;
  std::uint64_t max_per_day = 0;
  std::uint64_t max_per_day_symbol = 0;
};

inline ClusterTable cluster_table(const std::vector<UeeEvent>& events) {
  ClusterTable t;
  for (const UeeEvent& e : events) {
    const auto c1 = ++t.by_day_symbol[{e.date, e.symbol}];
    const auto c2 = ++t.by_day[e.date];
    if (c1 > t.max_per_day_symbol) t.max_per_day_symbol = c1;
    if (c2 > t.max_per_day) t.max_per_day = c2;
  }
  return t;
}

}  // namespace uee
