#pragma once

// Stage wiring: input scanning, parallel ingest, detection over symbol-days,
// per-event analytics and the file exports behind the CLI subcommands.
// Symbol-day units run on a bounded worker pool; outputs are consolidated
// in deterministic order so reruns are byte-identical.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "uee/csv.hpp"
#include "uee/detect.hpp"
#include "uee/format.hpp"
#include "uee/io.hpp"
#include "uee/quote_analytics.hpp"
#include "uee/recovery.hpp"
#include "uee/report.hpp"
#include "uee/universe.hpp"
#include "uee/validation.hpp"

namespace uee {

namespace fs = std::filesystem;

struct RunConfig {
  std::vector<fs::path> trade_inputs;   // files or directories of *.csv
  std::vector<fs::path> quote_inputs;
  fs::path format_path;
  fs::path universe_path;
  fs::path events_path;  // analyze: detect in place when empty
  fs::path out_dir;

  double threshold = 0.008;
  int min_trades = 11;
  std::vector<Nanos> max_durations{1'500'000'000};
  bool strict_monotonic = false;

  int window = 400;
  int n_max = 100;
  bool skip_quotes = false;
  bool spread_changes_only = false;

  int workers = 1;
  std::uint64_t seed = 0;  // synth only

  std::vector<DetectionCriteria> criteria() const {
    std::vector<DetectionCriteria> out;
    for (Nanos d : max_durations) {
      DetectionCriteria c;
      c.threshold = threshold;
      c.min_trades = min_trades;
      c.max_duration = d;
      c.strict_monotonic = strict_monotonic;
      if (!c.valid()) throw std::runtime_error("invalid detection criteria");
      out.push_back(c);
    }
    if (out.empty()) throw std::runtime_error("no duration criterion given");
    return out;
  }
};

template <typename Fn>
inline void parallel_for(std::size_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int w = std::min<int>(workers, static_cast<int>(n));
  pool.reserve(static_cast<std::size_t>(w));
  for (int t = 0; t < w; ++t) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Directories expand to their *.csv files; the list is sorted so work units
// and merged outputs are ordered the same on every run.
inline std::vector<fs::path> expand_inputs(const std::vector<fs::path>& in) {
  std::vector<fs::path> files;
  for (const fs::path& p : in) {
    if (fs::is_directory(p)) {
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".csv")
          files.push_back(e.path());
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      throw std::runtime_error("input not found: " + p.string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

// The canonical naming convention carries the date in the file name
// (e.g. MSFT_2014-01-07.csv); a format descriptor may override it.
inline std::optional<Date> date_from_filename(const fs::path& p) {
  const std::string name = p.filename().string();
  for (std::size_t i = 0; i + 10 <= name.size(); ++i) {
    const auto d = parse_date(std::string_view(name).substr(i, 10));
    if (d) return d;
  }
  return std::nullopt;
}

inline Date date_for_file(const fs::path& p, const FormatDescriptor& fmt) {
  if (fmt.date) return *fmt.date;
  const auto d = date_from_filename(p);
  if (!d)
    throw std::runtime_error(
        "cannot determine date for " + p.string() +
        " (expected YYYY-MM-DD in the file name or a date= in the format "
        "descriptor)");
  return *d;
}

struct Ingested {
  std::vector<TradeSeries> trades;  // sorted by (symbol, date)
  std::vector<QuoteSeries> quotes;
  ValidationReport trade_report;
  ValidationReport quote_report;
  std::vector<fs::path> trade_files;
  std::vector<fs::path> quote_files;
};

inline Ingested ingest(const RunConfig& cfg, bool want_quotes) {
  Ingested out;
  const FormatDescriptor fmt = cfg.format_path.empty()
                                   ? FormatDescriptor{}
                                   : load_format_descriptor(
                                         cfg.format_path.string());
  std::optional<Universe> universe;
  if (!cfg.universe_path.empty())
    universe = Universe::load(cfg.universe_path.string());
  const Universe* uni = universe ? &*universe : nullptr;

  out.trade_files = expand_inputs(cfg.trade_inputs);
  if (want_quotes) out.quote_files = expand_inputs(cfg.quote_inputs);

  std::vector<TradeParseResult> tr(out.trade_files.size());
  parallel_for(out.trade_files.size(), cfg.workers, [&](std::size_t i) {
    std::ifstream in(out.trade_files[i]);
    if (!in)
      throw std::runtime_error("cannot open " + out.trade_files[i].string());
    tr[i] = parse_trades(in, fmt, date_for_file(out.trade_files[i], fmt), uni);
  });
  std::vector<QuoteParseResult> qr(out.quote_files.size());
  parallel_for(out.quote_files.size(), cfg.workers, [&](std::size_t i) {
    std::ifstream in(out.quote_files[i]);
    if (!in)
      throw std::runtime_error("cannot open " + out.quote_files[i].string());
    qr[i] = parse_quotes(in, fmt, date_for_file(out.quote_files[i], fmt), uni);
  });

  for (auto& r : tr) {
    out.trade_report.merge(r.report);
    for (auto& s : r.series) out.trades.push_back(std::move(s));
  }
  for (auto& r : qr) {
    out.quote_report.merge(r.report);
    for (auto& s : r.series) out.quotes.push_back(std::move(s));
  }
  auto by_key = [](const auto& a, const auto& b) { return a.key < b.key; };
  std::sort(out.trades.begin(), out.trades.end(), by_key);
  std::sort(out.quotes.begin(), out.quotes.end(), by_key);
  for (std::size_t i = 1; i < out.trades.size(); ++i)
    if (out.trades[i].key == out.trades[i - 1].key)
      throw std::runtime_error("duplicate symbol-day across trade inputs: " +
                               out.trades[i].key.symbol + " " +
                               format_date(out.trades[i].key.date));
  for (std::size_t i = 1; i < out.quotes.size(); ++i)
    if (out.quotes[i].key == out.quotes[i - 1].key)
      throw std::runtime_error("duplicate symbol-day across quote inputs: " +
                               out.quotes[i].key.symbol + " " +
                               format_date(out.quotes[i].key.date));
  return out;
}

struct DetectResult {
  std::vector<DetectionCriteria> criteria;
  // events[c] sorted by (symbol, date, t_start); parallel ids share indexes
  std::vector<std::vector<UeeEvent>> events;
  std::vector<std::vector<std::string>> ids;
};

inline DetectResult detect_all(const Ingested& data, const RunConfig& cfg) {
  DetectResult out;
  out.criteria = cfg.criteria();
  out.events.resize(out.criteria.size());
  std::vector<std::vector<std::vector<UeeEvent>>> per_series(
      data.trades.size());
  parallel_for(data.trades.size(), cfg.workers, [&](std::size_t i) {
    auto& slot = per_series[i];
    slot.resize(out.criteria.size());
    for (std::size_t c = 0; c < out.criteria.size(); ++c)
      slot[c] = detect_events(data.trades[i], out.criteria[c]);
  });
  for (std::size_t i = 0; i < per_series.size(); ++i)
    for (std::size_t c = 0; c < out.criteria.size(); ++c)
      for (auto& e : per_series[i][c]) out.events[c].push_back(std::move(e));
  // series are already (symbol, date)-sorted and events within a series are
  // stream-ordered, so the concatenation is consolidated order
  for (std::size_t c = 0; c < out.criteria.size(); ++c)
    out.ids.push_back(make_event_ids(out.events[c]));
  return out;
}

struct AnalyzeResult {
  std::string criterion_label;
  std::vector<UeeEvent> events;
  std::vector<std::string> ids;
  bool quotes_used = false;

  std::vector<std::optional<LargestQuoteMove>> quote_moves;
  std::vector<std::uint64_t> volumes;
  std::vector<std::optional<SpreadWindow>> windows;
  std::vector<RecoverySeries> recoveries;

  SpreadProfile profile;
  RecoveryCurves curves;
  ReturnHistograms rhist;
  Hist2d vol_ret;
  SummaryRow summary;
  std::map<IsoWeek, std::uint64_t> weekly;
  IntradayHistogram intraday;
  ClusterTable clusters;

  std::uint64_t no_quote_move = 0;
  std::uint64_t no_window_anchor = 0;
  std::uint64_t incomplete_windows = 0;
  std::uint64_t empty_recovery = 0;
};

// The events must reference the same ingested streams they were detected
// on; indices, timestamps and prices are re-checked and any disagreement
// aborts rather than producing silently wrong analytics.
inline void check_event_consistency(const UeeEvent& e,
                                    const TradeSeries& day) {
  const auto& tr = day.trades;
  const bool ok = e.start_idx <= e.change_idx && e.change_idx <= e.end_idx &&
                  e.end_idx < tr.size() &&
                  tr[e.start_idx].ts == e.t_start &&
                  tr[e.change_idx].ts == e.t_change &&
                  tr[e.end_idx].ts == e.t_end &&
                  tr[e.start_idx].price == e.s_start &&
                  tr[e.change_idx].price == e.s_change &&
                  tr[e.end_idx].price == e.s_end;
  if (!ok)
    throw std::runtime_error(
        "event file does not match the trade inputs (symbol " + e.symbol +
        " " + format_date(e.date) + ")");
}

inline AnalyzeResult analyze_events(const std::vector<UeeEvent>& events,
                                    const std::vector<std::string>& ids,
                                    const Ingested& data,
                                    const RunConfig& cfg,
                                    std::string criterion_label) {
  AnalyzeResult r;
  r.criterion_label = std::move(criterion_label);
  r.events = events;
  r.ids = ids;
  r.quotes_used = !cfg.skip_quotes;

  std::map<SymbolDay, std::size_t> trade_idx, quote_idx;
  for (std::size_t i = 0; i < data.trades.size(); ++i)
    trade_idx[data.trades[i].key] = i;
  for (std::size_t i = 0; i < data.quotes.size(); ++i)
    quote_idx[data.quotes[i].key] = i;

  std::vector<SpreadTape> tapes(data.quotes.size());
  if (r.quotes_used)
    parallel_for(data.quotes.size(), cfg.workers, [&](std::size_t i) {
      tapes[i] = SpreadTape::build(data.quotes[i], cfg.spread_changes_only);
    });

  const std::size_t n = events.size();
  r.quote_moves.resize(n);
  r.volumes.assign(n, 0);
  r.windows.resize(n);
  r.recoveries.resize(n);

  parallel_for(n, cfg.workers, [&](std::size_t i) {
    const UeeEvent& e = events[i];
    const auto ti = trade_idx.find({e.symbol, e.date});
    if (ti == trade_idx.end())
      throw std::runtime_error("no trade input for event symbol-day " +
                               e.symbol + " " + format_date(e.date));
    const TradeSeries& day = data.trades[ti->second];
    check_event_consistency(e, day);
    r.volumes[i] = accumulated_volume(e, day);
    r.recoveries[i] = recovery_series(e, day, cfg.n_max);
    if (r.quotes_used) {
      const auto qi = quote_idx.find({e.symbol, e.date});
      if (qi == quote_idx.end())
        throw std::runtime_error("no quote input for event symbol-day " +
                                 e.symbol + " " + format_date(e.date));
      r.quote_moves[i] = largest_quote_return(e, data.quotes[qi->second]);
      r.windows[i] = spread_window(e, tapes[qi->second], cfg.window);
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    if (r.recoveries[i].available_n == 0) ++r.empty_recovery;
    if (r.quotes_used) {
      if (!r.quote_moves[i]) ++r.no_quote_move;
      if (!r.windows[i]) ++r.no_window_anchor;
      else if (!r.windows[i]->complete()) ++r.incomplete_windows;
    }
  }

  if (r.quotes_used) {
    std::vector<SpreadWindow> complete;
    for (const auto& w : r.windows)
      if (w) complete.push_back(*w);
    r.profile = average_spread_profile(complete);
    r.rhist = return_histograms(r.events, r.quote_moves);
    std::vector<std::pair<std::uint64_t, double>> recs;
    for (std::size_t i = 0; i < n; ++i)
      if (r.quote_moves[i])
        recs.emplace_back(r.volumes[i], std::fabs(r.quote_moves[i]->value));
    r.vol_ret = volume_return_hist2d(recs);
  }
  r.curves = recovery_curves(r.recoveries, cfg.n_max);
  r.summary = summary_row(r.criterion_label, r.events);
  r.weekly = weekly_histogram(r.events);
  r.intraday = intraday_histogram(r.events);
  r.clusters = cluster_table(r.events);
  return r;
}

// ---------------------------------------------------------------------------
// exports

inline std::string fmt_pct1(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
  return buf;
}

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "criterion,total,spikes,spike_share_pct,crashes,crash_share_pct\n";
  for (const SummaryRow& r : rows) {
    out += r.criterion;
    out += ',';
    out += std::to_string(r.total);
    out += ',';
    out += std::to_string(r.spikes);
    out += ',';
    out += fmt_pct1(r.spike_share());
    out += ',';
    out += std::to_string(r.crashes);
    out += ',';
    out += fmt_pct1(r.crash_share());
    out += '\n';
  }
  return out;
}

inline std::string weekly_csv(const std::map<IsoWeek, std::uint64_t>& weeks) {
  std::string out = "iso_week,count\n";
  for (const auto& [w, c] : weeks) {
    out += w.label();
    out += ',';
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

inline std::string intraday_csv(const IntradayHistogram& h) {
  std::string out;
  out += "#session_boundary=" + format_time_of_day(kMainOpen) + "\n";
  out += "#session_boundary=" + format_time_of_day(kMainClose) + "\n";
  out += "bin_start,bin_end,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += format_time_of_day(h.bin_lo(i));
    out += ',';
    out += format_time_of_day(h.bin_hi(i));
    out += ',';
    out += std::to_string(h.counts[i]);
    out += '\n';
  }
  return out;
}

inline std::string return_hist_csv(const ReturnHistogram& crash,
                                   const ReturnHistogram& spike) {
  std::string out = "direction,bin_lo,bin_hi,count\n";
  auto emit = [&](const char* dir, const ReturnHistogram& h) {
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      out += dir;
      out += ',';
      out += fmt_ratio(h.bin_lo(i));
      out += ',';
      out += fmt_ratio(h.bin_lo(i + 1));
      out += ',';
      out += std::to_string(h.counts[i]);
      out += '\n';
    }
  };
  emit("crash", crash);
  emit("spike", spike);
  return out;
}

inline std::string threshold_csv(const ReturnHistograms& r) {
  std::string out = "scope,cutoff,above,total,fraction\n";
  auto emit = [&](const char* scope, const ThresholdCount& t) {
    out += scope;
    out += ',';
    out += fmt_ratio(t.cutoff);
    out += ',';
    out += std::to_string(t.above);
    out += ',';
    out += std::to_string(t.total);
    out += ',';
    out += fmt_ratio(t.fraction());
    out += '\n';
  };
  emit("crash", r.crash_005);
  emit("crash", r.crash_008);
  emit("spike", r.spike_005);
  emit("spike", r.spike_008);
  emit("all", r.all_005);
  emit("all", r.all_008);
  return out;
}

inline std::string hist2d_csv(const Hist2d& h) {
  std::string out = "vol_bin_lo,vol_bin_hi,ret_bin_lo,ret_bin_hi,count\n";
  for (int v = 0; v < h.spec.vol_bins(); ++v)
    for (int rb = 0; rb < h.spec.ret_bins(); ++rb) {
      out += fmt_shortest(h.spec.vol_edge(h.spec.vol_bin_lo + v));
      out += ',';
      out += fmt_shortest(h.spec.vol_edge(h.spec.vol_bin_lo + v + 1));
      out += ',';
      out += fmt_ratio(h.spec.ret_lo + h.spec.ret_width * rb);
      out += ',';
      out += fmt_ratio(h.spec.ret_lo + h.spec.ret_width * (rb + 1));
      out += ',';
      out += std::to_string(h.at(v, rb));
      out += '\n';
    }
  return out;
}

inline std::string analytics_csv(const AnalyzeResult& r) {
  std::string out =
      "event_id,direction,accumulated_volume,largest_quote_return,quote_side,"
      "quote_move_from,quote_move_to,window_complete,recovery_available_n\n";
  for (std::size_t i = 0; i < r.events.size(); ++i) {
    out += r.ids[i];
    out += ',';
    out += direction_name(r.events[i].direction);
    out += ',';
    out += std::to_string(r.volumes[i]);
    out += ',';
    if (r.quotes_used && r.quote_moves[i]) {
      out += fmt_ratio(r.quote_moves[i]->value);
      out += ',';
      out += quote_side_name(r.quote_moves[i]->side);
      out += ',';
      out += format_time_of_day(r.quote_moves[i]->t_from);
      out += ',';
      out += format_time_of_day(r.quote_moves[i]->t_to);
    } else {
      out += ",,,";
    }
    out += ',';
    if (r.quotes_used && r.windows[i])
      out += r.windows[i]->complete() ? "1" : "0";
    out += ',';
    out += std::to_string(r.recoveries[i].available_n);
    out += '\n';
  }
  return out;
}

inline std::string spread_windows_csv(const AnalyzeResult& r) {
  std::string out = "event_id,offset,spread\n";
  for (std::size_t i = 0; i < r.events.size(); ++i) {
    if (!r.windows[i]) continue;
    const SpreadWindow& w = *r.windows[i];
    for (int off = -w.half_width; off <= w.half_width; ++off) {
      if (!w.present[static_cast<std::size_t>(w.half_width + off)]) continue;
      out += r.ids[i];
      out += ',';
      out += std::to_string(off);
      out += ',';
      out += fmt_ratio(w.values[static_cast<std::size_t>(w.half_width + off)]);
      out += '\n';
    }
  }
  return out;
}

inline std::string spread_profile_csv(const AnalyzeResult& r) {
  std::string out = "offset,mean_spread,windows\n";
  if (r.profile.mean.empty()) return out;
  for (int off = -r.profile.half_width; off <= r.profile.half_width; ++off) {
    out += std::to_string(off);
    out += ',';
    out += fmt_ratio(
        r.profile.mean[static_cast<std::size_t>(r.profile.half_width + off)]);
    out += ',';
    out += std::to_string(r.profile.windows);
    out += '\n';
  }
  return out;
}

inline std::string recovery_series_csv(const AnalyzeResult& r) {
  std::string out = "event_id,n,eta\n";
  for (std::size_t i = 0; i < r.events.size(); ++i) {
    const RecoverySeries& rs = r.recoveries[i];
    for (int n = 1; n <= rs.available_n; ++n) {
      out += r.ids[i];
      out += ',';
      out += std::to_string(n);
      out += ',';
      out += fmt_ratio(rs.eta[static_cast<std::size_t>(n - 1)]);
      out += '\n';
    }
  }
  return out;
}

inline std::string recovery_curves_csv(const RecoveryCurves& c) {
  std::string out = "direction,n,samples,p_high,p_low\n";
  auto emit = [&](const char* dir,
                  const std::vector<RecoveryCurvePoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out += dir;
      out += ',';
      out += std::to_string(i + 1);
      out += ',';
      out += std::to_string(pts[i].samples);
      out += ',';
      if (pts[i].samples) {
        out += fmt_ratio(pts[i].p_high());
        out += ',';
        out += fmt_ratio(pts[i].p_low());
      } else {
        out += ",";  // absent at this n
      }
      out += '\n';
    }
  };
  emit("crash", c.crash);
  emit("spike", c.spike);
  return out;
}

inline std::string clustering_csv(const ClusterTable& t) {
  std::string out = "date,symbol,count\n";
  for (const auto& [key, count] : t.by_day_symbol) {
    out += format_date(key.first);
    out += ',';
    out += key.second;
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

struct StageOutputs {
  std::vector<std::pair<std::string, std::string>> files;  // name -> content
  void add(std::string name, std::string content) {
    files.emplace_back(std::move(name), std::move(content));
  }
  void write(const fs::path& dir) const {
    fs::create_directories(dir);
    for (const auto& [name, content] : files)
      write_text_file(dir / name, content);
  }
};

inline void add_input_checksums(KvDoc& manifest, const Ingested& data) {
  for (const auto& f : data.trade_files)
    manifest.add("input.trades." + f.filename().string(),
                 hex64(fnv1a64_file(f)));
  for (const auto& f : data.quote_files)
    manifest.add("input.quotes." + f.filename().string(),
                 hex64(fnv1a64_file(f)));
}

inline StageOutputs detect_outputs(const DetectResult& det,
                                   const Ingested& data,
                                   const RunConfig& cfg) {
  StageOutputs out;
  KvDoc manifest;
  manifest.add("schema", std::string("uee.manifest.v1"));
  manifest.add("stage", std::string("detect"));
  manifest.add("threshold", cfg.threshold);
  manifest.add("min_trades", cfg.min_trades);
  manifest.add("strict_monotonic", std::string(cfg.strict_monotonic ? "true" : "false"));
  std::vector<SummaryRow> rows;
  for (std::size_t c = 0; c < det.criteria.size(); ++c) {
    const std::string label = det.criteria[c].duration_label();
    out.add("events_" + label + ".csv",
            events_to_csv(det.events[c], det.ids[c]));
    out.add("events_" + label + ".json",
            events_to_json(det.events[c], det.ids[c]));
    manifest.add("events." + label,
                 static_cast<std::uint64_t>(det.events[c].size()));
    rows.push_back(summary_row(label, det.events[c]));
  }
  out.add("summary_table.csv", summary_csv(rows));
  out.add("validation_report.txt", data.trade_report.to_text());
  out.add("validation_report.kv", data.trade_report.to_kv());
  manifest.add("trades.lines", data.trade_report.lines_total);
  manifest.add("trades.accepted", data.trade_report.accepted);
  manifest.add("trades.rejected", data.trade_report.rejected_total());
  add_input_checksums(manifest, data);
  out.add("manifest.kv", manifest.to_string());
  return out;
}

inline StageOutputs analyze_outputs(const AnalyzeResult& r,
                                    const Ingested& data,
                                    const RunConfig& cfg) {
  StageOutputs out;
  out.add("analytics.csv", analytics_csv(r));
  out.add("recovery_series.csv", recovery_series_csv(r));
  out.add("recovery_curves.csv", recovery_curves_csv(r.curves));
  out.add("summary_table.csv",
          summary_csv({r.summary}));
  out.add("weekly_histogram.csv", weekly_csv(r.weekly));
  out.add("intraday_histogram.csv", intraday_csv(r.intraday));
  out.add("uee_return_hist.csv",
          return_hist_csv(r.rhist.uee_crash, r.rhist.uee_spike));
  out.add("clustering.csv", clustering_csv(r.clusters));
  if (r.quotes_used) {
    out.add("spread_windows.csv", spread_windows_csv(r));
    out.add("spread_profile.csv", spread_profile_csv(r));
    out.add("quote_return_hist.csv",
            return_hist_csv(r.rhist.quote_crash, r.rhist.quote_spike));
    out.add("threshold_fractions.csv", threshold_csv(r.rhist));
    out.add("volume_return_hist2d.csv", hist2d_csv(r.vol_ret));
  }

  KvDoc manifest;
  manifest.add("schema", std::string("uee.manifest.v1"));
  manifest.add("stage", std::string("analyze"));
  manifest.add("criterion", r.criterion_label);
  manifest.add("events", static_cast<std::uint64_t>(r.events.size()));
  manifest.add("window", cfg.window);
  manifest.add("n_max", cfg.n_max);
  manifest.add("skip_quotes", std::string(r.quotes_used ? "false" : "true"));
  manifest.add("events_without_quote_move", r.no_quote_move);
  manifest.add("events_without_window_anchor", r.no_window_anchor);
  manifest.add("incomplete_windows", r.incomplete_windows);
  manifest.add("events_without_recovery_trades", r.empty_recovery);
  manifest.add("clustering.max_per_day", r.clusters.max_per_day);
  manifest.add("clustering.max_per_day_symbol", r.clusters.max_per_day_symbol);
  if (r.quotes_used) {
    manifest.add("hist2d.out_of_range", r.vol_ret.out_of_range);
    manifest.add("uee_return_hist.out_of_range",
                 r.rhist.uee_crash.out_of_range +
                     r.rhist.uee_spike.out_of_range);
    manifest.add("quote_return_hist.out_of_range",
                 r.rhist.quote_crash.out_of_range +
                     r.rhist.quote_spike.out_of_range);
  }
  manifest.add("quotes.lines", data.quote_report.lines_total);
  manifest.add("quotes.accepted", data.quote_report.accepted);
  manifest.add("quotes.crossed", data.quote_report.crossed_quotes);
  manifest.add("quotes.degenerate", data.quote_report.degenerate_quotes);
  out.add("manifest_analyze.kv", manifest.to_string());
  if (r.quotes_used) {
    out.add("validation_report_quotes.txt", data.quote_report.to_text());
    out.add("validation_report_quotes.kv", data.quote_report.to_kv());
  }
  return out;
}

}  // namespace uee
