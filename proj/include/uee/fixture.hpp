#pragma once

// Standard acceptance corpus: planted positives sweeping the criteria space
// plus near-miss negatives (too few trades, sub-threshold moves, too-slow
// runs, single-reversal paths), written in the canonical ingest formats
// with a ground-truth document alongside.

#include <algorithm>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uee/io.hpp"
#include "uee/synthgen.hpp"
#include "uee/universe.hpp"

namespace uee::synth {

struct FixtureParams {
  int positives = 210;
  int too_few = 28;
  int below_threshold = 28;
  int too_slow = 22;
  int reversal = 32;
  std::vector<std::string> symbols{"SYNA", "SYNB", "SYNC", "SYND",
                                   "SYNE", "SYNF", "SYNG", "SYNH"};
  std::vector<Date> dates{{2014, 1, 6},
                          {2014, 1, 9},
                          {2014, 1, 14},
                          {2014, 1, 21},
                          {2014, 1, 28}};
  BaselineParams baseline{};
  PlantContext ctx{};

  int total() const {
    return positives + too_few + below_threshold + too_slow + reversal;
  }
};

namespace detail {

// Recovery-ratio target paths.  Every family starts with a positive first
// step (the run must end at the planted boundary) and zigzags so the
// recovery itself can never satisfy the trade-count criterion.
inline std::vector<double> make_eta_path(int family, int len,
                                         std::mt19937_64& rng) {
  std::vector<double> eta;
  eta.reserve(static_cast<std::size_t>(len));
  auto jitter = [&]() {
    return (static_cast<double>(rng() % 100) - 50.0) / 2500.0;  // +-0.02
  };
  for (int k = 0; k < len; ++k) {
    const bool even = (k % 2) == 0;
    double v = 0.0;
    switch (family) {
      case 0:  // immediate, nearly full recovery
        v = k == 0 ? 0.95 : (even ? 0.92 : 1.02);
        break;
      case 1:  // no recovery
        v = k == 0 ? 0.06 : (even ? 0.10 : 0.02);
        break;
      case 2:  // partial climb
        v = 0.08 + 0.5 * k / std::max(len - 1, 1) + (even ? 0.04 : -0.04);
        break;
      case 3:  // aftershock: brief bounce, dip below, slow repair
        v = k == 0 ? 0.10
                   : (k < 6 ? (even ? -0.30 : -0.15)
                            : (even ? 0.05 : 0.22));
        break;
      default:  // overshoot past full recovery, then settle
        v = k == 0 ? 0.60
                   : (k < len / 2 ? (even ? 1.25 : 1.05)
                                  : (even ? 0.95 : 1.08));
        break;
    }
    v += jitter();
    if (k == 0) v = std::max(v, 0.05);
    eta.push_back(v);
  }
  return eta;
}

enum class PlantKind { Positive, TooFew, BelowThreshold, TooSlow, Reversal };

inline const char* plant_kind_name(PlantKind k) {
  switch (k) {
    case PlantKind::Positive: return "positive";
    case PlantKind::TooFew: return "too_few_trades";
    case PlantKind::BelowThreshold: return "below_threshold";
    case PlantKind::TooSlow: return "too_slow";
    case PlantKind::Reversal: return "reversal";
  }
  return "?";
}

inline PlantSpec make_plant_spec(PlantKind kind, Nanos start_tod,
                                 std::uint64_t base_volume,
                                 std::mt19937_64& rng) {
  auto u = [&]() { return static_cast<double>(rng() % 1000) / 1000.0; };
  PlantSpec s;
  s.start_tod = start_tod;
  s.direction = u() < 0.55 ? Direction::FlashCrash : Direction::FlashSpike;
  switch (kind) {
    case PlantKind::Positive: {
      s.trade_count = 11 + static_cast<int>(rng() % 50);
      s.duration = 200 * kNsPerMilli +
                   static_cast<Nanos>(u() * 1.2e9);
      s.total_return = 0.0081 + u() * 0.0119;
      s.quote_gap = 0.009 + u() * 0.0105;
      s.ramp_end_spread = 0.003 + u() * 0.002;
      s.recovery_eta = make_eta_path(static_cast<int>(rng() % 5),
                                     15 + static_cast<int>(rng() % 26), rng);
      break;
    }
    case PlantKind::TooFew: {
      s.trade_count = 10;
      s.duration = 500 * kNsPerMilli + static_cast<Nanos>(u() * 0.5e9);
      s.total_return = 0.009 + u() * 0.003;
      s.full_quotes = false;
      break;
    }
    case PlantKind::BelowThreshold: {
      s.trade_count = 12 + static_cast<int>(rng() % 9);
      s.duration = 500 * kNsPerMilli + static_cast<Nanos>(u() * 0.7e9);
      s.total_return = 0.0079;  // clamped below the criterion in ticks
      s.full_quotes = false;
      break;
    }
    case PlantKind::TooSlow: {
      s.trade_count = 12 + static_cast<int>(rng() % 12);
      s.duration = 1550 * kNsPerMilli + static_cast<Nanos>(u() * 0.35e9);
      s.total_return = 0.0085 + u() * 0.0065;
      s.quote_gap = 0.009 + u() * 0.0105;
      s.ramp_end_spread = 0.003 + u() * 0.002;
      s.recovery_eta = make_eta_path(static_cast<int>(rng() % 5),
                                     15 + static_cast<int>(rng() % 26), rng);
      break;
    }
    case PlantKind::Reversal: {
      s.trade_count = 12 + static_cast<int>(rng() % 9);
      s.duration = 500 * kNsPerMilli + static_cast<Nanos>(u() * 0.7e9);
      s.total_return = 0.009 + u() * 0.006;
      s.reversal = true;
      s.full_quotes = false;
      break;
    }
  }
  // Volume schedule anti-correlated with the planted quote gap: thin books
  // (large gaps) see little volume to criterion fulfillment.
  const std::uint64_t per_trade =
      base_volume *
      (1 + static_cast<std::uint64_t>(std::llround((0.021 - s.quote_gap) * 4500.0)));
  s.volumes.assign(static_cast<std::size_t>(s.trade_count), per_trade);
  return s;
}

}  // namespace detail

// Compares the brute-force event set of a finished day against the planted
// expectations, field for field.  Throws GenerationError on any mismatch.
inline void verify_day(const SyntheticDay& day,
                       const std::vector<GroundTruthEntry>& entries,
                       const PlantContext& ctx) {
  const TradeSeries series = day.trade_series();
  for (Nanos d : ctx.durations) {
    std::vector<const ExpectedEvent*> expected;
    for (const GroundTruthEntry& e : entries) {
      const auto it = e.expected.find(d);
      if (it != e.expected.end()) expected.push_back(&it->second);
    }
    std::sort(expected.begin(), expected.end(),
              [](const ExpectedEvent* a, const ExpectedEvent* b) {
                return a->t_start < b->t_start;
              });
    DetectionCriteria c;
    c.threshold = ctx.threshold;
    c.min_trades = ctx.min_trades;
    c.max_duration = d;
    const std::vector<UeeEvent> actual = brute_force_detect(series, c);
    if (actual.size() != expected.size())
      throw GenerationError("self-check: event count mismatch for " +
                            day.symbol + " " + format_date(day.date));
    for (std::size_t i = 0; i < actual.size(); ++i) {
      const UeeEvent& a = actual[i];
      const ExpectedEvent& e = *expected[i];
      const bool same =
          a.direction == e.direction && a.t_start == e.t_start &&
          a.t_change == e.t_change && a.t_end == e.t_end &&
          a.s_start == e.s_start && a.s_change == e.s_change &&
          a.s_end == e.s_end && a.trades_to_change == e.trades_to_change &&
          a.trades_total == e.trades_total && a.r_uee == e.r_uee;
      if (!same)
        throw GenerationError("self-check: event field mismatch for " +
                              day.symbol + " " + format_date(day.date));
    }
  }
}

inline nlohmann::ordered_json expected_event_json(const ExpectedEvent& e) {
  nlohmann::ordered_json j;
  j["direction"] = direction_name(e.direction);
  j["t_start"] = e.t_start;
  j["t_change"] = e.t_change;
  j["t_end"] = e.t_end;
  j["s_start"] = e.s_start;
  j["s_change"] = e.s_change;
  j["s_end"] = e.s_end;
  j["trades_to_change"] = e.trades_to_change;
  j["trades_total"] = e.trades_total;
  j["r_uee"] = e.r_uee;
  return j;
}

inline ExpectedEvent expected_event_from_json(const nlohmann::json& j) {
  ExpectedEvent e;
  e.direction = j.at("direction").get<std::string>() == "crash"
                    ? Direction::FlashCrash
                    : Direction::FlashSpike;
  e.t_start = j.at("t_start").get<Nanos>();
  e.t_change = j.at("t_change").get<Nanos>();
  e.t_end = j.at("t_end").get<Nanos>();
  e.s_start = j.at("s_start").get<double>();
  e.s_change = j.at("s_change").get<double>();
  e.s_end = j.at("s_end").get<double>();
  e.trades_to_change = j.at("trades_to_change").get<int>();
  e.trades_total = j.at("trades_total").get<int>();
  e.r_uee = j.at("r_uee").get<double>();
  return e;
}

inline std::string ground_truth_json(const GroundTruth& gt) {
  nlohmann::ordered_json j;
  j["schema"] = "uee.ground-truth.v1";
  j["seed"] = gt.seed;
  j["threshold"] = gt.threshold;
  j["min_trades"] = gt.min_trades;
  j["durations_ns"] = gt.durations;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const GroundTruthEntry& e : gt.entries) {
    nlohmann::ordered_json je;
    je["symbol"] = e.symbol;
    je["date"] = format_date(e.date);
    je["kind"] = e.kind;
    je["plant_start"] = e.plant_start;
    nlohmann::ordered_json exp;
    for (const auto& [d, ev] : e.expected)
      exp[std::to_string(d)] = expected_event_json(ev);
    je["expected"] = exp;
    if (e.quote_move) {
      nlohmann::ordered_json qm;
      qm["side"] = quote_side_name(e.quote_move->side);
      qm["value"] = e.quote_move->value;
      qm["t_from"] = e.quote_move->t_from;
      qm["t_to"] = e.quote_move->t_to;
      je["quote_move"] = qm;
    }
    je["accumulated_volume"] = e.accumulated_volume;
    je["ramp_spread"] = e.ramp_spread;
    je["eta"] = e.eta;
    entries.push_back(std::move(je));
  }
  j["entries_checksum"] = hex64(fnv1a64(entries.dump()));
  j["entries"] = std::move(entries);
  return j.dump(1) + "\n";
}

inline GroundTruth ground_truth_from_json(const nlohmann::ordered_json& j) {
  if (j.at("schema").get<std::string>() != "uee.ground-truth.v1")
    throw std::runtime_error("unknown ground-truth schema");
  GroundTruth gt;
  gt.seed = j.at("seed").get<std::uint64_t>();
  gt.threshold = j.at("threshold").get<double>();
  gt.min_trades = j.at("min_trades").get<int>();
  gt.durations = j.at("durations_ns").get<std::vector<Nanos>>();
  const auto& entries = j.at("entries");
  if (j.at("entries_checksum").get<std::string>() !=
      hex64(fnv1a64(entries.dump())))
    throw std::runtime_error("ground truth checksum mismatch");
  for (const auto& je : entries) {
    GroundTruthEntry e;
    e.symbol = je.at("symbol").get<std::string>();
    const auto d = parse_date(je.at("date").get<std::string>());
    if (!d) throw std::runtime_error("bad ground-truth date");
    e.date = *d;
    e.kind = je.at("kind").get<std::string>();
    e.plant_start = je.at("plant_start").get<Nanos>();
    for (const auto& [k, v] : je.at("expected").items())
      e.expected.emplace(static_cast<Nanos>(std::stoll(k)),
                         expected_event_from_json(v));
    if (je.contains("quote_move")) {
      const auto& qm = je.at("quote_move");
      LargestQuoteMove mv;
      mv.side = qm.at("side").get<std::string>() == "bid" ? QuoteSide::Bid
                                                          : QuoteSide::Ask;
      mv.value = qm.at("value").get<double>();
      mv.t_from = qm.at("t_from").get<Nanos>();
      mv.t_to = qm.at("t_to").get<Nanos>();
      e.quote_move = mv;
    }
    e.accumulated_volume = je.at("accumulated_volume").get<std::uint64_t>();
    e.ramp_spread = je.at("ramp_spread").get<std::vector<double>>();
    e.eta = je.at("eta").get<std::vector<double>>();
    gt.entries.push_back(std::move(e));
  }
  return gt;
}

inline GroundTruth load_ground_truth(const std::filesystem::path& path) {
  return ground_truth_from_json(
      nlohmann::ordered_json::parse(read_text_file(path)));
}

struct FixtureSuite {
  GroundTruth gt;
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path> trade_files;
  std::vector<std::filesystem::path> quote_files;
  std::filesystem::path universe_file;
  std::filesystem::path ground_truth_file;
  std::filesystem::path manifest_file;
};

// Generates the corpus under out_dir: per-symbol-day trade and quote files
// in the canonical formats, the example universe file, ground_truth.json
// and a manifest with per-file checksums.  Everything is a pure function of
// the seed.
inline FixtureSuite fixture_suite(std::uint64_t seed,
                                  const FixtureParams& params,
                                  const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  using detail::PlantKind;

  constexpr int kSlotsPerDay = 8;
  const int capacity = static_cast<int>(params.symbols.size() *
                                        params.dates.size()) *
                       kSlotsPerDay;
  if (params.total() > capacity)
    throw GenerationError("fixture: more plants than available slots");

  std::mt19937_64 plan_rng(seed ^ 0xa5a5a5a55a5a5a5aull);
  std::vector<PlantKind> kinds;
  auto add = [&](PlantKind k, int count) {
    for (int i = 0; i < count; ++i) kinds.push_back(k);
  };
  add(PlantKind::Positive, params.positives);
  add(PlantKind::TooFew, params.too_few);
  add(PlantKind::BelowThreshold, params.below_threshold);
  add(PlantKind::TooSlow, params.too_slow);
  add(PlantKind::Reversal, params.reversal);
  std::shuffle(kinds.begin(), kinds.end(), plan_rng);

  // Start times cluster right after the main-session open and close, the
  // intraday pattern the corpus is meant to exhibit.
  const Nanos slot_base[kSlotsPerDay] = {
      time_of_day(9, 31),  time_of_day(9, 39), time_of_day(9, 47),
      time_of_day(9, 55),  time_of_day(12, 30), time_of_day(14, 30),
      time_of_day(16, 1),  time_of_day(16, 9)};

  struct DayPlan {
    std::string symbol;
    Date date;
    std::vector<std::pair<PlantKind, PlantSpec>> plants;
  };
  std::vector<DayPlan> plan;
  std::size_t next_kind = 0;
  for (const Date& date : params.dates) {
    for (const std::string& symbol : params.symbols) {
      DayPlan dp{symbol, date, {}};
      for (int slot = 0; slot < kSlotsPerDay && next_kind < kinds.size();
           ++slot, ++next_kind) {
        const Nanos jitter =
            static_cast<Nanos>(plan_rng() % 40'000) * kNsPerMilli / 1000 -
            20 * kNsPerSec;
        const Nanos start = slot_base[slot] + jitter;
        dp.plants.emplace_back(
            kinds[next_kind],
            detail::make_plant_spec(kinds[next_kind], start,
                                    params.baseline.base_volume, plan_rng));
      }
      plan.push_back(std::move(dp));
    }
  }

  fs::create_directories(out_dir / "trades");
  fs::create_directories(out_dir / "quotes");

  FixtureSuite suite;
  suite.out_dir = out_dir;
  suite.gt.seed = seed;
  suite.gt.threshold = params.ctx.threshold;
  suite.gt.min_trades = params.ctx.min_trades;
  suite.gt.durations = params.ctx.durations;

  const auto check =
      default_check_criteria(params.ctx.threshold, params.ctx.min_trades);

  for (const DayPlan& dp : plan) {
    const std::uint64_t day_seed =
        fnv1a64(dp.symbol + format_date(dp.date), seed | 1);
    std::vector<GroundTruthEntry> day_entries;
    SyntheticDay day;
    bool done = false;
    for (int attempt = 0; attempt < 3 && !done; ++attempt) {
      day = generate_baseline(day_seed + 0x100000001ull * attempt, dp.symbol,
                              dp.date, params.baseline, check);
      day_entries.clear();
      try {
        for (const auto& [kind, spec] : dp.plants) {
          GroundTruthEntry e = plant_uee(day, spec, params.ctx);
          e.kind = detail::plant_kind_name(kind);
          day_entries.push_back(std::move(e));
        }
        verify_day(day, day_entries, params.ctx);
        done = true;
      } catch (const std::runtime_error&) {
        if (attempt == 2) throw;
      }
    }

    const std::string stem = dp.symbol + "_" + format_date(dp.date) + ".csv";
    const fs::path tf = out_dir / "trades" / stem;
    const fs::path qf = out_dir / "quotes" / stem;
    write_text_file(tf, day.trades_csv());
    write_text_file(qf, day.quotes_csv());
    suite.trade_files.push_back(tf);
    suite.quote_files.push_back(qf);
    for (GroundTruthEntry& e : day_entries)
      suite.gt.entries.push_back(std::move(e));
  }

  // example universe file mirroring the symbol/company/sector layout
  static const char* kSectors[10] = {
      "Industrials",      "Financials",      "Health Care",
      "Materials",        "Consumer Discretionary", "Energy",
      "Information Technology", "Consumer Staples", "Utilities",
      "Telecommunications Services"};
  std::string uni = "symbol,company,sector\n";
  for (std::size_t i = 0; i < params.symbols.size(); ++i) {
    uni += params.symbols[i];
    uni += ",Synthetic ";
    uni += static_cast<char>('A' + (i % 26));
    uni += " Corp.,";
    uni += kSectors[i % 10];
    uni += "\n";
  }
  suite.universe_file = out_dir / "universe.csv";
  write_text_file(suite.universe_file, uni);

  suite.ground_truth_file = out_dir / "ground_truth.json";
  write_text_file(suite.ground_truth_file, ground_truth_json(suite.gt));

  KvDoc manifest;
  manifest.add("generator", std::string("uee synth"));
  manifest.add("seed", suite.gt.seed);
  manifest.add("plants_total", static_cast<std::uint64_t>(params.total()));
  manifest.add("positives",
               static_cast<std::uint64_t>(params.positives));
  manifest.add("negatives",
               static_cast<std::uint64_t>(params.total() - params.positives));
  manifest.add("symbol_days", static_cast<std::uint64_t>(plan.size()));
  for (const auto& f : suite.trade_files)
    manifest.add("checksum." + f.filename().string(),
                 hex64(fnv1a64_file(f)));
  for (const auto& f : suite.quote_files)
    manifest.add("checksum.quotes." + f.filename().string(),
                 hex64(fnv1a64_file(f)));
  manifest.add("checksum.ground_truth.json",
               hex64(fnv1a64_file(suite.ground_truth_file)));
  suite.manifest_file = out_dir / "manifest.kv";
  write_text_file(suite.manifest_file, manifest.to_string());
  return suite;
}

}  // namespace uee::synth
