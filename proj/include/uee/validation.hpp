#pragma once

// Ingest bookkeeping.  Every input line is accounted for:
// accepted + sum(rejected by reason) == lines_total.
// Crossed and degenerate quotes are accepted-but-flagged, counted separately.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "uee/time.hpp"

namespace uee {

enum class RejectReason {
  MalformedLine,
  BadTimestamp,
  NonPositivePrice,
  NonPositiveVolume,
  NegativeQuote,
  OutOfOrder,
  UniverseFiltered,
};

inline const char* reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::MalformedLine: return "malformed_line";
    case RejectReason::BadTimestamp: return "bad_timestamp";
    case RejectReason::NonPositivePrice: return "non_positive_price";
    case RejectReason::NonPositiveVolume: return "non_positive_volume";
    case RejectReason::NegativeQuote: return "negative_quote";
    case RejectReason::OutOfOrder: return "out_of_order";
    case RejectReason::UniverseFiltered: return "universe_filtered";
  }
  return "?";
}

struct SymbolCoverage {
  std::uint64_t records = 0;
  std::uint64_t symbol_days = 0;
  Nanos first_ts = 0;
  Nanos last_ts = 0;
};

struct ValidationReport {
  std::uint64_t lines_total = 0;
  std::uint64_t accepted = 0;
  std::map<RejectReason, std::uint64_t> rejected;
  std::uint64_t crossed_quotes = 0;
  std::uint64_t degenerate_quotes = 0;
  std::map<std::string, SymbolCoverage> coverage;

  std::uint64_t rejected_total() const {
    std::uint64_t n = 0;
    for (const auto& [r, c] : rejected) n += c;
    return n;
  }

  void reject(RejectReason r) { ++rejected[r]; }

  // Merge is commutative and associative, so partial reports from concurrent
  // parses combine in any order.
  void merge(const ValidationReport& o) {
    lines_total += o.lines_total;
    accepted += o.accepted;
    for (const auto& [r, c] : o.rejected) rejected[r] += c;
    crossed_quotes += o.crossed_quotes;
    degenerate_quotes += o.degenerate_quotes;
    for (const auto& [sym, cov] : o.coverage) {
      auto& mine = coverage[sym];
      if (mine.records == 0 || cov.first_ts < mine.first_ts)
        mine.first_ts = cov.first_ts;
      if (mine.records == 0 || cov.last_ts > mine.last_ts)
        mine.last_ts = cov.last_ts;
      mine.records += cov.records;
      mine.symbol_days += cov.symbol_days;
    }
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "validation report\n"
       << "  lines total: " << lines_total << "\n"
       << "  accepted:    " << accepted << "\n"
       << "  rejected:    " << rejected_total() << "\n";
    for (const auto& [r, c] : rejected)
      os << "    " << reject_reason_name(r) << ": " << c << "\n";
    os << "  crossed quotes:    " << crossed_quotes << "\n"
       << "  degenerate quotes: " << degenerate_quotes << "\n"
       << "per-symbol coverage\n";
    for (const auto& [sym, cov] : coverage) {
      os << "  " << sym << "  days=" << cov.symbol_days
         << "  records=" << cov.records;
      if (cov.records)
        os << "  first=" << format_time_of_day(cov.first_ts)
           << "  last=" << format_time_of_day(cov.last_ts);
      os << "\n";
    }
    return os.str();
  }

  std::string to_kv() const {
    std::ostringstream os;
    os << "lines_total=" << lines_total << "\naccepted=" << accepted
       << "\nrejected_total=" << rejected_total() << "\n";
    for (const auto& [r, c] : rejected)
      os << "rejected." << reject_reason_name(r) << "=" << c << "\n";
    os << "crossed_quotes=" << crossed_quotes
       << "\ndegenerate_quotes=" << degenerate_quotes << "\n";
    for (const auto& [sym, cov] : coverage)
      os << "coverage." << sym << ".records=" << cov.records << "\n"
         << "coverage." << sym << ".days=" << cov.symbol_days << "\n";
    return os.str();
  }
};

}  // namespace uee
