#pragma once

// Canonical tick records.  One stream holds one symbol-day, sorted by
// (timestamp, sequence); the sequence ordinal breaks timestamp ties in file
// order.

#include <cstdint>
#include <string>
#include <vector>

#include "uee/time.hpp"

namespace uee {

struct TradeRecord {
  Nanos ts = 0;
  double price = 0.0;
  std::uint64_t volume = 0;
  std::uint32_t seq = 0;
  bool operator==(const TradeRecord&) const = default;
};

enum QuoteFlag : std::uint8_t {
  kQuoteCrossed = 1,     // bid > ask
  kQuoteDegenerate = 2,  // bid <= 0 or ask <= 0 (one-sided book)
};

struct QuoteRecord {
  Nanos ts = 0;
  double bid = 0.0;
  double ask = 0.0;
  std::uint64_t bid_size = 0;
  std::uint64_t ask_size = 0;
  std::uint32_t seq = 0;
  std::uint8_t flags = 0;

  bool crossed() const { return flags & kQuoteCrossed; }
  bool degenerate() const { return flags & kQuoteDegenerate; }
  // Usable for spread analytics: two-sided and not crossed.
  bool spread_ok() const { return flags == 0; }
  bool operator==(const QuoteRecord&) const = default;
};

struct SymbolDay {
  std::string symbol;
  Date date;
  auto operator<=>(const SymbolDay&) const = default;
};

struct TradeSeries {
  SymbolDay key;
  std::vector<TradeRecord> trades;
};

struct QuoteSeries {
  SymbolDay key;
  std::vector<QuoteRecord> quotes;
};

}  // namespace uee
