#pragma once

// Exchange-time clock helpers.  All timestamps are integer nanoseconds since
// midnight exchange time; calendar dates are carried separately per file.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace uee {

using Nanos = std::int64_t;

inline constexpr Nanos kNsPerSec = 1'000'000'000;
inline constexpr Nanos kNsPerMin = 60 * kNsPerSec;
inline constexpr Nanos kNsPerHour = 60 * kNsPerMin;
inline constexpr Nanos kNsPerMilli = 1'000'000;

constexpr Nanos time_of_day(int h, int m = 0, int s = 0, Nanos frac = 0) {
  return h * kNsPerHour + m * kNsPerMin + s * kNsPerSec + frac;
}

// Session boundaries: 04:00-09:30 / 09:30-16:00 / 16:00-20:00.
// A boundary instant belongs to the later session.
enum class TradingSession { PreMarket, Main, AfterMarket };

inline constexpr Nanos kPreMarketOpen = time_of_day(4, 0);
inline constexpr Nanos kMainOpen = time_of_day(9, 30);
inline constexpr Nanos kMainClose = time_of_day(16, 0);
inline constexpr Nanos kAfterClose = time_of_day(20, 0);

inline std::optional<TradingSession> session_of(Nanos t) {
  if (t < kPreMarketOpen || t >= kAfterClose) return std::nullopt;
  if (t < kMainOpen) return TradingSession::PreMarket;
  if (t < kMainClose) return TradingSession::Main;
  return TradingSession::AfterMarket;
}

inline const char* session_name(TradingSession s) {
  switch (s) {
    case TradingSession::PreMarket: return "pre_market";
    case TradingSession::Main: return "main";
    case TradingSession::AfterMarket: return "after_market";
  }
  return "?";
}

// "HH:MM:SS" with an optional fractional part of 1..9 digits.
inline std::optional<Nanos> parse_time_of_day(std::string_view s) {
  if (s.size() < 8 || s[2] != ':' || s[5] != ':') return std::nullopt;
  auto two = [&](int off) -> int {
    const char a = s[off], b = s[off + 1];
    if (a < '0' || a > '9' || b < '0' || b > '9') return -1;
    return (a - '0') * 10 + (b - '0');
  };
  const int h = two(0), m = two(3), sec = two(6);
  if (h < 0 || h > 23 || m < 0 || m > 59 || sec < 0 || sec > 59)
    return std::nullopt;
  Nanos frac = 0;
  if (s.size() > 8) {
    if (s[8] != '.' || s.size() < 10 || s.size() > 18) return std::nullopt;
    Nanos scale = 100'000'000;
    for (std::size_t i = 9; i < s.size(); ++i) {
      const char c = s[i];
      if (c < '0' || c > '9') return std::nullopt;
      frac += (c - '0') * scale;
      scale /= 10;
    }
  }
  return time_of_day(h, m, sec, frac);
}

// Always emits nine fractional digits so serialized streams are lossless.
inline std::string format_time_of_day(Nanos t) {
  const int h = static_cast<int>(t / kNsPerHour);
  const int m = static_cast<int>((t / kNsPerMin) % 60);
  const int s = static_cast<int>((t / kNsPerSec) % 60);
  const long long frac = static_cast<long long>(t % kNsPerSec);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02d:%02d:%02d.%09lld", h, m, s, frac);
  return buf;
}

struct Date {
  std::int16_t year = 0;
  std::int8_t month = 0;
  std::int8_t day = 0;
  auto operator<=>(const Date&) const = default;
  bool ok() const {
    using namespace std::chrono;
    return year_month_day{std::chrono::year{year} / month / day}.ok();
  }
};

inline std::optional<Date> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  for (int i = 0; i < 4; ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    y = y * 10 + (s[i] - '0');
  }
  auto two = [&](int off) -> int {
    if (s[off] < '0' || s[off] > '9' || s[off + 1] < '0' || s[off + 1] > '9')
      return -1;
    return (s[off] - '0') * 10 + (s[off + 1] - '0');
  };
  m = two(5);
  d = two(8);
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  Date out{static_cast<std::int16_t>(y), static_cast<std::int8_t>(m),
           static_cast<std::int8_t>(d)};
  if (!out.ok()) return std::nullopt;
  return out;
}

inline std::string format_date(Date d) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", int(d.year), int(d.month),
                int(d.day));
  return buf;
}

struct IsoWeek {
  int year = 0;
  int week = 0;
  auto operator<=>(const IsoWeek&) const = default;
  std::string label() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-W%02d", year, week);
    return buf;
  }
};

// ISO 8601 week via the Thursday rule: a date's week is the week of the
// Thursday in the same Mon-Sun span.
inline IsoWeek iso_week_of(Date d) {
  using namespace std::chrono;
  const sys_days sd{std::chrono::year{d.year} / d.month / d.day};
  const int isodow = static_cast<int>(weekday{sd}.iso_encoding());  // Mon=1
  const sys_days thursday = sd + days{4 - isodow};
  const year_month_day th{thursday};
  const int iso_year = static_cast<int>(th.year());
  const sys_days jan1{std::chrono::year{iso_year} / 1 / 1};
  const int week = static_cast<int>((thursday - jan1).count()) / 7 + 1;
  return {iso_year, week};
}

inline IsoWeek next_week(IsoWeek w) {
  // Advance by probing the Monday of week w plus 7 days.
  using namespace std::chrono;
  const sys_days jan4{std::chrono::year{w.year} / 1 / 4};  // always in W01
  const int dow = static_cast<int>(weekday{jan4}.iso_encoding());
  const sys_days monday = jan4 - days{dow - 1} + days{7 * (w.week - 1) + 7};
  const year_month_day ymd{monday};
  return iso_week_of({static_cast<std::int16_t>(int(ymd.year())),
                      static_cast<std::int8_t>(unsigned(ymd.month())),
                      static_cast<std::int8_t>(unsigned(ymd.day()))});
}

}  // namespace uee
