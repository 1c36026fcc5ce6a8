#pragma once

// Post-event recovery: eta_n = (S(t_end) - S(t_n)) / (S(t_end) - S(t_start))
// at the n-th trade after the event end, and the aggregate probability
// curves for near-full (eta >= high) and near-zero (eta <= low) recovery.

#include <cstdint>
#include <vector>

#include "uee/detect.hpp"
#include "uee/records.hpp"

namespace uee {

struct RecoverySeries {
  Direction direction = Direction::FlashCrash;
  int available_n = 0;       // trades remaining in the day, capped at n_max
  std::vector<double> eta;   // eta[k] is eta_{k+1}; unclipped
};

// eta values are kept unclipped: negative values are aftershocks, values
// above 1 overshoots.  The denominator is nonzero by the event definition.
// Trades never cross the day boundary; ties in timestamp follow tape order.
inline RecoverySeries recovery_series(const UeeEvent& e,
                                      const TradeSeries& day,
                                      int n_max = 100) {
  RecoverySeries rs;
  rs.direction = e.direction;
  const auto& tr = day.trades;
  const double denom = e.s_end - e.s_start;
  rs.eta.reserve(static_cast<std::size_t>(n_max));
  for (std::size_t k = e.end_idx + 1;
       k < tr.size() && static_cast<int>(rs.eta.size()) < n_max; ++k)
    rs.eta.push_back((e.s_end - tr[k].price) / denom);
  rs.available_n = static_cast<int>(rs.eta.size());
  return rs;
}

struct RecoveryCurvePoint {
  std::uint64_t samples = 0;
  std::uint64_t high = 0;  // eta_n >= high_cut
  std::uint64_t low = 0;   // eta_n <= low_cut
  double p_high() const {
    return samples ? static_cast<double>(high) / static_cast<double>(samples)
                   : 0.0;
  }
  double p_low() const {
    return samples ? static_cast<double>(low) / static_cast<double>(samples)
                   : 0.0;
  }
};

struct RecoveryCurves {
  double high_cut = 0.8;
  double low_cut = 0.2;
  // Index n-1; samples == 0 marks the probability absent at that n.
  std::vector<RecoveryCurvePoint> crash;
  std::vector<RecoveryCurvePoint> spike;
};

// Relative frequencies at each n over the series with available_n >= n;
// crashes and spikes tabulated separately.  An event contributes at n only
// when its n-th post-event trade exists, so denominators never drift.
inline RecoveryCurves recovery_curves(const std::vector<RecoverySeries>& all,
                                      int n_max = 100, double high = 0.8,
                                      double low = 0.2) {
  RecoveryCurves c;
  c.high_cut = high;
  c.low_cut = low;
  c.crash.assign(static_cast<std::size_t>(n_max), {});
  c.spike.assign(static_cast<std::size_t>(n_max), {});
  for (const RecoverySeries& rs : all) {
    auto& curve = rs.direction == Direction::FlashCrash ? c.crash : c.spike;
    const int upto = std::min(rs.available_n, n_max);
    for (int n = 1; n <= upto; ++n) {
      RecoveryCurvePoint& pt = curve[static_cast<std::size_t>(n - 1)];
      const double eta = rs.eta[static_cast<std::size_t>(n - 1)];
      ++pt.samples;
      if (eta >= high) ++pt.high;
      if (eta <= low) ++pt.low;
    }
  }
  return c;
}

}  // namespace uee
