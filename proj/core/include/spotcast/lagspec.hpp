#ifndef SPOTCAST_LAGSPEC_HPP_
#define SPOTCAST_LAGSPEC_HPP_

#include <algorithm>
#include <vector>

#include "spotcast/panel.hpp"

namespace spotcast {

// Lag index sets: lag_sets[i][j] holds the lags of source j entering
// equation i, periodic_lags[i] the own lags with time-varying coefficients
// and tarch_lags[i] the threshold-ARCH lags.
struct LagSpec {
  std::vector<int> lag_sets[kNumSeries][kNumSeries];
  std::vector<int> periodic_lags[kNumSeries];
  std::vector<int> tarch_lags[kNumSeries];

  int max_lag() const {
    int m = 0;
    for (int i = 0; i < kNumSeries; ++i)
      for (int j = 0; j < kNumSeries; ++j)
        for (int k : lag_sets[i][j]) m = std::max(m, k);
    return m;
  }
  int max_tarch_lag() const {
    int m = 0;
    for (int i = 0; i < kNumSeries; ++i)
      for (int k : tarch_lags[i]) m = std::max(m, k);
    return m;
  }

  // Full specification of the reference model: two weeks of hourly lags plus
  // weekly seasonal pairs for price and load, two days of renewable lags
  // into price/load, and the matching TARCH sets.
  static LagSpec paper_default();

  // A small specification used by the synthetic-data generator and fast
  // tests: daily-scale lags only.
  static LagSpec toy();
};

inline std::vector<int> lag_range(int from, int to) {
  std::vector<int> v;
  for (int k = from; k <= to; ++k) v.push_back(k);
  return v;
}

}  // namespace spotcast

#endif  // SPOTCAST_LAGSPEC_HPP_
