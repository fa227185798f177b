#ifndef SPOTCAST_SIMULATE_HPP_
#define SPOTCAST_SIMULATE_HPP_

#include <Eigen/Dense>
#include <cstdint>

#include "spotcast/estimator.hpp"
#include "spotcast/holiday.hpp"
#include "spotcast/panel.hpp"

namespace spotcast {

// Ground-truth parameters of a synthetic panel generator. The coefficient
// vectors follow the same column layouts as a fitted model, so simulated
// data and estimated fits are directly comparable.
struct SyntheticModel {
  FitConfig config;  // defaults to the daily-scale toy lag specification
  Eigen::VectorXd theta[kNumSeries];  // over equation_columns
  Eigen::VectorXd alpha[kNumSeries];  // over tarch_columns; empty: constant sd
  double const_sd[kNumSeries] = {0.3, 0.3, 0.3};  // used when alpha is empty
  std::array<SeriesStats, kNumSeries> stats{};    // natural-unit scaling
  TrendScale trend{1.0};

  // Stable default: persistent own lags, renewables pressing on the price,
  // weekly/daily seasonal shapes, a standard leverage effect in the price
  // and load variance and an inverse one for the renewables.
  static SyntheticModel standard();
};

struct SimulateOptions {
  HourStamp start = make_hour(CivilDate{2019, 1, 1}, 0);
  std::size_t n = 20000;
  std::size_t burn_in = 2000;
  std::uint64_t seed = 1;
};

// Simulates the three series with Gaussian standardized innovations and
// returns a natural-unit panel (load and feed-in censored at zero).
// Deterministic per seed.
HourlyPanel simulate_from(const SyntheticModel& model, const HolidayCalendar& holidays,
                          const SimulateOptions& opt = {});

}  // namespace spotcast

#endif  // SPOTCAST_SIMULATE_HPP_
