#ifndef SPOTCAST_FORECAST_HPP_
#define SPOTCAST_FORECAST_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "spotcast/estimator.hpp"
#include "spotcast/holiday.hpp"
#include "spotcast/panel.hpp"

namespace spotcast {

struct Forecast {
  std::vector<HourStamp> timestamps;  // the forecast hours
  Eigen::MatrixXd point;              // horizon x 3, natural units
};

struct ForecastBands {
  Forecast central;
  std::vector<double> levels;  // e.g. 0.90, 0.99
  // lower[l] / upper[l]: horizon x 3 band edges for levels[l].
  std::vector<Eigen::MatrixXd> lower;
  std::vector<Eigen::MatrixXd> upper;
  int paths = 0;
  std::uint64_t seed = 0;
};

struct BandOptions {
  std::vector<double> levels{0.90, 0.99};
  int paths = 1000;
  std::uint64_t seed = 1;
};

// Iterated conditional-mean forecast: known observations feed the recursion
// and forecasts substitute for them past the sample end. history must start
// at the model's first sample hour. With first_pass the coefficients of the
// first, unweighted estimation step are used. The holiday table must cover
// every forecast year.
Forecast forecast_point(const ModelFit& m, const HourlyPanel& history,
                        const HolidayCalendar& holidays, int horizon, bool first_pass = false);

// Point forecast plus Monte-Carlo prediction bands from a residual
// bootstrap: standardized residual rows are resampled jointly, the
// conditional variance recursion scales them, and the bands are symmetric
// empirical quantiles around the point forecast. Deterministic per seed.
ForecastBands forecast_bands(const ModelFit& m, const HourlyPanel& history,
                             const HolidayCalendar& holidays, int horizon,
                             const BandOptions& opt = {});

}  // namespace spotcast

#endif  // SPOTCAST_FORECAST_HPP_
