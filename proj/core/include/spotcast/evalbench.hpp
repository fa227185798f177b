#ifndef SPOTCAST_EVALBENCH_HPP_
#define SPOTCAST_EVALBENCH_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spotcast/estimator.hpp"
#include "spotcast/holiday.hpp"
#include "spotcast/panel.hpp"

namespace spotcast {

// Weekly-persistent forecast: the last observed week, repeated.
Eigen::VectorXd persistent_forecast(const Eigen::VectorXd& y, int horizon);

// Mean of each weekly hour slot; slots follow the hour grid modulo 168 so
// they are stable across windows.
Eigen::MatrixXd weekly_slot_mean(const Eigen::MatrixXd& Y, std::int64_t first_hour);

// AIC-selected (vector) autoregression on the weekly-mean-adjusted series,
// fitted by solving the Yule-Walker equations with the multichannel
// Levinson recursion on biased autocovariances.
struct ArModel {
  int order = 0;
  std::vector<Eigen::MatrixXd> phi;  // order coefficient matrices, d x d
  Eigen::MatrixXd noise;             // innovation covariance at the order
  Eigen::MatrixXd weekly_mean;       // 168 x d
  double aic = 0.0;
};

ArModel fit_mean_adjusted_ar(const Eigen::MatrixXd& Y, std::int64_t first_hour, int p_max);

// Iterated forecast of the model above given the estimation sample.
Eigen::MatrixXd ar_forecast(const ArModel& model, const Eigen::MatrixXd& Y,
                            std::int64_t first_hour, int horizon);

// Direct Yule-Walker solve via the stacked block-Toeplitz system; reference
// implementation for the recursion, O((p d)^3).
std::vector<Eigen::MatrixXd> yule_walker_direct(const std::vector<Eigen::MatrixXd>& gamma,
                                                int order);

// Biased (1/n) autocovariance matrices gamma[k] = cov(x_t, x_{t-k}),
// k = 0..max_lag.
std::vector<Eigen::MatrixXd> autocovariances(const Eigen::MatrixXd& Y, int max_lag);

// MMAE_h = mean of MAE_1..MAE_h.
Eigen::VectorXd mmae_from_mae(const Eigen::VectorXd& mae);

struct RollingOptions {
  std::int64_t window = 18481;  // 110 weeks + 1 hour
  int horizon = 672;
  int step = 24;  // one origin per day, windows ending at hour 23
  int ar_pmax = 1210;
  int var_pmax = 555;
  bool run_model = true;       // the full fit and its homoscedastic pass
  bool run_ar = true;
  bool run_var = true;
  bool run_persistent = true;
  int max_origins = 0;  // 0: all that fit
  FitConfig fit;
};

struct EvalReport {
  std::vector<std::string> methods;
  std::vector<Eigen::VectorXd> mae;   // per method, price series, length horizon
  std::vector<Eigen::VectorXd> mmae;
  int origins = 0;
};

// Rolling out-of-sample study on the price: every method is re-estimated on
// each window and evaluated against the following horizon hours.
EvalReport rolling_study(const HourlyPanel& panel, const HolidayCalendar& holidays,
                         const RollingOptions& opt);

}  // namespace spotcast

#endif  // SPOTCAST_EVALBENCH_HPP_
