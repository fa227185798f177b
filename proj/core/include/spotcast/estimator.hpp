#ifndef SPOTCAST_ESTIMATOR_HPP_
#define SPOTCAST_ESTIMATOR_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "spotcast/basis.hpp"
#include "spotcast/calendar.hpp"
#include "spotcast/design.hpp"
#include "spotcast/holiday.hpp"
#include "spotcast/lagspec.hpp"
#include "spotcast/panel.hpp"

namespace spotcast {

// E|Z| for a standard normal Z; fallback scale when the plug-in estimate
// degenerates.
inline constexpr double kGaussianAbsMoment = 0.7978845608028654;  // sqrt(2/pi)

struct FitConfig {
  BasisConfig basis;
  LagSpec lags = LagSpec::paper_default();
  ClassifyOptions classify;
  double epsilon = 1e-3;    // convergence threshold on the mean sigma change
  int max_iterations = 4;   // lasso passes (1 with tarch=false: homoscedastic)
  bool tarch = true;        // model the conditional variance and reweight
  double sigma_floor_rel = 1e-4;  // sigma floor relative to sd(residuals)
};

// Result of one weighted-lasso pass (coefficients on the original column
// scale; the intercept absorbs the centering).
struct LassoFit {
  Eigen::VectorXd theta;
  double lambda = 0.0;
  double aic = 0.0;
  double rss = 0.0;  // weighted residual sum of squares at the selected knot
  int df = 0;
};

// Threshold-ARCH part of one equation, fitted as a nonnegative regression
// of |residual| on its sign-split lags.
struct TarchFit {
  std::vector<TarchColumnSpec> columns;
  Eigen::VectorXd alpha;      // coefficients of the absolute-residual scale
  std::vector<int> active;
  double gamma = kGaussianAbsMoment;  // estimated E|Z|
  std::int64_t row_offset = 0;        // rows skipped at the residual start
};

struct EquationFit {
  Series equation = Series::Price;
  std::vector<ColumnSpec> columns;
  Eigen::VectorXd theta;        // final coefficients
  Eigen::VectorXd theta_first;  // after the first, unweighted pass
  double lambda = 0.0;
  double aic = 0.0;
  int df = 0;
  Eigen::VectorXd residuals;  // y - X theta, aligned with the design rows
  Eigen::VectorXd sigma;      // estimated residual sd per row (constant
                              // when the variance part is disabled)
  TarchFit tarch;
};

struct IterationTrace {
  struct Step {
    int iteration = 0;  // 1-based
    double delta[kNumSeries];   // mean |sigma_K - sigma_{K-1}|, NaN at K=1
    double lambda[kNumSeries];
    double aic[kNumSeries];
    int df[kNumSeries];
    double gamma[kNumSeries];
  };
  std::vector<Step> steps;
  bool converged = false;
};

struct ModelFit {
  FitConfig config;
  HourStamp start{};   // first panel hour
  std::size_t n = 0;   // panel length
  std::array<SeriesStats, kNumSeries> stats{};
  TrendScale trend;
  std::int64_t t_min = 0;
  EquationFit eq[kNumSeries];
  IterationTrace trace;

  const EquationFit& equation(Series s) const { return eq[static_cast<int>(s)]; }
};

// Calendar, bases and design shared by estimation and inference.
struct FitWorkspace {
  DayGroupCalendar calendar;
  BasisMatrix basis[kNumSeries];
  DesignSystem design;
};

// Builds the workspace for an already standardized panel.
FitWorkspace build_workspace(const HourlyPanel& panel, const HolidayCalendar& holidays,
                             const FitConfig& cfg);

// Full estimation: standardize, build the design, then alternate weighted
// lasso passes on the mean equations with nonnegative absolute-residual
// regressions for the variance until the fitted sigma stabilizes.
ModelFit fit_model(const HourlyPanel& panel, const HolidayCalendar& holidays,
                   const FitConfig& cfg = {});
// Same on a prebuilt workspace whose panel is already standardized.
ModelFit fit_model(const HourlyPanel& panel, const FitWorkspace& ws, const FitConfig& cfg = {});

// One weighted-lasso pass with AIC knot selection. exempt marks unpenalized
// constant columns (the intercept); an empty weights vector is unweighted.
LassoFit weighted_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& weights, const std::vector<std::uint8_t>& exempt);

struct TestResult {
  double estimate = 0.0;
  double se = 0.0;
  double tstat = 0.0;
  double pvalue = 1.0;
};

// Two-sided normal p-value.
inline double normal_pvalue(double t) { return std::erfc(std::abs(t) / std::sqrt(2.0)); }

// Plug-in standard errors of the mean-equation coefficients (sandwich on
// the active set); NaN for inactive coefficients.
Eigen::VectorXd coefficient_se(const ModelFit& m, const FitWorkspace& ws, Series i);

// H0: the plain lag coefficients of `source` in the price equation sum to
// zero (long-run impact).
TestResult test_longrun(const ModelFit& m, const FitWorkspace& ws, Series source);

// H0: sum over the first k lags of (alpha+ - alpha-) is zero. k <= 0 uses
// all lags; larger k cut nothing off, they are not re-estimated.
TestResult test_leverage(const ModelFit& m, const FitWorkspace& ws, Series i, int k = 0);

// The same test over a grid of cutoffs, sharing one covariance evaluation.
std::vector<TestResult> leverage_curve(const ModelFit& m, const FitWorkspace& ws, Series i,
                                       const std::vector<int>& cutoffs);

// Rescales a standardized long-run estimate to EUR/MWh per GWh of `source`.
TestResult effect_in_units(const ModelFit& m, const TestResult& longrun, Series source);

// Price drift in EUR/MWh per year implied by the trend coefficient.
TestResult trend_effect(const ModelFit& m, const FitWorkspace& ws);

// Fitted absolute-residual scale split into its deterministic part and the
// contributions of past positive and negative residuals, all divided by
// gamma so the three parts sum to sigma.
struct SigmaDecomposition {
  Eigen::VectorXd deterministic;
  Eigen::VectorXd positive;
  Eigen::VectorXd negative;
  std::int64_t row_offset = 0;  // rows skipped at the start of the residual range
};
SigmaDecomposition decompose_sigma(const ModelFit& m, const FitWorkspace& ws, Series i);

// Residuals over their estimated sd, one column per series.
Eigen::MatrixXd standardized_residuals(const ModelFit& m);

// acf[k](i, j) = corr(M(t, i), M(t - k, j)) for k = 0..max_lag.
std::vector<Eigen::Matrix3d> cross_acf(const Eigen::MatrixXd& M, int max_lag);

}  // namespace spotcast

#endif  // SPOTCAST_ESTIMATOR_HPP_
