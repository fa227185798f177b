#ifndef SPOTCAST_DESIGN_HPP_
#define SPOTCAST_DESIGN_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spotcast/basis.hpp"
#include "spotcast/lagspec.hpp"
#include "spotcast/panel.hpp"

namespace spotcast {

enum class ColumnKind { Intercept, Trend, Basis, Lag, Periodic };

// One regressor of the mean equation. Basis columns reference the
// per-equation basis matrix by index; periodic columns multiply the own
// lagged series with a basis column.
struct ColumnSpec {
  ColumnKind kind = ColumnKind::Intercept;
  Series source = Series::Price;  // for Lag and Periodic
  int lag = 0;
  int basis_index = -1;

  std::string label(Series equation) const;
};

// Column layout of equation i: intercept, scaled trend, basis block, lagged
// sources ordered price/load/renewables, then the periodic interactions.
std::vector<ColumnSpec> equation_columns(Series i, const LagSpec& lags, int basis_cols);

// Affine time map used by the trend column; kept with the model so that
// forecasting extends the same line.
struct TrendScale {
  double denom = 1.0;
  double at(double t) const { return t / denom; }
};

struct EquationDesign {
  Series equation = Series::Price;
  std::vector<ColumnSpec> columns;
  Eigen::MatrixXd X;  // (n - t_min) x p
  Eigen::VectorXd y;
  std::int64_t t_min = 0;  // panel position of the first row
  TrendScale trend;

  Eigen::Index p() const { return X.cols(); }
  Eigen::Index rows() const { return X.rows(); }
};

struct DesignSystem {
  EquationDesign eq[kNumSeries];
  std::int64_t t_min = 0;
  // Reference parameter counts as printed in the source summary table; the
  // constructive counts are X.cols(). Reported side by side in diagnostics.
  static constexpr int kReferenceParamCount[kNumSeries] = {1033, 664, 578};
  static constexpr int kReferenceTarchParamCount[kNumSeries] = {402, 402, 397};
};

// Evaluates a single regressor at panel position t. series(s, t) must return
// the (possibly forecast) value of series s at position t; basis_row is the
// equation's basis matrix row at t.
template <typename SeriesFn, typename BasisRow>
double eval_column(const ColumnSpec& c, double t, const TrendScale& trend, SeriesFn&& series,
                   BasisRow&& basis_row) {
  switch (c.kind) {
    case ColumnKind::Intercept: return 1.0;
    case ColumnKind::Trend: return trend.at(t);
    case ColumnKind::Basis: return basis_row(c.basis_index);
    case ColumnKind::Lag: return series(c.source, t - c.lag);
    case ColumnKind::Periodic: return series(c.source, t - c.lag) * basis_row(c.basis_index);
  }
  return 0.0;
}

// Builds the three mean-equation systems on a shared time index starting at
// 1 + max lag. The panel must be standardized and the bases aligned to it.
DesignSystem build_design(const HourlyPanel& panel, const BasisMatrix basis[kNumSeries],
                          const LagSpec& lags);

// Column standardization stats; intercept (and other exempt constants) keep
// scale 1 / mean 0 and are handled through response centering.
struct ColumnStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;
  std::vector<std::uint8_t> exempt;
  std::vector<int> dropped;  // zero-variance non-intercept columns
};

// Standardizes columns in place to zero mean / unit sample variance.
// Constant non-intercept columns are zeroed out and reported in dropped.
ColumnStats standardize_columns(Eigen::MatrixXd& X, const std::vector<std::uint8_t>& exempt);

// TARCH regressor layout: intercept + basis block (no trend), then the
// positive- and negative-part lags interleaved per lag.
struct TarchColumnSpec {
  enum class Kind { Intercept, Basis, PosLag, NegLag } kind = Kind::Intercept;
  int lag = 0;
  int basis_index = -1;

  std::string label() const;
};

std::vector<TarchColumnSpec> tarch_columns(const std::vector<int>& tarch_lags, int basis_cols);

struct TarchDesign {
  std::vector<TarchColumnSpec> columns;
  Eigen::MatrixXd X;
  Eigen::VectorXd y;          // |residual|
  std::int64_t row_offset = 0;  // rows start this many steps after the residual start
};

// Builds the absolute-residual regression for one equation. residuals are
// aligned with the mean-design rows; residual_t_min is their panel position.
TarchDesign build_tarch_design(const Eigen::VectorXd& residuals, std::int64_t residual_t_min,
                               const BasisMatrix& basis, const std::vector<int>& tarch_lags);

}  // namespace spotcast

#endif  // SPOTCAST_DESIGN_HPP_
