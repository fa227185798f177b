#include "spotcast/design.hpp"

#include <cmath>

#include "spotcast/errors.hpp"

namespace spotcast {

namespace {

const char* series_tag(Series s) {
  switch (s) {
    case Series::Price: return "P";
    case Series::Load: return "L";
    default: return "R";
  }
}

LagSpec make_paper_default() {
  LagSpec s;
  auto weekly_pairs = lag_range(1, 361);
  for (int k : {504, 505, 672, 673, 840, 841, 1008, 1009}) weekly_pairs.push_back(k);
  const int P = 0, L = 1, R = 2;
  s.lag_sets[P][P] = weekly_pairs;
  s.lag_sets[L][L] = weekly_pairs;
  s.lag_sets[P][L] = weekly_pairs;
  s.lag_sets[P][R] = lag_range(1, 49);
  s.lag_sets[L][R] = lag_range(1, 49);
  s.lag_sets[R][R] = lag_range(1, 361);
  s.periodic_lags[P] = {1, 2, 24, 25, 168, 169};
  s.periodic_lags[L] = {1, 2, 24, 25, 168, 169};
  s.periodic_lags[R] = {1, 2, 23, 24, 25};
  auto tarch_pl = lag_range(1, 361);
  for (int k : {504, 505, 672, 673, 840, 841}) tarch_pl.push_back(k);
  s.tarch_lags[P] = tarch_pl;
  s.tarch_lags[L] = tarch_pl;
  s.tarch_lags[R] = lag_range(1, 361);
  return s;
}

LagSpec make_toy() {
  LagSpec s;
  const int P = 0, L = 1, R = 2;
  s.lag_sets[P][P] = {1, 2, 3, 24, 25, 168};
  s.lag_sets[L][L] = {1, 2, 3, 24, 25, 168};
  s.lag_sets[P][L] = {1, 2, 24};
  s.lag_sets[P][R] = {1, 2, 24};
  s.lag_sets[L][R] = {1, 2};
  s.lag_sets[R][R] = {1, 2, 24, 25};
  s.periodic_lags[P] = {1, 24};
  s.periodic_lags[L] = {1};
  s.periodic_lags[R] = {1};
  s.tarch_lags[P] = {1, 2, 24};
  s.tarch_lags[L] = {1, 2, 24};
  s.tarch_lags[R] = {1, 2, 24};
  return s;
}

}  // namespace

LagSpec LagSpec::paper_default() { return make_paper_default(); }
LagSpec LagSpec::toy() { return make_toy(); }

std::string ColumnSpec::label(Series equation) const {
  switch (kind) {
    case ColumnKind::Intercept: return "intercept";
    case ColumnKind::Trend: return "trend";
    case ColumnKind::Basis:
      return std::string("basis:") + series_tag(equation) + ":" + std::to_string(basis_index);
    case ColumnKind::Lag:
      return std::string("lag:") + series_tag(source) + ":" + std::to_string(lag);
    case ColumnKind::Periodic:
      return std::string("periodic:") + series_tag(source) + ":" + std::to_string(lag) + ":b" +
             std::to_string(basis_index);
  }
  return {};
}

std::vector<ColumnSpec> equation_columns(Series i, const LagSpec& lags, int basis_cols) {
  std::vector<ColumnSpec> cols;
  cols.push_back({ColumnKind::Intercept});
  cols.push_back({ColumnKind::Trend});
  for (int b = 0; b < basis_cols; ++b) cols.push_back({ColumnKind::Basis, i, 0, b});
  const int ii = static_cast<int>(i);
  for (int j = 0; j < kNumSeries; ++j) {
    for (int k : lags.lag_sets[ii][j]) {
      cols.push_back({ColumnKind::Lag, static_cast<Series>(j), k, -1});
    }
  }
  for (int k : lags.periodic_lags[ii]) {
    for (int b = 0; b < basis_cols; ++b) {
      cols.push_back({ColumnKind::Periodic, i, k, b});
    }
  }
  return cols;
}

DesignSystem build_design(const HourlyPanel& panel, const BasisMatrix basis[kNumSeries],
                          const LagSpec& lags) {
  const std::int64_t n = static_cast<std::int64_t>(panel.n());
  const std::int64_t t_min = lags.max_lag();
  if (n <= t_min + 1) throw SampleTooShort("panel shorter than the maximum lag");

  DesignSystem sys;
  sys.t_min = t_min;
  for (int i = 0; i < kNumSeries; ++i) {
    EquationDesign& d = sys.eq[i];
    d.equation = static_cast<Series>(i);
    d.t_min = t_min;
    d.trend.denom = static_cast<double>(n - 1);
    d.columns = equation_columns(d.equation, lags, static_cast<int>(basis[i].cols()));
    const std::int64_t rows = n - t_min;
    d.X.resize(rows, static_cast<Eigen::Index>(d.columns.size()));
    d.y.resize(rows);
    const std::vector<double>& own = panel.series(d.equation);
    auto series = [&](Series s, double t) {
      return panel.series(s)[static_cast<std::size_t>(t)];
    };
    for (std::int64_t r = 0; r < rows; ++r) {
      const std::int64_t t = t_min + r;
      auto basis_row = [&](int b) { return basis[i].values(t, b); };
      for (std::size_t c = 0; c < d.columns.size(); ++c) {
        d.X(r, static_cast<Eigen::Index>(c)) =
            eval_column(d.columns[c], static_cast<double>(t), d.trend, series, basis_row);
      }
      d.y(r) = own[static_cast<std::size_t>(t)];
    }
  }
  return sys;
}

ColumnStats standardize_columns(Eigen::MatrixXd& X, const std::vector<std::uint8_t>& exempt) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  ColumnStats stats;
  stats.mean = Eigen::VectorXd::Zero(p);
  stats.scale = Eigen::VectorXd::Ones(p);
  stats.exempt.assign(static_cast<std::size_t>(p), 0);
  for (Eigen::Index j = 0; j < p; ++j) {
    if (j < static_cast<Eigen::Index>(exempt.size()) && exempt[static_cast<std::size_t>(j)]) {
      stats.exempt[static_cast<std::size_t>(j)] = 1;
      continue;
    }
    const double mean = X.col(j).mean();
    const double ss = (X.col(j).array() - mean).square().sum();
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    stats.mean(j) = mean;
    if (sd > 0.0) {
      stats.scale(j) = sd;
      X.col(j) = (X.col(j).array() - mean) / sd;
    } else {
      stats.scale(j) = 0.0;
      X.col(j).setZero();
      stats.dropped.push_back(static_cast<int>(j));
    }
  }
  return stats;
}

std::string TarchColumnSpec::label() const {
  switch (kind) {
    case Kind::Intercept: return "alpha0:intercept";
    case Kind::Basis: return "alpha0:b" + std::to_string(basis_index);
    case Kind::PosLag: return "pos:" + std::to_string(lag);
    case Kind::NegLag: return "neg:" + std::to_string(lag);
  }
  return {};
}

std::vector<TarchColumnSpec> tarch_columns(const std::vector<int>& tarch_lags, int basis_cols) {
  std::vector<TarchColumnSpec> cols;
  cols.push_back({TarchColumnSpec::Kind::Intercept});
  for (int b = 0; b < basis_cols; ++b) cols.push_back({TarchColumnSpec::Kind::Basis, 0, b});
  for (int k : tarch_lags) {
    cols.push_back({TarchColumnSpec::Kind::PosLag, k, -1});
    cols.push_back({TarchColumnSpec::Kind::NegLag, k, -1});
  }
  return cols;
}

TarchDesign build_tarch_design(const Eigen::VectorXd& residuals, std::int64_t residual_t_min,
                               const BasisMatrix& basis, const std::vector<int>& tarch_lags) {
  std::int64_t max_lag = 0;
  for (int k : tarch_lags) max_lag = std::max<std::int64_t>(max_lag, k);
  const std::int64_t nres = residuals.size();
  if (nres <= max_lag + 1) throw SampleTooShort("residual sample shorter than the TARCH lags");

  TarchDesign d;
  d.columns = tarch_columns(tarch_lags, static_cast<int>(basis.cols()));
  d.row_offset = max_lag;
  const std::int64_t rows = nres - max_lag;
  d.X.resize(rows, static_cast<Eigen::Index>(d.columns.size()));
  d.y.resize(rows);
  for (std::int64_t r = 0; r < rows; ++r) {
    const std::int64_t ri = max_lag + r;            // index into residuals
    const std::int64_t t = residual_t_min + ri;     // panel position
    d.y(r) = std::abs(residuals(ri));
    for (std::size_t c = 0; c < d.columns.size(); ++c) {
      const TarchColumnSpec& spec = d.columns[c];
      double v = 0.0;
      switch (spec.kind) {
        case TarchColumnSpec::Kind::Intercept: v = 1.0; break;
        case TarchColumnSpec::Kind::Basis: v = basis.values(t, spec.basis_index); break;
        case TarchColumnSpec::Kind::PosLag: v = std::max(residuals(ri - spec.lag), 0.0); break;
        case TarchColumnSpec::Kind::NegLag: v = std::max(-residuals(ri - spec.lag), 0.0); break;
      }
      d.X(r, static_cast<Eigen::Index>(c)) = v;
    }
  }
  return d;
}

}  // namespace spotcast
