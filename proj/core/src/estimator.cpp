#include "spotcast/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spotcast/errors.hpp"
#include "spotcast/lars.hpp"
#include "spotcast/nnls.hpp"

namespace spotcast {

namespace {

double sample_sd(const Eigen::VectorXd& v) {
  if (v.size() < 2) return 0.0;
  const double m = v.mean();
  return std::sqrt((v.array() - m).square().sum() / static_cast<double>(v.size() - 1));
}

std::vector<std::uint8_t> intercept_exempt(const std::vector<ColumnSpec>& cols) {
  std::vector<std::uint8_t> e(cols.size(), 0);
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (cols[j].kind == ColumnKind::Intercept) e[j] = 1;
  return e;
}

}  // namespace

FitWorkspace build_workspace(const HourlyPanel& panel, const HolidayCalendar& holidays,
                             const FitConfig& cfg) {
  FitWorkspace ws;
  ws.calendar = classify_hours(panel.timestamps, holidays, cfg.classify);
  for (int i = 0; i < kNumSeries; ++i)
    ws.basis[i] = equation_basis(static_cast<Series>(i), ws.calendar, cfg.basis);
  ws.design = build_design(panel, ws.basis, cfg.lags);
  return ws;
}

LassoFit weighted_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& weights, const std::vector<std::uint8_t>& exempt) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (n < 2) throw SampleTooShort("lasso: need at least two rows");

  const bool weighted = weights.size() > 0;
  const double wsum = weighted ? weights.sum() : static_cast<double>(n);

  auto wmean = [&](const auto& col) {
    return weighted ? col.cwiseProduct(weights).sum() / wsum : col.mean();
  };

  // Profile out the intercept: weighted-center the response and the
  // penalized columns, and put the latter on unit scale for the penalty.
  const double ybar = wmean(y);
  const Eigen::VectorXd yc = y.array() - ybar;

  std::vector<int> pen;          // penalized original columns
  std::vector<double> mean, scale;
  pen.reserve(static_cast<std::size_t>(p));
  for (Eigen::Index j = 0; j < p; ++j) {
    if (j < static_cast<Eigen::Index>(exempt.size()) && exempt[static_cast<std::size_t>(j)])
      continue;
    const double m = wmean(X.col(j));
    const Eigen::ArrayXd centered = X.col(j).array() - m;
    const double var = weighted ? (centered.square() * weights.array()).sum() / wsum
                                : centered.square().sum() / static_cast<double>(n);
    if (var <= 1e-12 * (m * m + 1.0)) continue;  // constant column, unusable
    pen.push_back(static_cast<int>(j));
    mean.push_back(m);
    scale.push_back(std::sqrt(var));
  }

  Eigen::MatrixXd Xp(n, static_cast<Eigen::Index>(pen.size()));
  for (std::size_t a = 0; a < pen.size(); ++a)
    Xp.col(static_cast<Eigen::Index>(a)) = (X.col(pen[a]).array() - mean[a]) / scale[a];

  const LassoPath path = lars_lasso(Xp, yc, weighted ? weights : Eigen::VectorXd());
  const std::size_t k = select_aic(path);
  const auto& bp = path.breakpoints[k];

  LassoFit fit;
  fit.theta = Eigen::VectorXd::Zero(p);
  for (const auto& [a, v] : bp.theta)
    fit.theta(pen[static_cast<std::size_t>(a)]) = v / scale[static_cast<std::size_t>(a)];

  double icpt = ybar;
  for (std::size_t a = 0; a < pen.size(); ++a) icpt -= fit.theta(pen[a]) * mean[a];
  for (Eigen::Index j = 0; j < p; ++j) {
    if (j < static_cast<Eigen::Index>(exempt.size()) && exempt[static_cast<std::size_t>(j)]) {
      fit.theta(j) = icpt;
      break;
    }
  }

  fit.lambda = bp.lambda;
  fit.rss = bp.rss;
  fit.df = bp.df;
  fit.aic = aic_of(bp, n);
  return fit;
}

namespace {

// Fits the absolute-residual regression of one equation and expands it into
// a per-row sigma estimate.
TarchFit fit_tarch(const Eigen::VectorXd& residuals, std::int64_t t_min, const BasisMatrix& basis,
                   const std::vector<int>& tarch_lags, double sigma_floor_rel,
                   Eigen::VectorXd* sigma_out) {
  TarchDesign td = build_tarch_design(residuals, t_min, basis, tarch_lags);
  const NnlsSolution sol = nnls(td.X, td.y);

  TarchFit fit;
  fit.columns = std::move(td.columns);
  fit.alpha = sol.beta;
  fit.active = sol.active;
  fit.row_offset = td.row_offset;

  const Eigen::Index n_d = residuals.size();
  Eigen::VectorXd fitted = td.X * sol.beta;
  const double res_sd = sample_sd(residuals);
  const double tilde_floor = std::max(1e-8 * res_sd, 1e-12);
  fitted = fitted.cwiseMax(tilde_floor);

  Eigen::VectorXd sigma_tilde(n_d);
  sigma_tilde.head(td.row_offset).setConstant(std::max(fitted.mean(), tilde_floor));
  sigma_tilde.tail(fitted.size()) = fitted;

  // Plug-in scale: the standardized residuals over the absolute-value fit
  // have variance gamma^{-2}.
  const Eigen::VectorXd kappa =
      residuals.tail(fitted.size()).array() / fitted.array();
  const double kappa_sd = sample_sd(kappa);
  fit.gamma = (std::isfinite(kappa_sd) && kappa_sd > 0.0) ? 1.0 / kappa_sd : kGaussianAbsMoment;

  *sigma_out = (sigma_tilde / fit.gamma).cwiseMax(sigma_floor_rel * res_sd);
  return fit;
}

}  // namespace

ModelFit fit_model(const HourlyPanel& panel, const FitWorkspace& ws, const FitConfig& cfg) {
  if (!panel.standardized) throw Error("fit: panel must be standardized");
  const DesignSystem& ds = ws.design;

  ModelFit m;
  m.config = cfg;
  m.start = panel.timestamps.front();
  m.n = panel.n();
  m.stats = panel.stats;
  m.trend = ds.eq[0].trend;
  m.t_min = ds.t_min;

  std::vector<std::uint8_t> exempt[kNumSeries];
  Eigen::VectorXd weights[kNumSeries];
  Eigen::VectorXd prev_sigma[kNumSeries];
  for (int i = 0; i < kNumSeries; ++i) {
    m.eq[i].equation = static_cast<Series>(i);
    m.eq[i].columns = ds.eq[i].columns;
    exempt[i] = intercept_exempt(ds.eq[i].columns);
  }

  const int passes = std::max(cfg.max_iterations, 1);
  for (int K = 1; K <= passes; ++K) {
    IterationTrace::Step step{};
    step.iteration = K;

    for (int i = 0; i < kNumSeries; ++i) {
      EquationFit& eq = m.eq[i];
      const LassoFit lf = weighted_lasso(ds.eq[i].X, ds.eq[i].y, weights[i], exempt[i]);
      eq.theta = lf.theta;
      if (K == 1) eq.theta_first = lf.theta;
      eq.lambda = lf.lambda;
      eq.aic = lf.aic;
      eq.df = lf.df;
      eq.residuals = ds.eq[i].y - ds.eq[i].X * lf.theta;
      step.lambda[i] = lf.lambda;
      step.aic[i] = lf.aic;
      step.df[i] = lf.df;
    }

    if (!cfg.tarch) {
      for (int i = 0; i < kNumSeries; ++i) {
        EquationFit& eq = m.eq[i];
        eq.sigma = Eigen::VectorXd::Constant(eq.residuals.size(), sample_sd(eq.residuals));
        step.delta[i] = std::numeric_limits<double>::quiet_NaN();
        step.gamma[i] = std::numeric_limits<double>::quiet_NaN();
      }
      m.trace.steps.push_back(step);
      m.trace.converged = true;
      break;
    }

    double max_delta = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < kNumSeries; ++i) {
      EquationFit& eq = m.eq[i];
      eq.tarch = fit_tarch(eq.residuals, m.t_min, ws.basis[i], cfg.lags.tarch_lags[i],
                           cfg.sigma_floor_rel, &eq.sigma);
      step.gamma[i] = eq.tarch.gamma;
      if (K > 1) {
        step.delta[i] =
            (eq.sigma - prev_sigma[i]).cwiseAbs().mean();
        max_delta = std::isnan(max_delta) ? step.delta[i] : std::max(max_delta, step.delta[i]);
      } else {
        step.delta[i] = std::numeric_limits<double>::quiet_NaN();
      }
      prev_sigma[i] = eq.sigma;
      weights[i] = eq.sigma.array().square().inverse();
    }
    m.trace.steps.push_back(step);
    if (K > 1 && max_delta < cfg.epsilon) {
      m.trace.converged = true;
      break;
    }
  }
  return m;
}

ModelFit fit_model(const HourlyPanel& panel, const HolidayCalendar& holidays,
                   const FitConfig& cfg) {
  if (panel.standardized) {
    return fit_model(panel, build_workspace(panel, holidays, cfg), cfg);
  }
  const HourlyPanel std_panel = standardize(panel);
  return fit_model(std_panel, build_workspace(std_panel, holidays, cfg), cfg);
}

namespace {

// Sandwich covariance of the coefficients indexed by `active`:
//   (X_A'X_A)^{-1} X_A' diag(v2) X_A (X_A'X_A)^{-1}.
Eigen::MatrixXd active_sandwich(const Eigen::MatrixXd& X, const std::vector<int>& active,
                                const Eigen::VectorXd& v2) {
  const Eigen::Index k = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd Xa(X.rows(), k);
  for (Eigen::Index a = 0; a < k; ++a) Xa.col(a) = X.col(active[static_cast<std::size_t>(a)]);
  const Eigen::MatrixXd G = Xa.transpose() * Xa;
  const Eigen::MatrixXd M = Xa.transpose() * v2.asDiagonal() * Xa;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success) throw RankCollapse("inference: singular active Gram matrix");
  return ldlt.solve(ldlt.solve(M).transpose());
}

std::vector<int> nonzero_columns(const Eigen::VectorXd& theta) {
  std::vector<int> a;
  for (Eigen::Index j = 0; j < theta.size(); ++j)
    if (theta(j) != 0.0) a.push_back(static_cast<int>(j));
  return a;
}

TestResult make_test(double estimate, double var) {
  TestResult r;
  r.estimate = estimate;
  r.se = var > 0.0 ? std::sqrt(var) : 0.0;
  r.tstat = r.se > 0.0 ? estimate / r.se : 0.0;
  r.pvalue = r.se > 0.0 ? normal_pvalue(r.tstat) : 1.0;
  return r;
}

}  // namespace

Eigen::VectorXd coefficient_se(const ModelFit& m, const FitWorkspace& ws, Series i) {
  const EquationFit& eq = m.equation(i);
  const Eigen::MatrixXd& X = ws.design.eq[static_cast<int>(i)].X;
  const std::vector<int> active = nonzero_columns(eq.theta);
  Eigen::VectorXd se =
      Eigen::VectorXd::Constant(eq.theta.size(), std::numeric_limits<double>::quiet_NaN());
  if (active.empty()) return se;
  const Eigen::MatrixXd cov = active_sandwich(X, active, eq.sigma.array().square());
  for (std::size_t a = 0; a < active.size(); ++a)
    se(active[a]) = std::sqrt(std::max(cov(static_cast<Eigen::Index>(a),
                                           static_cast<Eigen::Index>(a)),
                                       0.0));
  return se;
}

TestResult test_longrun(const ModelFit& m, const FitWorkspace& ws, Series source) {
  const EquationFit& eq = m.equation(Series::Price);
  const Eigen::MatrixXd& X = ws.design.eq[0].X;
  const std::vector<int> active = nonzero_columns(eq.theta);

  double estimate = 0.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(active.size()));
  for (std::size_t a = 0; a < active.size(); ++a) {
    const ColumnSpec& col = eq.columns[static_cast<std::size_t>(active[a])];
    if (col.kind == ColumnKind::Lag && col.source == source) {
      c(static_cast<Eigen::Index>(a)) = 1.0;
      estimate += eq.theta(active[a]);
    }
  }
  const Eigen::MatrixXd cov = active_sandwich(X, active, eq.sigma.array().square());
  return make_test(estimate, c.dot(cov * c));
}

std::vector<TestResult> leverage_curve(const ModelFit& m, const FitWorkspace& ws, Series i,
                                       const std::vector<int>& cutoffs) {
  const EquationFit& eq = m.equation(i);
  const TarchFit& tf = eq.tarch;
  if (tf.alpha.size() == 0) throw Error("leverage test: no fitted variance part");

  TarchDesign td = build_tarch_design(eq.residuals, m.t_min, ws.basis[static_cast<int>(i)],
                                      m.config.lags.tarch_lags[static_cast<int>(i)]);
  const Eigen::VectorXd v = td.y - td.X * tf.alpha;
  const Eigen::MatrixXd cov = active_sandwich(td.X, tf.active, v.array().square());

  std::vector<TestResult> out;
  out.reserve(cutoffs.size());
  for (int k : cutoffs) {
    double estimate = 0.0;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(tf.active.size()));
    for (std::size_t a = 0; a < tf.active.size(); ++a) {
      const TarchColumnSpec& col = tf.columns[static_cast<std::size_t>(tf.active[a])];
      if (k > 0 && col.lag > k) continue;
      double s = 0.0;
      if (col.kind == TarchColumnSpec::Kind::PosLag) s = 1.0;
      if (col.kind == TarchColumnSpec::Kind::NegLag) s = -1.0;
      if (s == 0.0) continue;
      c(static_cast<Eigen::Index>(a)) = s;
      estimate += s * tf.alpha(tf.active[a]);
    }
    out.push_back(make_test(estimate, c.dot(cov * c)));
  }
  return out;
}

TestResult test_leverage(const ModelFit& m, const FitWorkspace& ws, Series i, int k) {
  return leverage_curve(m, ws, i, {k}).front();
}

TestResult effect_in_units(const ModelFit& m, const TestResult& longrun, Series source) {
  // Standardized coefficients relate sd units; MW sources are reported per
  // GWh, hence the factor 1000.
  const double f = m.stats[0].sd / m.stats[static_cast<int>(source)].sd * 1000.0;
  TestResult r = longrun;
  r.estimate *= f;
  r.se *= f;
  return r;
}

TestResult trend_effect(const ModelFit& m, const FitWorkspace& ws) {
  const EquationFit& eq = m.equation(Series::Price);
  int trend_col = -1;
  for (std::size_t j = 0; j < eq.columns.size(); ++j)
    if (eq.columns[j].kind == ColumnKind::Trend) trend_col = static_cast<int>(j);
  if (trend_col < 0) throw Error("trend effect: no trend column");

  // theta applies to t / denom; convert to EUR/MWh per year.
  const double per_year = m.config.basis.annual_period / m.trend.denom * m.stats[0].sd;
  const Eigen::VectorXd se = coefficient_se(m, ws, Series::Price);
  TestResult r;
  r.estimate = eq.theta(trend_col) * per_year;
  const double s = se(trend_col);
  r.se = std::isfinite(s) ? s * per_year : 0.0;
  r.tstat = r.se > 0.0 ? r.estimate / r.se : 0.0;
  r.pvalue = r.se > 0.0 ? normal_pvalue(r.tstat) : 1.0;
  return r;
}

SigmaDecomposition decompose_sigma(const ModelFit& m, const FitWorkspace& ws, Series i) {
  const EquationFit& eq = m.equation(i);
  const TarchFit& tf = eq.tarch;
  if (tf.alpha.size() == 0) throw Error("sigma decomposition: no fitted variance part");

  TarchDesign td = build_tarch_design(eq.residuals, m.t_min, ws.basis[static_cast<int>(i)],
                                      m.config.lags.tarch_lags[static_cast<int>(i)]);
  SigmaDecomposition out;
  out.row_offset = td.row_offset;
  const Eigen::Index n = td.X.rows();
  out.deterministic = Eigen::VectorXd::Zero(n);
  out.positive = Eigen::VectorXd::Zero(n);
  out.negative = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < td.X.cols(); ++j) {
    const double a = tf.alpha(j);
    if (a == 0.0) continue;
    switch (td.columns[static_cast<std::size_t>(j)].kind) {
      case TarchColumnSpec::Kind::PosLag: out.positive += a * td.X.col(j); break;
      case TarchColumnSpec::Kind::NegLag: out.negative += a * td.X.col(j); break;
      default: out.deterministic += a * td.X.col(j); break;
    }
  }
  out.deterministic /= tf.gamma;
  out.positive /= tf.gamma;
  out.negative /= tf.gamma;
  return out;
}

Eigen::MatrixXd standardized_residuals(const ModelFit& m) {
  const Eigen::Index n = m.eq[0].residuals.size();
  Eigen::MatrixXd Z(n, kNumSeries);
  for (int i = 0; i < kNumSeries; ++i)
    Z.col(i) = m.eq[i].residuals.array() / m.eq[i].sigma.array();
  return Z;
}

std::vector<Eigen::Matrix3d> cross_acf(const Eigen::MatrixXd& M, int max_lag) {
  const Eigen::Index n = M.rows();
  if (n <= max_lag) throw SampleTooShort("acf: lag exceeds sample");
  const Eigen::RowVectorXd mean = M.colwise().mean();
  const Eigen::MatrixXd C = M.rowwise() - mean;
  Eigen::Vector3d sd;
  for (int i = 0; i < kNumSeries; ++i)
    sd(i) = std::sqrt(C.col(i).squaredNorm() / static_cast<double>(n));

  std::vector<Eigen::Matrix3d> acf(static_cast<std::size_t>(max_lag) + 1);
  for (int k = 0; k <= max_lag; ++k) {
    Eigen::Matrix3d a;
    for (int i = 0; i < kNumSeries; ++i)
      for (int j = 0; j < kNumSeries; ++j) {
        const double cov =
            C.col(i).tail(n - k).dot(C.col(j).head(n - k)) / static_cast<double>(n);
        a(i, j) = cov / (sd(i) * sd(j));
      }
    acf[static_cast<std::size_t>(k)] = a;
  }
  return acf;
}

}  // namespace spotcast
