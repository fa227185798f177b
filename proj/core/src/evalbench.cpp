#include "spotcast/evalbench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spotcast/errors.hpp"
#include "spotcast/forecast.hpp"

namespace spotcast {

namespace {

inline std::int64_t week_slot(std::int64_t hour) { return ((hour % 168) + 168) % 168; }

double log_det_spd(const Eigen::MatrixXd& M) {
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
  if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any())
    return -std::numeric_limits<double>::infinity();
  return ldlt.vectorD().array().log().sum();
}

}  // namespace

Eigen::VectorXd persistent_forecast(const Eigen::VectorXd& y, int horizon) {
  if (y.size() < 168) throw SampleTooShort("persistent forecast needs a full week");
  Eigen::VectorXd out(horizon);
  for (int h = 0; h < horizon; ++h) out(h) = y(y.size() - 168 + h % 168);
  return out;
}

Eigen::MatrixXd weekly_slot_mean(const Eigen::MatrixXd& Y, std::int64_t first_hour) {
  if (Y.rows() < 168) throw SampleTooShort("weekly mean needs a full week");
  const Eigen::Index d = Y.cols();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(168, d);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(168);
  for (Eigen::Index t = 0; t < Y.rows(); ++t) {
    const std::int64_t s = week_slot(first_hour + t);
    sum.row(s) += Y.row(t);
    count(s) += 1.0;
  }
  return sum.array().colwise() / count.array();
}

std::vector<Eigen::MatrixXd> autocovariances(const Eigen::MatrixXd& Y, int max_lag) {
  const Eigen::Index n = Y.rows();
  if (n <= max_lag) throw SampleTooShort("autocovariance lag exceeds sample");
  const Eigen::MatrixXd C = Y.rowwise() - Y.colwise().mean();
  std::vector<Eigen::MatrixXd> gamma(static_cast<std::size_t>(max_lag) + 1);
  for (int k = 0; k <= max_lag; ++k)
    gamma[static_cast<std::size_t>(k)] =
        C.bottomRows(n - k).transpose() * C.topRows(n - k) / static_cast<double>(n);
  return gamma;
}

std::vector<Eigen::MatrixXd> yule_walker_direct(const std::vector<Eigen::MatrixXd>& gamma,
                                                int order) {
  const Eigen::Index d = gamma.at(0).rows();
  auto G = [&](int k) -> Eigen::MatrixXd {
    if (k >= 0) return gamma.at(static_cast<std::size_t>(k));
    return gamma.at(static_cast<std::size_t>(-k)).transpose();
  };
  // Gamma(j) = sum_k A_k Gamma(j - k); transpose and stack over j = 1..p.
  Eigen::MatrixXd M(order * d, order * d);
  Eigen::MatrixXd rhs(order * d, d);
  for (int j = 1; j <= order; ++j) {
    rhs.middleRows((j - 1) * d, d) = G(j).transpose();
    for (int k = 1; k <= order; ++k)
      M.block((j - 1) * d, (k - 1) * d, d, d) = G(j - k).transpose();
  }
  const Eigen::MatrixXd At = M.fullPivLu().solve(rhs);  // stacked A_k'
  std::vector<Eigen::MatrixXd> A(static_cast<std::size_t>(order));
  for (int k = 1; k <= order; ++k)
    A[static_cast<std::size_t>(k - 1)] = At.middleRows((k - 1) * d, d).transpose();
  return A;
}

ArModel fit_mean_adjusted_ar(const Eigen::MatrixXd& Y, std::int64_t first_hour, int p_max) {
  const Eigen::Index n = Y.rows();
  const Eigen::Index d = Y.cols();
  if (n <= p_max + 1) throw SampleTooShort("order cap exceeds sample");

  ArModel model;
  model.weekly_mean = weekly_slot_mean(Y, first_hour);
  Eigen::MatrixXd X = Y;
  for (Eigen::Index t = 0; t < n; ++t)
    X.row(t) -= model.weekly_mean.row(week_slot(first_hour + t));

  const std::vector<Eigen::MatrixXd> gamma = autocovariances(X, p_max);

  // Multichannel Levinson recursion on the Yule-Walker equations, keeping
  // the AIC-best order as it goes.
  Eigen::MatrixXd vf = gamma[0];
  Eigen::MatrixXd vb = gamma[0];
  std::vector<Eigen::MatrixXd> A, B;
  model.order = 0;
  model.noise = vf;
  model.aic = static_cast<double>(n) * log_det_spd(vf);

  for (int m = 1; m <= p_max; ++m) {
    Eigen::MatrixXd delta = gamma[static_cast<std::size_t>(m)];
    for (int k = 1; k < m; ++k)
      delta -= A[static_cast<std::size_t>(k - 1)] * gamma[static_cast<std::size_t>(m - k)];

    const Eigen::MatrixXd kf = vb.ldlt().solve(delta.transpose()).transpose();
    const Eigen::MatrixXd kb = vf.ldlt().solve(delta).transpose();

    std::vector<Eigen::MatrixXd> A2(static_cast<std::size_t>(m)), B2(static_cast<std::size_t>(m));
    A2[static_cast<std::size_t>(m - 1)] = kf;
    B2[static_cast<std::size_t>(m - 1)] = kb;
    for (int k = 1; k < m; ++k) {
      A2[static_cast<std::size_t>(k - 1)] =
          A[static_cast<std::size_t>(k - 1)] - kf * B[static_cast<std::size_t>(m - k - 1)];
      B2[static_cast<std::size_t>(k - 1)] =
          B[static_cast<std::size_t>(k - 1)] - kb * A[static_cast<std::size_t>(m - k - 1)];
    }
    A = std::move(A2);
    B = std::move(B2);
    vf -= kf * delta.transpose();
    vb -= kb * delta;

    const double ld = log_det_spd(vf);
    if (!std::isfinite(ld)) break;  // prediction error collapsed
    const double aic = static_cast<double>(n) * ld +
                       2.0 * static_cast<double>(m) * static_cast<double>(d * d);
    if (aic < model.aic) {
      model.aic = aic;
      model.order = m;
      model.phi = A;
      model.noise = vf;
    }
  }
  return model;
}

Eigen::MatrixXd ar_forecast(const ArModel& model, const Eigen::MatrixXd& Y,
                            std::int64_t first_hour, int horizon) {
  const Eigen::Index n = Y.rows();
  const Eigen::Index d = Y.cols();
  if (n < model.order) throw SampleTooShort("forecast history shorter than the order");

  Eigen::MatrixXd X(n + horizon, d);
  for (Eigen::Index t = 0; t < n; ++t)
    X.row(t) = Y.row(t) - model.weekly_mean.row(week_slot(first_hour + t));

  Eigen::MatrixXd out(horizon, d);
  for (int h = 0; h < horizon; ++h) {
    const Eigen::Index t = n + h;
    Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(d);
    for (int k = 1; k <= model.order; ++k)
      x += X.row(t - k) * model.phi[static_cast<std::size_t>(k - 1)].transpose();
    X.row(t) = x;
    out.row(h) = x + model.weekly_mean.row(week_slot(first_hour + t));
  }
  return out;
}

Eigen::VectorXd mmae_from_mae(const Eigen::VectorXd& mae) {
  Eigen::VectorXd out(mae.size());
  double acc = 0.0;
  for (Eigen::Index h = 0; h < mae.size(); ++h) {
    acc += mae(h);
    out(h) = acc / static_cast<double>(h + 1);
  }
  return out;
}

EvalReport rolling_study(const HourlyPanel& panel, const HolidayCalendar& holidays,
                         const RollingOptions& opt) {
  const std::int64_t n = static_cast<std::int64_t>(panel.n());
  if (n < opt.window + opt.horizon) throw SampleTooShort("rolling study: sample too short");

  EvalReport report;
  if (opt.run_model) {
    report.methods.push_back("pvar_tarch");
    report.methods.push_back("pvar");
  }
  if (opt.run_ar) report.methods.push_back("ar");
  if (opt.run_var) report.methods.push_back("var");
  if (opt.run_persistent) report.methods.push_back("persistent");
  for (std::size_t i = 0; i < report.methods.size(); ++i)
    report.mae.push_back(Eigen::VectorXd::Zero(opt.horizon));

  // Origins are chosen so every window ends with the 23h-24h observation.
  std::int64_t l0 = 0;
  while (l0 < n && panel.timestamps[static_cast<std::size_t>(l0 + opt.window - 1)].hour() != 23)
    ++l0;

  for (std::int64_t l = l0; l + opt.window + opt.horizon <= n; l += opt.step) {
    HourlyPanel window;
    window.timestamps.assign(panel.timestamps.begin() + l,
                             panel.timestamps.begin() + l + opt.window);
    window.price.assign(panel.price.begin() + l, panel.price.begin() + l + opt.window);
    window.load.assign(panel.load.begin() + l, panel.load.begin() + l + opt.window);
    window.renewables.assign(panel.renewables.begin() + l,
                             panel.renewables.begin() + l + opt.window);

    Eigen::VectorXd actual(opt.horizon);
    for (int h = 0; h < opt.horizon; ++h)
      actual(h) = panel.price[static_cast<std::size_t>(l + opt.window + h)];

    std::size_t method = 0;
    if (opt.run_model) {
      const HourlyPanel std_window = standardize(window);
      const FitWorkspace ws = build_workspace(std_window, holidays, opt.fit);
      const ModelFit fit = fit_model(std_window, ws, opt.fit);
      const Forecast full = forecast_point(fit, std_window, holidays, opt.horizon, false);
      const Forecast first = forecast_point(fit, std_window, holidays, opt.horizon, true);
      report.mae[method++] += (full.point.col(0) - actual).cwiseAbs();
      report.mae[method++] += (first.point.col(0) - actual).cwiseAbs();
    }
    const std::int64_t first_hour = window.timestamps.front().value;
    if (opt.run_ar) {
      Eigen::MatrixXd Y(opt.window, 1);
      for (std::int64_t t = 0; t < opt.window; ++t)
        Y(t, 0) = window.price[static_cast<std::size_t>(t)];
      const ArModel ar = fit_mean_adjusted_ar(Y, first_hour, opt.ar_pmax);
      report.mae[method++] += (ar_forecast(ar, Y, first_hour, opt.horizon).col(0) - actual)
                                  .cwiseAbs();
    }
    if (opt.run_var) {
      Eigen::MatrixXd Y(opt.window, 2);
      for (std::int64_t t = 0; t < opt.window; ++t) {
        Y(t, 0) = window.price[static_cast<std::size_t>(t)];
        Y(t, 1) = window.load[static_cast<std::size_t>(t)];
      }
      const ArModel var = fit_mean_adjusted_ar(Y, first_hour, opt.var_pmax);
      report.mae[method++] += (ar_forecast(var, Y, first_hour, opt.horizon).col(0) - actual)
                                  .cwiseAbs();
    }
    if (opt.run_persistent) {
      Eigen::VectorXd y(opt.window);
      for (std::int64_t t = 0; t < opt.window; ++t)
        y(t) = window.price[static_cast<std::size_t>(t)];
      report.mae[method++] += (persistent_forecast(y, opt.horizon) - actual).cwiseAbs();
    }
    ++report.origins;
    if (opt.max_origins > 0 && report.origins >= opt.max_origins) break;
  }

  if (report.origins == 0) throw SampleTooShort("rolling study: no usable forecast origin");
  for (auto& mae : report.mae) {
    mae /= static_cast<double>(report.origins);
    report.mmae.push_back(mmae_from_mae(mae));
  }
  return report;
}

}  // namespace spotcast
