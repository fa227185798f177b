#include "spotcast/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spotcast/basis.hpp"
#include "spotcast/calendar.hpp"
#include "spotcast/design.hpp"
#include "spotcast/errors.hpp"

namespace spotcast {

namespace {

void set_lag(Eigen::VectorXd& theta, const std::vector<ColumnSpec>& cols, Series source, int lag,
             double value) {
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (cols[j].kind == ColumnKind::Lag && cols[j].source == source && cols[j].lag == lag)
      theta(static_cast<Eigen::Index>(j)) = value;
}

void set_basis(Eigen::VectorXd& theta, const std::vector<ColumnSpec>& cols, int basis_index,
               double value) {
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (cols[j].kind == ColumnKind::Basis && cols[j].basis_index == basis_index)
      theta(static_cast<Eigen::Index>(j)) = value;
}

void set_tarch(Eigen::VectorXd& alpha, const std::vector<TarchColumnSpec>& cols,
               TarchColumnSpec::Kind kind, int lag, double value) {
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (cols[j].kind == kind && cols[j].lag == lag) alpha(static_cast<Eigen::Index>(j)) = value;
}

}  // namespace

SyntheticModel SyntheticModel::standard() {
  SyntheticModel s;
  s.config.lags = LagSpec::toy();
  s.config.max_iterations = 2;

  const Series P = Series::Price, L = Series::Load, R = Series::Renewables;
  for (int i = 0; i < kNumSeries; ++i) {
    const Series eq = static_cast<Series>(i);
    const auto cols = equation_columns(eq, s.config.lags, s.config.basis.columns(eq));
    s.theta[i] = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols.size()));
    const auto tcols = tarch_columns(s.config.lags.tarch_lags[i], s.config.basis.columns(eq));
    s.alpha[i] = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(tcols.size()));
    s.alpha[i](0) = 0.25;  // intercept of the absolute-residual scale

    if (eq == P) {
      set_lag(s.theta[i], cols, P, 1, 0.45);
      set_lag(s.theta[i], cols, P, 2, 0.10);
      set_lag(s.theta[i], cols, P, 24, 0.20);
      set_lag(s.theta[i], cols, L, 1, 0.15);
      set_lag(s.theta[i], cols, R, 1, -0.20);
      set_lag(s.theta[i], cols, R, 24, -0.05);
      set_basis(s.theta[i], cols, 0, 0.30);
      set_basis(s.theta[i], cols, 12, -0.20);
      set_basis(s.theta[i], cols, 25, 0.20);
      set_tarch(s.alpha[i], tcols, TarchColumnSpec::Kind::PosLag, 1, 0.10);
      set_tarch(s.alpha[i], tcols, TarchColumnSpec::Kind::NegLag, 1, 0.25);
    } else if (eq == L) {
      set_lag(s.theta[i], cols, L, 1, 0.50);
      set_lag(s.theta[i], cols, L, 2, 0.15);
      set_lag(s.theta[i], cols, L, 24, 0.25);
      set_lag(s.theta[i], cols, R, 1, -0.05);
      set_basis(s.theta[i], cols, 1, 0.40);
      set_basis(s.theta[i], cols, 20, -0.25);
      set_tarch(s.alpha[i], tcols, TarchColumnSpec::Kind::PosLag, 1, 0.05);
      set_tarch(s.alpha[i], tcols, TarchColumnSpec::Kind::NegLag, 1, 0.30);
    } else {
      set_lag(s.theta[i], cols, R, 1, 0.60);
      set_lag(s.theta[i], cols, R, 2, 0.10);
      set_lag(s.theta[i], cols, R, 24, 0.15);
      set_basis(s.theta[i], cols, 0, 0.40);
      set_basis(s.theta[i], cols, 6, -0.30);
      set_tarch(s.alpha[i], tcols, TarchColumnSpec::Kind::PosLag, 1, 0.30);
      set_tarch(s.alpha[i], tcols, TarchColumnSpec::Kind::NegLag, 1, 0.05);
    }
    set_tarch(s.alpha[i], tcols, TarchColumnSpec::Kind::PosLag, 24, 0.05);
    set_tarch(s.alpha[i], tcols, TarchColumnSpec::Kind::NegLag, 24, 0.05);
  }

  s.stats = {SeriesStats{40.0, 12.0}, SeriesStats{55000.0, 8000.0}, SeriesStats{6000.0, 1500.0}};
  return s;
}

HourlyPanel simulate_from(const SyntheticModel& model, const HolidayCalendar& holidays,
                          const SimulateOptions& opt) {
  if (opt.n == 0) throw Error("simulate: empty sample requested");
  const std::int64_t burn = static_cast<std::int64_t>(opt.burn_in);
  const std::int64_t total = burn + static_cast<std::int64_t>(opt.n);

  std::vector<HourStamp> ts;
  ts.reserve(static_cast<std::size_t>(total));
  for (std::int64_t t = 0; t < total; ++t) ts.push_back(HourStamp{opt.start.value - burn + t});
  const int y0 = ts.front().date().year;
  const int y1 = HourStamp{ts.back().value + 24}.date().year;
  for (int y = y0; y <= y1; ++y)
    if (!holidays.covers_year(y))
      throw HolidayCoverage("simulate: holiday table does not cover " + std::to_string(y));

  const DayGroupCalendar cal = classify_hours(ts, holidays, model.config.classify);
  BasisMatrix basis[kNumSeries];
  std::vector<ColumnSpec> cols[kNumSeries];
  std::vector<TarchColumnSpec> tcols[kNumSeries];
  for (int i = 0; i < kNumSeries; ++i) {
    const Series eq = static_cast<Series>(i);
    basis[i] = equation_basis(eq, cal, model.config.basis);
    cols[i] = equation_columns(eq, model.config.lags, model.config.basis.columns(eq));
    tcols[i] = tarch_columns(model.config.lags.tarch_lags[i], model.config.basis.columns(eq));
    if (model.theta[i].size() != static_cast<Eigen::Index>(cols[i].size()))
      throw Error("simulate: theta size does not match the column layout");
    if (model.alpha[i].size() != 0 &&
        model.alpha[i].size() != static_cast<Eigen::Index>(tcols[i].size()))
      throw Error("simulate: alpha size does not match the column layout");
  }

  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(total, kNumSeries);
  Eigen::MatrixXd eps = Eigen::MatrixXd::Zero(total, kNumSeries);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (std::int64_t t = 0; t < total; ++t) {
    for (int i = 0; i < kNumSeries; ++i) {
      auto series = [&](Series s, double u) {
        const std::int64_t tu = static_cast<std::int64_t>(u);
        return tu < 0 ? 0.0 : Y(tu, static_cast<int>(s));
      };
      auto brow = [&](int idx) { return basis[i].values(t, idx); };
      double mu = 0.0;
      for (Eigen::Index j = 0; j < model.theta[i].size(); ++j)
        if (model.theta[i](j) != 0.0)
          mu += model.theta[i](j) *
                eval_column(cols[i][static_cast<std::size_t>(j)], static_cast<double>(t),
                            model.trend, series, brow);

      double sd;
      if (model.alpha[i].size() == 0) {
        sd = model.const_sd[i];
      } else {
        double tilde = 0.0;
        for (Eigen::Index j = 0; j < model.alpha[i].size(); ++j) {
          const double a = model.alpha[i](j);
          if (a == 0.0) continue;
          const TarchColumnSpec& c = tcols[i][static_cast<std::size_t>(j)];
          double v = 0.0;
          switch (c.kind) {
            case TarchColumnSpec::Kind::Intercept: v = 1.0; break;
            case TarchColumnSpec::Kind::Basis: v = brow(c.basis_index); break;
            case TarchColumnSpec::Kind::PosLag:
              v = t >= c.lag ? std::max(eps(t - c.lag, i), 0.0) : 0.0;
              break;
            case TarchColumnSpec::Kind::NegLag:
              v = t >= c.lag ? std::max(-eps(t - c.lag, i), 0.0) : 0.0;
              break;
          }
          tilde += a * v;
        }
        sd = std::max(tilde, 1e-6) / kGaussianAbsMoment;
      }
      const double innovation = sd * normal(rng);
      eps(t, i) = innovation;
      Y(t, i) = mu + innovation;
    }
  }

  HourlyPanel panel;
  panel.timestamps.assign(ts.begin() + burn, ts.end());
  panel.price.resize(opt.n);
  panel.load.resize(opt.n);
  panel.renewables.resize(opt.n);
  for (std::size_t r = 0; r < opt.n; ++r) {
    const std::int64_t t = burn + static_cast<std::int64_t>(r);
    panel.price[r] = destandardize(Y(t, 0), model.stats[0]);
    panel.load[r] = std::max(destandardize(Y(t, 1), model.stats[1]), 0.0);
    panel.renewables[r] = std::max(destandardize(Y(t, 2), model.stats[2]), 0.0);
  }
  return panel;
}

}  // namespace spotcast
