#include "spotcast/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spotcast/errors.hpp"

namespace spotcast {

namespace {

struct ActiveMean {
  ColumnSpec col;
  double w = 0.0;
};
struct ActiveTarch {
  TarchColumnSpec col;
  double w = 0.0;
};

double sample_sd(const Eigen::VectorXd& v) {
  if (v.size() < 2) return 0.0;
  const double mn = v.mean();
  return std::sqrt((v.array() - mn).square().sum() / static_cast<double>(v.size() - 1));
}

// Shared state of the forecast recursion over the extended hour grid.
struct Engine {
  const ModelFit& m;
  std::int64_t n_hist = 0;
  std::int64_t total = 0;
  DayGroupCalendar cal;
  BasisMatrix basis[kNumSeries];
  Eigen::MatrixXd Y;  // total x 3, standardized; forecast rows filled later
  std::vector<ActiveMean> mean_terms[kNumSeries];
  std::vector<ActiveTarch> tarch_terms[kNumSeries];

  // Variance-recursion state (bands only).
  Eigen::MatrixXd eps;  // history rows [t_min, n_hist)
  double sigma_floor[kNumSeries] = {0, 0, 0};
  double tilde_floor[kNumSeries] = {0, 0, 0};

  explicit Engine(const ModelFit& model) : m(model) {}

  // Conditional mean of equation i at hour t; values(s, u) supplies the
  // (observed or simulated) standardized series.
  template <typename Values>
  double mean_at(int i, std::int64_t t, Values&& values) const {
    const auto& b = basis[i].values;
    double acc = 0.0;
    for (const ActiveMean& term : mean_terms[i])
      acc += term.w * eval_column(
                          term.col, static_cast<double>(t), m.trend, values,
                          [&](int idx) { return b(t, idx); });
    return acc;
  }

  // Absolute-residual scale of equation i at hour t; eps_at(u) supplies the
  // residual of equation i at hour u.
  template <typename Residual>
  double sigma_tilde_at(int i, std::int64_t t, Residual&& eps_at) const {
    const auto& b = basis[i].values;
    double acc = 0.0;
    for (const ActiveTarch& term : tarch_terms[i]) {
      double v = 0.0;
      switch (term.col.kind) {
        case TarchColumnSpec::Kind::Intercept: v = 1.0; break;
        case TarchColumnSpec::Kind::Basis: v = b(t, term.col.basis_index); break;
        case TarchColumnSpec::Kind::PosLag: v = std::max(eps_at(t - term.col.lag), 0.0); break;
        case TarchColumnSpec::Kind::NegLag: v = std::max(-eps_at(t - term.col.lag), 0.0); break;
      }
      acc += term.w * v;
    }
    return std::max(acc, tilde_floor[i]);
  }

  double sigma_at(int i, double sigma_tilde) const {
    return std::max(sigma_tilde / m.eq[i].tarch.gamma, sigma_floor[i]);
  }
};

Engine build_engine(const ModelFit& m, const HourlyPanel& history,
                    const HolidayCalendar& holidays, int horizon, bool first_pass) {
  if (horizon < 1) throw Error("forecast: horizon must be positive");
  if (history.n() == 0 || history.timestamps.front() != m.start)
    throw Error("forecast: history does not start at the model's first sample hour");
  if (static_cast<std::int64_t>(history.n()) <= m.t_min)
    throw HistoryTooShort("forecast: history shorter than the model's lag depth");

  Engine e(m);
  e.n_hist = static_cast<std::int64_t>(history.n());
  e.total = e.n_hist + horizon;

  std::vector<HourStamp> ts = history.timestamps;
  ts.reserve(static_cast<std::size_t>(e.total));
  const std::int64_t last = ts.back().value;
  for (int h = 1; h <= horizon; ++h) ts.push_back(HourStamp{last + h});

  // The day-group of the last hour looks one day ahead.
  const int first_year = ts[static_cast<std::size_t>(e.n_hist)].date().year;
  const int last_year = HourStamp{ts.back().value + 24}.date().year;
  for (int y = first_year; y <= last_year; ++y)
    if (!holidays.covers_year(y))
      throw HolidayCoverage("forecast: holiday table does not cover " + std::to_string(y));

  e.cal = classify_hours(ts, holidays, m.config.classify);
  for (int i = 0; i < kNumSeries; ++i)
    e.basis[i] = equation_basis(static_cast<Series>(i), e.cal, m.config.basis);

  e.Y.resize(e.total, kNumSeries);
  for (int i = 0; i < kNumSeries; ++i) {
    const auto& src = history.series(static_cast<Series>(i));
    const SeriesStats& st = m.stats[static_cast<std::size_t>(i)];
    for (std::int64_t t = 0; t < e.n_hist; ++t)
      e.Y(t, i) = history.standardized ? src[static_cast<std::size_t>(t)]
                                       : (src[static_cast<std::size_t>(t)] - st.mean) / st.sd;
  }

  for (int i = 0; i < kNumSeries; ++i) {
    const EquationFit& eq = m.eq[i];
    const Eigen::VectorXd& theta = first_pass ? eq.theta_first : eq.theta;
    if (theta.size() != static_cast<Eigen::Index>(eq.columns.size()))
      throw Error("forecast: model has no fitted coefficients");
    for (Eigen::Index j = 0; j < theta.size(); ++j)
      if (theta(j) != 0.0)
        e.mean_terms[i].push_back({eq.columns[static_cast<std::size_t>(j)], theta(j)});
    for (Eigen::Index j = 0; j < eq.tarch.alpha.size(); ++j)
      if (eq.tarch.alpha(j) != 0.0)
        e.tarch_terms[i].push_back({eq.tarch.columns[static_cast<std::size_t>(j)],
                                    eq.tarch.alpha(j)});
  }
  return e;
}

Forecast extract_point(const Engine& e, int horizon) {
  Forecast f;
  f.timestamps.reserve(static_cast<std::size_t>(horizon));
  f.point.resize(horizon, kNumSeries);
  for (int h = 0; h < horizon; ++h) {
    const std::int64_t t = e.n_hist + h;
    f.timestamps.push_back(e.cal.timestamps[static_cast<std::size_t>(t)]);
    for (int i = 0; i < kNumSeries; ++i)
      f.point(h, i) = destandardize(e.Y(t, i), e.m.stats[static_cast<std::size_t>(i)]);
  }
  return f;
}

void run_point_recursion(Engine& e) {
  for (std::int64_t t = e.n_hist; t < e.total; ++t)
    for (int i = 0; i < kNumSeries; ++i)
      e.Y(t, i) = e.mean_at(i, t, [&](Series s, double u) {
        return e.Y(static_cast<std::int64_t>(u), static_cast<int>(s));
      });
}

}  // namespace

Forecast forecast_point(const ModelFit& m, const HourlyPanel& history,
                        const HolidayCalendar& holidays, int horizon, bool first_pass) {
  Engine e = build_engine(m, history, holidays, horizon, first_pass);
  run_point_recursion(e);
  return extract_point(e, horizon);
}

ForecastBands forecast_bands(const ModelFit& m, const HourlyPanel& history,
                             const HolidayCalendar& holidays, int horizon,
                             const BandOptions& opt) {
  if (opt.paths < 2) throw Error("forecast: need at least two bootstrap paths");
  for (double lv : opt.levels)
    if (!(lv > 0.0 && lv < 1.0)) throw Error("forecast: band levels must lie in (0, 1)");

  Engine e = build_engine(m, history, holidays, horizon, false);
  const std::int64_t t_min = m.t_min;
  const std::int64_t nres = e.n_hist - t_min;

  std::int64_t max_tarch = 0;
  for (int i = 0; i < kNumSeries; ++i) {
    if (m.eq[i].tarch.alpha.size() == 0)
      throw Error("forecast: prediction bands need a fitted variance part");
    max_tarch = std::max(max_tarch, m.eq[i].tarch.row_offset);
  }
  if (nres <= max_tarch + 1) throw HistoryTooShort("forecast: history too short for the bands");

  // Residuals of the mean equations over the sample.
  e.eps.resize(e.n_hist, kNumSeries);
  auto observed = [&](Series s, double u) {
    return e.Y(static_cast<std::int64_t>(u), static_cast<int>(s));
  };
  for (std::int64_t t = t_min; t < e.n_hist; ++t)
    for (int i = 0; i < kNumSeries; ++i) e.eps(t, i) = e.Y(t, i) - e.mean_at(i, t, observed);

  // Fitted sigma over the sample (head rows carry the mean level, as in the
  // estimation), plus the standardized-residual pool for the bootstrap.
  Eigen::MatrixXd sigma(e.n_hist, kNumSeries);
  for (int i = 0; i < kNumSeries; ++i) {
    const double res_sd = sample_sd(e.eps.col(i).tail(nres));
    e.tilde_floor[i] = std::max(1e-8 * res_sd, 1e-12);
    e.sigma_floor[i] = m.config.sigma_floor_rel * res_sd;
    auto eps_hist = [&](std::int64_t u) { return e.eps(u, i); };
    const std::int64_t start = t_min + m.eq[i].tarch.row_offset;
    double tilde_sum = 0.0;
    for (std::int64_t t = start; t < e.n_hist; ++t) {
      const double st = e.sigma_tilde_at(i, t, eps_hist);
      sigma(t, i) = e.sigma_at(i, st);
      tilde_sum += st;
    }
    const double head = std::max(tilde_sum / static_cast<double>(e.n_hist - start),
                                 e.tilde_floor[i]);
    for (std::int64_t t = t_min; t < start; ++t) sigma(t, i) = e.sigma_at(i, head);
  }

  const std::int64_t pool_start = t_min + max_tarch;
  const std::int64_t pool = e.n_hist - pool_start;
  Eigen::MatrixXd Z(pool, kNumSeries);
  for (std::int64_t r = 0; r < pool; ++r)
    for (int i = 0; i < kNumSeries; ++i)
      Z(r, i) = e.eps(pool_start + r, i) / sigma(pool_start + r, i);

  run_point_recursion(e);
  ForecastBands out;
  out.central = extract_point(e, horizon);
  out.levels = opt.levels;
  out.paths = opt.paths;
  out.seed = opt.seed;

  // sims[i] is horizon x paths, natural units.
  Eigen::MatrixXd sims[kNumSeries];
  for (int i = 0; i < kNumSeries; ++i) sims[i].resize(horizon, opt.paths);

  Eigen::MatrixXd Ypath(horizon, kNumSeries);
  Eigen::MatrixXd epspath(horizon, kNumSeries);
  for (int p = 0; p < opt.paths; ++p) {
    std::mt19937_64 rng(opt.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(p + 1));
    std::uniform_int_distribution<std::int64_t> pick(0, pool - 1);
    auto value = [&](Series s, double u) {
      const std::int64_t t = static_cast<std::int64_t>(u);
      return t < e.n_hist ? e.Y(t, static_cast<int>(s)) : Ypath(t - e.n_hist, static_cast<int>(s));
    };
    for (int h = 0; h < horizon; ++h) {
      const std::int64_t t = e.n_hist + h;
      const std::int64_t z_row = pick(rng);  // joint draw keeps the cross correlation
      for (int i = 0; i < kNumSeries; ++i) {
        auto eps_at = [&](std::int64_t u) {
          return u < e.n_hist ? e.eps(u, i) : epspath(u - e.n_hist, i);
        };
        const double mu = e.mean_at(i, t, value);
        const double sg = e.sigma_at(i, e.sigma_tilde_at(i, t, eps_at));
        const double innovation = sg * Z(z_row, i);
        epspath(h, i) = innovation;
        Ypath(h, i) = mu + innovation;
        sims[i](h, p) = destandardize(Ypath(h, i), m.stats[static_cast<std::size_t>(i)]);
      }
    }
  }

  std::vector<double> dev(static_cast<std::size_t>(opt.paths));
  for (double lv : opt.levels) {
    Eigen::MatrixXd lo(horizon, kNumSeries);
    Eigen::MatrixXd hi(horizon, kNumSeries);
    const int q_idx = std::min<int>(
        opt.paths - 1, static_cast<int>(std::ceil(lv * opt.paths)) - 1);
    for (int h = 0; h < horizon; ++h)
      for (int i = 0; i < kNumSeries; ++i) {
        const double center = out.central.point(h, i);
        for (int p = 0; p < opt.paths; ++p)
          dev[static_cast<std::size_t>(p)] = std::abs(sims[i](h, p) - center);
        std::nth_element(dev.begin(), dev.begin() + q_idx, dev.end());
        const double q = dev[static_cast<std::size_t>(q_idx)];
        lo(h, i) = center - q;
        hi(h, i) = center + q;
      }
    out.lower.push_back(std::move(lo));
    out.upper.push_back(std::move(hi));
  }
  return out;
}

}  // namespace spotcast
