// Acceptance gate: end-to-end checks of the estimation and forecasting
// engine, one pass/fail line per criterion. Exit status is nonzero if any
// criterion fails. argv[1] must be the path to the command-line binary
// (used by the determinism criterion).

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spotcast/bspline.hpp"
#include "spotcast/estimator.hpp"
#include "spotcast/evalbench.hpp"
#include "spotcast/forecast.hpp"
#include "spotcast/nnls.hpp"
#include "spotcast/lars.hpp"
#include "spotcast/panel.hpp"
#include "spotcast/simulate.hpp"

namespace fs = std::filesystem;
using namespace spotcast;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << " " << name << ": "
            << detail << "\n";
  if (!pass) ++g_failures;
}

void report_skip(int id, const std::string& name, const std::string& why) {
  std::cout << "[SKIP] criterion " << id << " " << name << ": " << why << "\n";
}

// ---------------------------------------------------------------- 1 -------

void criterion_solver_oracles() {
  Timer timer;
  std::mt19937_64 rng(20260826);
  std::normal_distribution<double> g;

  double worst_lasso = 0.0;
  int lasso_checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    std::uniform_int_distribution<int> nd(15, 200), pd(2, 50);
    const int n = nd(rng);
    const int p = pd(rng);
    Eigen::MatrixXd X(n, p);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < p; ++c) X(r, c) = g(rng);
    for (int c = 2; c < p; c += 4) X.col(c) = 0.7 * X.col(c - 1) + 0.3 * X.col(c);
    for (int c = 0; c < p; ++c) X.col(c).array() -= X.col(c).mean();
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
    std::uniform_int_distribution<int> pick(0, p - 1);
    for (int k = 0; k < std::max(1, p / 5); ++k) theta(pick(rng)) = g(rng);
    Eigen::VectorXd y = X * theta;
    for (int r = 0; r < n; ++r) y(r) += 0.4 * g(rng);
    y.array() -= y.mean();

    LassoPath path = lars_lasso(X, y);
    if (path.breakpoints.empty()) continue;
    const double lambda_max = path.breakpoints.front().lambda;
    for (double f : {0.8, 0.45, 0.2, 0.07, 0.015}) {
      const double lambda = f * lambda_max;
      Eigen::VectorXd ours = path.theta_at(lambda);
      Eigen::VectorXd ref = oracles::lasso_coordinate_descent(X, y, lambda);
      worst_lasso = std::max(worst_lasso, (ours - ref).cwiseAbs().maxCoeff());
      ++lasso_checked;
    }
  }

  double worst_nnls = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    std::uniform_int_distribution<int> pd(1, 8), nd(4, 40);
    const int p = pd(rng);
    const int n = nd(rng);
    Eigen::MatrixXd X(n, p);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < p; ++c) X(r, c) = g(rng);
    Eigen::VectorXd y(n);
    for (int r = 0; r < n; ++r) y(r) = g(rng);
    NnlsSolution s = nnls(X, y);
    const double obj = (y - X * s.beta).squaredNorm();
    const double best = oracles::nnls_best_objective(X, y);
    worst_nnls = std::max(worst_nnls, std::abs(obj - best));
  }

  const double secs = timer.seconds();
  std::ostringstream d;
  d << "lasso max |dtheta| " << worst_lasso << " over " << lasso_checked
    << " penalty points (tol 1e-6); nnls max |dobjective| " << worst_nnls
    << " over 200 instances (tol 1e-8); " << secs << "s (budget 60s)";
  report(1, "solver oracle equivalence", worst_lasso <= 1e-6 && worst_nnls <= 1e-8 && secs < 60.0,
         d.str());
}

// ---------------------------------------------------------------- 2 -------

void criterion_splines() {
  Timer timer;
  bool ok = true;
  std::ostringstream why;

  // Cardinal cubic: centre value 2/3 and the closed form on [0, 2].
  auto closed = [](double u) {
    u = std::abs(u);
    if (u < 1.0) return (4.0 - 6.0 * u * u + 3.0 * u * u * u) / 6.0;
    if (u < 2.0) return (2.0 - u) * (2.0 - u) * (2.0 - u) / 6.0;
    return 0.0;
  };
  for (double t = -2.5; t <= 2.5; t += 0.003)
    if (std::abs(eval_bspline({3, 1.0, 0.0}, t) - closed(t)) > 1e-12) {
      ok = false;
      why << "closed-form mismatch at " << t << "; ";
      break;
    }
  if (std::abs(eval_bspline({3, 1.0, 0.0}, 0.0) - 2.0 / 3.0) > 1e-12) {
    ok = false;
    why << "centre value; ";
  }

  // Compact support.
  BSplineSpec s{3, 2.0, 5.0};
  if (eval_bspline(s, 5.0 - s.support_radius()) != 0.0 ||
      eval_bspline(s, 5.0 + s.support_radius() + 1.0) != 0.0 ||
      eval_bspline(s, 5.0 - s.support_radius() + 1e-3) <= 0.0) {
    ok = false;
    why << "compact support; ";
  }

  // Shift recursion between degrees on uniform knots.
  for (int d = 1; d <= 3 && ok; ++d) {
    const double h = 1.3, c = 0.7;
    const double t_first = c - h * (d + 1) / 2.0;
    const double t_last = c + h * (d + 1) / 2.0;
    for (double t = t_first; t <= t_last; t += 0.011) {
      const double lhs = eval_bspline({d, h, c}, t);
      const double rhs = (t - t_first) / (d * h) * eval_bspline({d - 1, h, c - h / 2.0}, t) +
                         (t_last - t) / (d * h) * eval_bspline({d - 1, h, c + h / 2.0}, t);
      if (std::abs(lhs - rhs) > 1e-10) {
        ok = false;
        why << "degree recursion at d=" << d << " t=" << t << "; ";
        break;
      }
    }
  }

  // Weekly periodicity of the group basis on plain weeks.
  {
    HolidayCalendar none;
    std::vector<HourStamp> ts;
    HourStamp t0 = make_hour({2013, 1, 7}, 0);  // Monday, no holidays in range
    for (int i = 0; i < 6 * 168; ++i) ts.push_back(HourStamp{t0.value + i});
    DayGroupCalendar cal = classify_hours(ts, none);
    BasisMatrix wb = weekly_group_basis(cal);
    double worst = 0.0;
    for (Eigen::Index t = 2 * 168; t + 168 < wb.rows() - 2 * 168; ++t)
      worst = std::max(worst, (wb.values.row(t) - wb.values.row(t + 168)).cwiseAbs().maxCoeff());
    if (worst > 1e-10) {
      ok = false;
      why << "weekly periodicity off by " << worst << "; ";
    }
  }

  // Summer-time rows evaluate the renewable basis one hour ahead.
  {
    const std::size_t n = 400;
    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t t = 100; t < 300; ++t) mask[t] = 1;
    BasisMatrix shifted = dst_shift_renewable_basis(mask, n, BasisConfig{});
    BasisMatrix plain = daily_annual_interaction_basis(n, BasisConfig{});
    double worst = 0.0;
    for (std::size_t t = 0; t + 1 < n; ++t) {
      const Eigen::Index want = static_cast<Eigen::Index>(mask[t] ? t + 1 : t);
      worst = std::max(worst, (shifted.values.row(static_cast<Eigen::Index>(t)) -
                               plain.values.row(want))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    if (worst > 1e-12) {
      ok = false;
      why << "summer-time shift off by " << worst << "; ";
    }
  }

  const double secs = timer.seconds();
  if (secs >= 10.0) ok = false;
  std::ostringstream d;
  d << (why.str().empty() ? "centre 2/3, support, degree recursion, 168h periodicity, +1h shift"
                          : why.str())
    << " (" << secs << "s, budget 10s)";
  report(2, "spline correctness", ok, d.str());
}

// ---------------------------------------------------------------- 3 -------

void criterion_gamma_plugin() {
  Timer timer;
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  const int n = 1000000;
  Eigen::VectorXd eps(n);
  for (int i = 0; i < n; ++i) eps(i) = g(rng);
  // The variance model reduced to its intercept: the nonnegative regression
  // of |eps| on a constant gives the mean absolute residual, and the
  // plug-in is the reciprocal sd of eps over that scale.
  NnlsSolution s = nnls(Eigen::MatrixXd::Ones(n, 1), eps.cwiseAbs());
  const double scale = s.beta(0);
  Eigen::VectorXd kappa = eps / scale;
  const double sd = std::sqrt((kappa.array() - kappa.mean()).square().sum() / (n - 1.0));
  const double gamma_hat = 1.0 / sd;
  const double secs = timer.seconds();
  std::ostringstream d;
  d << "gamma_hat " << gamma_hat << " target 0.798 +/- 0.005 (" << secs << "s, budget 10s)";
  report(3, "scale plug-in", std::abs(gamma_hat - 0.798) <= 0.005 && secs < 10.0, d.str());
}

// ---------------------------------------------------------------- 4 -------

void criterion_scheme_convergence() {
  Timer timer;
  const HolidayCalendar holidays = german_holidays(2016, 2023);
  const SyntheticModel truth = SyntheticModel::standard();
  FitConfig cfg = truth.config;
  cfg.max_iterations = 4;
  cfg.epsilon = 1e-3;

  int good = 0;
  const int runs = 20;
  for (int r = 0; r < runs; ++r) {
    SimulateOptions so;
    so.n = 20000;
    so.seed = 1000 + static_cast<std::uint64_t>(r);
    HourlyPanel panel = simulate_from(truth, holidays, so);
    ModelFit m = fit_model(panel, holidays, cfg);
    bool run_ok = m.trace.converged && m.trace.steps.size() <= 4;
    // Deltas must decrease monotonically from the first measurable step and
    // end below the threshold.
    double prev[kNumSeries] = {1e300, 1e300, 1e300};
    for (const auto& step : m.trace.steps) {
      if (step.iteration == 1) continue;  // no previous sigma yet
      for (int i = 0; i < kNumSeries; ++i) {
        if (!(step.delta[i] <= prev[i] + 1e-12)) run_ok = false;
        prev[i] = step.delta[i];
      }
    }
    for (int i = 0; i < kNumSeries; ++i)
      if (!(prev[i] < 1e-3)) run_ok = false;
    if (run_ok) ++good;
  }
  std::ostringstream d;
  d << good << "/" << runs << " seeded runs converged with decreasing increments (need >= 18); "
    << timer.seconds() << "s";
  report(4, "estimation scheme convergence", good >= 18, d.str());
}

// ---------------------------------------------------------------- 5 -------

void criterion_parameter_recovery() {
  Timer timer;
  const HolidayCalendar holidays = german_holidays(2016, 2023);
  const SyntheticModel truth = SyntheticModel::standard();

  int recovered = 0, total = 0;
  int leverage_ok = 0, leverage_runs = 0;
  for (unsigned seed : {11u, 12u, 13u}) {
    SimulateOptions so;
    so.n = 20000;
    so.seed = seed;
    HourlyPanel panel = standardize(simulate_from(truth, holidays, so));
    FitWorkspace ws = build_workspace(panel, holidays, truth.config);
    ModelFit m = fit_model(panel, ws, truth.config);

    for (int i = 0; i < kNumSeries; ++i) {
      const Eigen::VectorXd& t_true = truth.theta[i];
      const Eigen::VectorXd& t_hat = m.eq[i].theta;
      const auto& cols = m.eq[i].columns;
      for (Eigen::Index j = 0; j < t_true.size(); ++j) {
        if (t_true(j) == 0.0) continue;
        const ColumnKind kind = cols[static_cast<std::size_t>(j)].kind;
        // Only the sparse dynamic coefficients are identifiable targets; the
        // smooth basis block is collinear by construction (the periodic
        // splines sum to a constant), so individual basis coefficients are
        // not recoverable even in principle.
        if (kind != ColumnKind::Lag && kind != ColumnKind::Periodic) continue;
        ++total;
        if (t_hat(j) != 0.0 && std::signbit(t_hat(j)) == std::signbit(t_true(j))) ++recovered;
      }
    }

    // Asymmetric variance response: the generator has negative residual
    // shocks raising price/load volatility more than positive ones, and the
    // reverse for the renewables.
    for (int i = 0; i < kNumSeries; ++i) {
      ++leverage_runs;
      TestResult lev = test_leverage(m, ws, static_cast<Series>(i));
      const double want_sign = (i == 2) ? 1.0 : -1.0;  // sign of alpha+ - alpha-
      if (lev.estimate * want_sign > 0.0 && std::abs(lev.tstat) > 3.0) ++leverage_ok;
    }
  }

  const double rate = total > 0 ? static_cast<double>(recovered) / total : 0.0;
  std::ostringstream d;
  d << "support+sign recovery " << recovered << "/" << total << " = " << rate
    << " (need >= 0.95); leverage sign with |t|>3 in " << leverage_ok << "/" << leverage_runs
    << " equation fits; " << timer.seconds() << "s";
  report(5, "parameter recovery", rate >= 0.95 && leverage_ok == leverage_runs, d.str());
}

// ---------------------------------------------------------------- 6 -------

void criterion_forecast_coverage() {
  Timer timer;
  const HolidayCalendar holidays = german_holidays(2016, 2023);
  const SyntheticModel truth = SyntheticModel::standard();

  const std::size_t n_fit = 12000;
  const int reps = 500;
  const int h = 24;
  SimulateOptions so;
  so.n = n_fit + static_cast<std::size_t>(reps) + h;
  so.seed = 424242;
  HourlyPanel full = simulate_from(truth, holidays, so);

  HourlyPanel train = full;
  train.timestamps.resize(n_fit);
  train.price.resize(n_fit);
  train.load.resize(n_fit);
  train.renewables.resize(n_fit);
  ModelFit m = fit_model(train, holidays, truth.config);

  int covered = 0;
  BandOptions opt;
  opt.levels = {0.90};
  opt.paths = 1000;
  for (int r = 0; r < reps; ++r) {
    const std::size_t cut = n_fit + static_cast<std::size_t>(r);
    HourlyPanel hist = full;
    hist.timestamps.resize(cut);
    hist.price.resize(cut);
    hist.load.resize(cut);
    hist.renewables.resize(cut);
    opt.seed = 50000 + static_cast<std::uint64_t>(r);
    ForecastBands fb = forecast_bands(m, hist, holidays, h, opt);
    const double actual = full.price[cut + h - 1];
    if (actual >= fb.lower[0](h - 1, 0) && actual <= fb.upper[0](h - 1, 0)) ++covered;
  }
  const double coverage = static_cast<double>(covered) / reps;
  std::ostringstream d;
  d << "price 90% band coverage at 24h: " << coverage << " over " << reps
    << " replications (target 0.90 +/- 0.03); " << timer.seconds() << "s";
  report(6, "forecast band coverage", coverage >= 0.87 && coverage <= 0.93, d.str());
}

// ---------------------------------------------------------------- 7 -------

void criterion_benchmark_sanity() {
  Timer timer;
  const HolidayCalendar holidays = german_holidays(2016, 2023);
  const SyntheticModel truth = SyntheticModel::standard();
  SimulateOptions so;
  so.n = 9000;
  so.seed = 5150;
  HourlyPanel panel = simulate_from(truth, holidays, so);

  RollingOptions opt;
  opt.window = 6000;
  opt.horizon = 24;
  opt.step = 24;
  opt.max_origins = 20;
  opt.run_ar = false;
  opt.run_var = false;
  opt.fit = truth.config;
  EvalReport r = rolling_study(panel, holidays, opt);

  // methods: pvar_tarch, pvar, persistent.
  const Eigen::VectorXd& mae_model = r.mae[0];
  const Eigen::VectorXd& mmae_model = r.mmae[0];
  const Eigen::VectorXd& mmae_pers = r.mmae[2];
  const bool beats = mmae_model(23) <= 0.9 * mmae_pers(23);
  const bool identical_first = mmae_model(0) == mae_model(0);
  bool all_first = true;
  for (std::size_t mth = 0; mth < r.mmae.size(); ++mth)
    if (r.mmae[mth](0) != r.mae[mth](0)) all_first = false;

  std::ostringstream d;
  d << "24h summary error " << mmae_model(23) << " vs persistent " << mmae_pers(23)
    << " (need <= 90%); first-step summary identical: " << (all_first ? "yes" : "no") << "; "
    << r.origins << " origins; " << timer.seconds() << "s";
  report(7, "benchmark sanity", beats && identical_first && all_first, d.str());
}

// ---------------------------------------------------------------- 8 -------

void criterion_real_data() {
  const char* path = std::getenv("SPOTCAST_EPEX_DATA");
  if (path == nullptr || std::string(path).empty()) {
    report_skip(8, "real-data check", "set SPOTCAST_EPEX_DATA to an hourly panel CSV to enable");
    return;
  }
  Timer timer;
  try {
    HourlyPanel panel = normalize_dst(load_panel(path));
    const int y0 = panel.timestamps.front().date().year;
    const int y1 = panel.timestamps.back().date().year;
    HolidayCalendar holidays = german_holidays(y0 - 1, y1 + 1);

    RollingOptions opt;  // full-scale defaults: 18481h window, 672h horizon
    opt.horizon = 24;
    opt.run_ar = false;
    opt.run_var = false;
    EvalReport r = rolling_study(panel, holidays, opt);
    const double model24 = r.mmae[0](23);
    const double pers24 = r.mmae[2](23);

    HourlyPanel std_panel = standardize(panel);
    FitConfig cfg;
    FitWorkspace ws = build_workspace(std_panel, holidays, cfg);
    ModelFit m = fit_model(std_panel, ws, cfg);
    TestResult lr = test_longrun(m, ws, Series::Renewables);

    std::ostringstream d;
    d << "24h summary error " << model24 << " (target [5.4, 6.5]), persistent " << pers24
      << " (target [9.5, 11.0]), renewables long-run t " << lr.tstat
      << " (need negative, |t| > 5); " << timer.seconds() << "s";
    report(8, "real-data check",
           model24 >= 5.4 && model24 <= 6.5 && pers24 >= 9.5 && pers24 <= 11.0 &&
               lr.estimate < 0.0 && std::abs(lr.tstat) > 5.0,
           d.str());
  } catch (const std::exception& e) {
    report(8, "real-data check", false, std::string("error: ") + e.what());
  }
}

// ---------------------------------------------------------------- 9 -------

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_determinism(const std::string& cli) {
  Timer timer;
  if (cli.empty()) {
    report(9, "run-to-run determinism", false, "command-line binary path not supplied");
    return;
  }
  const fs::path base = fs::temp_directory_path() / "spotcast_accept9";
  fs::remove_all(base);
  fs::create_directories(base);

  // Shared input data.
  const HolidayCalendar holidays = german_holidays(2016, 2023);
  SimulateOptions so;
  so.n = 6000;
  so.seed = 99;
  HourlyPanel panel = simulate_from(SyntheticModel::standard(), holidays, so);
  const fs::path data = base / "panel.csv";
  const fs::path holi = base / "holidays.csv";
  write_panel(panel, data.string());
  write_holidays(holidays, holi.string());

  bool ok = true;
  std::ostringstream why;
  for (const std::string run : {"a", "b"}) {
    const fs::path out = base / run;
    std::ostringstream cmd;
    cmd << cli << " fit --data " << data << " --holidays " << holi << " --lags toy --seed 17"
        << " --out-dir " << out << " > /dev/null 2>&1";
    if (std::system(cmd.str().c_str()) != 0) {
      ok = false;
      why << "fit run " << run << " failed; ";
      continue;
    }
    std::ostringstream fc;
    fc << cli << " forecast --data " << data << " --holidays " << holi << " --model "
       << (out / "model.json") << " --horizon 48 --mc 400 --seed 17 --out-dir " << out
       << " > /dev/null 2>&1";
    if (std::system(fc.str().c_str()) != 0) {
      ok = false;
      why << "forecast run " << run << " failed; ";
    }
  }
  int compared = 0;
  if (ok) {
    for (const auto& entry : fs::directory_iterator(base / "a")) {
      const fs::path other = base / "b" / entry.path().filename();
      ++compared;
      if (!fs::exists(other) || read_file(entry.path()) != read_file(other)) {
        ok = false;
        why << "mismatch in " << entry.path().filename().string() << "; ";
      }
    }
    if (compared == 0) {
      ok = false;
      why << "no output files produced; ";
    }
  }
  fs::remove_all(base);
  std::ostringstream d;
  d << (why.str().empty() ? "model, diagnostics and forecast files byte-identical across two runs"
                          : why.str())
    << " (" << compared << " files, " << timer.seconds() << "s)";
  report(9, "run-to-run determinism", ok, d.str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  criterion_solver_oracles();
  criterion_splines();
  criterion_gamma_plugin();
  criterion_scheme_convergence();
  criterion_parameter_recovery();
  criterion_forecast_coverage();
  criterion_benchmark_sanity();
  criterion_real_data();
  criterion_determinism(cli);
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
