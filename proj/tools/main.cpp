// spotcast command line: fit / forecast / bench / simulate / inspect.

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spotcast/errors.hpp"
#include "spotcast/estimator.hpp"
#include "spotcast/evalbench.hpp"
#include "spotcast/forecast.hpp"
#include "spotcast/model_io.hpp"
#include "spotcast/panel.hpp"
#include "spotcast/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spotcast;

namespace {

constexpr const char* kExitCodeDoc =
    "Exit codes: 0 ok, 2 usage, 3 missing input, 4 unreadable data, "
    "5 unusable sample, 6 numerical failure, 1 other error.";

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << h;
  return os.str();
}

struct Common {
  std::string data;
  std::string holidays;
  std::string out_dir = ".";
  int threads = 1;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, Common& c, bool needs_data) {
  auto* opt = cmd->add_option("--data", c.data, "panel CSV (timestamp, price, load, wind, solar)");
  if (needs_data) opt->required();
  cmd->add_option("--holidays", c.holidays,
                  "holiday CSV (date,kind,name); default: built-in German table");
  cmd->add_option("--out-dir", c.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--threads", c.threads, "linear-algebra thread cap")->capture_default_str();
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
}

struct ModelFlags {
  std::string lags = "paper";
  int kmax = 4;
  double epsilon = 1e-3;
  double weekly_dk = 4.0;
  double daily_dk = 4.0;
  int eta_daily = 6;
  int eta_annual = 12;
  int eta_annual_r = 6;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--lags", f.lags, "lag specification: paper or toy")
      ->check(CLI::IsMember({"paper", "toy"}))
      ->capture_default_str();
  cmd->add_option("--kmax", f.kmax, "estimation passes; 1 disables the variance model")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--epsilon", f.epsilon, "sigma-change convergence threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--weekly-dk", f.weekly_dk, "weekly spline knot distance")
      ->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--daily-dk", f.daily_dk, "daily spline knot distance")
      ->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--eta-daily", f.eta_daily, "daily basis count")
      ->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--eta-annual", f.eta_annual, "annual basis count (price/load)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--eta-annual-r", f.eta_annual_r, "annual basis count (renewables)")
      ->check(CLI::PositiveNumber)->capture_default_str();
}

FitConfig make_fit_config(const ModelFlags& f) {
  FitConfig cfg;
  cfg.lags = f.lags == "toy" ? LagSpec::toy() : LagSpec::paper_default();
  cfg.max_iterations = f.kmax;
  cfg.tarch = f.kmax > 1;
  cfg.epsilon = f.epsilon;
  cfg.basis.weekly_knot_distance = f.weekly_dk;
  cfg.basis.daily_knot_distance = f.daily_dk;
  cfg.basis.daily_count = f.eta_daily;
  cfg.basis.annual_count_price_load = f.eta_annual;
  cfg.basis.annual_count_renewables = f.eta_annual_r;
  return cfg;
}

// Semantic settings only: file paths stay out so identical runs in
// different directories produce identical output headers.
json settings_json(const Common& c, const json& extra) {
  json j = extra;
  j["seed"] = c.seed;
  return j;
}

std::ofstream open_output(const Common& c, const std::string& name, const std::string& hash) {
  fs::create_directories(c.out_dir);
  const fs::path path = fs::path(c.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw MissingInput("cannot write " + path.string());
  out << std::setprecision(12);
  out << "# config_hash=" << hash << "\n";
  out << "# seed=" << c.seed << "\n";
  return out;
}

HourlyPanel read_panel(const Common& c) {
  return normalize_dst(load_panel(c.data));
}

HolidayCalendar read_holidays(const Common& c, int first_year, int last_year) {
  if (c.holidays.empty()) return german_holidays(first_year - 1, last_year + 2);
  try {
    return load_holidays(c.holidays);
  } catch (const MissingInput& e) {
    throw MissingInput(std::string(e.what()) + " (--holidays)");
  }
}

std::string ts_str(HourStamp t) { return format_iso8601(t, is_summer_time(t) ? 120 : 60); }

// ---------------------------------------------------------------------------

int cmd_fit(const Common& c, const ModelFlags& f, const std::string& model_name) {
  const FitConfig cfg = make_fit_config(f);
  const HourlyPanel raw = read_panel(c);
  const HolidayCalendar holidays =
      read_holidays(c, raw.timestamps.front().date().year, raw.timestamps.back().date().year);

  const HourlyPanel panel = standardize(raw);
  const FitWorkspace ws = build_workspace(panel, holidays, cfg);
  const ModelFit m = fit_model(panel, ws, cfg);

  const json model_json = model_to_json(m);
  const std::string hash = fnv1a(settings_json(c, model_json.at("config")).dump());

  fs::create_directories(c.out_dir);
  save_model(m, (fs::path(c.out_dir) / model_name).string());

  {
    auto out = open_output(c, "trace.csv", hash);
    out << "iteration";
    for (int i = 0; i < kNumSeries; ++i)
      out << ",delta_" << kSeriesNames[i] << ",lambda_" << kSeriesNames[i] << ",aic_"
          << kSeriesNames[i] << ",df_" << kSeriesNames[i] << ",gamma_" << kSeriesNames[i];
    out << "\n";
    for (const auto& s : m.trace.steps) {
      out << s.iteration;
      for (int i = 0; i < kNumSeries; ++i) {
        out << ",";
        if (!std::isnan(s.delta[i])) out << s.delta[i];
        out << "," << s.lambda[i] << "," << s.aic[i] << "," << s.df[i] << ",";
        if (!std::isnan(s.gamma[i])) out << s.gamma[i];
      }
      out << "\n";
    }
    out << "# converged=" << (m.trace.converged ? "yes" : "no") << "\n";
  }

  const char* kind_names[] = {"intercept", "trend", "basis", "lag", "periodic"};
  for (int i = 0; i < kNumSeries; ++i) {
    const Series s = static_cast<Series>(i);
    const EquationFit& eq = m.eq[i];
    const Eigen::VectorXd se = coefficient_se(m, ws, s);
    auto out = open_output(c, std::string("tvalues_") + kSeriesNames[i] + ".csv", hash);
    out << "column,label,block,estimate,se,t\n";
    for (Eigen::Index j = 0; j < eq.theta.size(); ++j) {
      if (eq.theta(j) == 0.0) continue;
      const ColumnSpec& col = eq.columns[static_cast<std::size_t>(j)];
      const double t = se(j) > 0.0 ? eq.theta(j) / se(j) : 0.0;
      out << j << "," << col.label(s) << "," << kind_names[static_cast<int>(col.kind)] << ","
          << eq.theta(j) << "," << se(j) << "," << t << "\n";
    }
  }

  if (cfg.tarch) {
    for (int i = 0; i < kNumSeries; ++i) {
      const Series s = static_cast<Series>(i);
      const SigmaDecomposition dec = decompose_sigma(m, ws, s);
      auto out = open_output(c, std::string("sigma_") + kSeriesNames[i] + ".csv", hash);
      out << "timestamp,deterministic,positive,negative,sigma\n";
      for (Eigen::Index r = 0; r < dec.deterministic.size(); ++r) {
        const std::int64_t t = m.t_min + dec.row_offset + r;
        out << ts_str(panel.timestamps[static_cast<std::size_t>(t)]) << ","
            << dec.deterministic(r) << "," << dec.positive(r) << "," << dec.negative(r) << ","
            << dec.deterministic(r) + dec.positive(r) + dec.negative(r) << "\n";
      }
    }

    for (int i = 0; i < kNumSeries; ++i) {
      const Series s = static_cast<Series>(i);
      const std::vector<int>& lags = cfg.lags.tarch_lags[i];
      const std::vector<TestResult> curve = leverage_curve(m, ws, s, lags);
      auto out = open_output(c, std::string("leverage_") + kSeriesNames[i] + ".csv", hash);
      out << "k,estimate,se,t,p\n";
      for (std::size_t a = 0; a < lags.size(); ++a)
        out << lags[a] << "," << curve[a].estimate << "," << curve[a].se << ","
            << curve[a].tstat << "," << curve[a].pvalue << "\n";
    }
  }

  {
    const Eigen::MatrixXd Z = standardized_residuals(m);
    const int max_lag = static_cast<int>(std::min<Eigen::Index>(200, Z.rows() - 1));
    const auto grids = {std::pair{std::string("acf_z.csv"), cross_acf(Z, max_lag)},
                        std::pair{std::string("acf_absz.csv"), cross_acf(Z.cwiseAbs(), max_lag)}};
    for (const auto& [name, acf] : grids) {
      auto out = open_output(c, name, hash);
      out << "lag";
      for (int i = 0; i < kNumSeries; ++i)
        for (int j = 0; j < kNumSeries; ++j)
          out << "," << kSeriesNames[i] << "_" << kSeriesNames[j];
      out << "\n";
      for (std::size_t k = 0; k < acf.size(); ++k) {
        out << k;
        for (int i = 0; i < kNumSeries; ++i)
          for (int j = 0; j < kNumSeries; ++j) out << "," << acf[k](i, j);
        out << "\n";
      }
    }
  }

  {
    auto out = open_output(c, "effects.csv", hash);
    out << "effect,estimate,se,t,p,unit\n";
    for (Series src : {Series::Load, Series::Renewables}) {
      const TestResult lr = test_longrun(m, ws, src);
      const TestResult eff = effect_in_units(m, lr, src);
      out << "longrun_" << kSeriesNames[static_cast<int>(src)] << "," << lr.estimate << ","
          << lr.se << "," << lr.tstat << "," << lr.pvalue << ",sd\n";
      out << "longrun_" << kSeriesNames[static_cast<int>(src)] << "_units," << eff.estimate
          << "," << eff.se << "," << eff.tstat << "," << eff.pvalue << ",EUR/MWh per GWh\n";
    }
    const TestResult tr = trend_effect(m, ws);
    out << "trend," << tr.estimate << "," << tr.se << "," << tr.tstat << "," << tr.pvalue
        << ",EUR/MWh per year\n";
  }

  std::cout << "fit: n=" << m.n << " converged=" << (m.trace.converged ? "yes" : "no");
  for (int i = 0; i < kNumSeries; ++i) std::cout << " df_" << kSeriesNames[i] << "=" << m.eq[i].df;
  std::cout << "\n";
  return 0;
}

int cmd_forecast(const Common& c, const std::string& model_path, int horizon, int mc,
                 std::vector<double> levels) {
  const ModelFit m = load_model(model_path);
  const HourlyPanel raw = read_panel(c);
  const HolidayCalendar holidays =
      read_holidays(c, raw.timestamps.front().date().year,
                    HourStamp{raw.timestamps.back().value + horizon + 24}.date().year);

  json extra{{"horizon", horizon}, {"mc", mc}, {"levels", levels}};
  const std::string hash = fnv1a(settings_json(c, extra).dump());
  auto out = open_output(c, "forecast.csv", hash);

  if (mc <= 0) {
    const Forecast f = forecast_point(m, raw, holidays, horizon);
    out << "timestamp,h";
    for (int i = 0; i < kNumSeries; ++i) out << "," << kSeriesNames[i];
    out << "\n";
    for (int h = 0; h < horizon; ++h) {
      out << ts_str(f.timestamps[static_cast<std::size_t>(h)]) << "," << h + 1;
      for (int i = 0; i < kNumSeries; ++i) out << "," << f.point(h, i);
      out << "\n";
    }
    return 0;
  }

  BandOptions opt;
  opt.levels = std::move(levels);
  opt.paths = mc;
  opt.seed = c.seed;
  const ForecastBands fb = forecast_bands(m, raw, holidays, horizon, opt);
  out << "timestamp,h";
  for (int i = 0; i < kNumSeries; ++i) out << "," << kSeriesNames[i];
  for (double lv : fb.levels)
    for (int i = 0; i < kNumSeries; ++i)
      out << "," << kSeriesNames[i] << "_lo" << std::lround(lv * 100) << ","
          << kSeriesNames[i] << "_hi" << std::lround(lv * 100);
  out << "\n";
  for (int h = 0; h < horizon; ++h) {
    out << ts_str(fb.central.timestamps[static_cast<std::size_t>(h)]) << "," << h + 1;
    for (int i = 0; i < kNumSeries; ++i) out << "," << fb.central.point(h, i);
    for (std::size_t l = 0; l < fb.levels.size(); ++l)
      for (int i = 0; i < kNumSeries; ++i)
        out << "," << fb.lower[l](h, i) << "," << fb.upper[l](h, i);
    out << "\n";
  }
  return 0;
}

int cmd_bench(const Common& c, const ModelFlags& f, const std::vector<std::string>& models,
              std::int64_t window, int horizon, int step, int ar_pmax, int var_pmax,
              int max_origins) {
  RollingOptions opt;
  opt.window = window;
  opt.horizon = horizon;
  opt.step = step;
  opt.ar_pmax = ar_pmax;
  opt.var_pmax = var_pmax;
  opt.max_origins = max_origins;
  opt.fit = make_fit_config(f);
  opt.run_model = false;
  opt.run_ar = false;
  opt.run_var = false;
  opt.run_persistent = false;
  for (const std::string& name : models) {
    if (name == "pvartarch") opt.run_model = true;
    else if (name == "pvar") opt.run_model = true;  // comes with the full fit
    else if (name == "ar") opt.run_ar = true;
    else if (name == "var") opt.run_var = true;
    else if (name == "persistent") opt.run_persistent = true;
  }

  const HourlyPanel panel = read_panel(c);
  const HolidayCalendar holidays =
      read_holidays(c, panel.timestamps.front().date().year,
                    panel.timestamps.back().date().year);
  const EvalReport report = rolling_study(panel, holidays, opt);

  json extra{{"models", models}, {"window", window},   {"horizon", horizon},
             {"step", step},     {"ar_pmax", ar_pmax}, {"var_pmax", var_pmax}};
  const std::string hash = fnv1a(settings_json(c, extra).dump());

  {
    auto out = open_output(c, "bench_report.csv", hash);
    out << "model,h,mae,mmae\n";
    for (std::size_t mth = 0; mth < report.methods.size(); ++mth)
      for (int h = 0; h < horizon; ++h)
        out << report.methods[mth] << "," << h + 1 << "," << report.mae[mth](h) << ","
            << report.mmae[mth](h) << "\n";
    out << "# origins=" << report.origins << "\n";
  }
  {
    auto out = open_output(c, "bench_summary.csv", hash);
    out << "h";
    for (const auto& mname : report.methods) out << ",mae_" << mname << ",mmae_" << mname;
    out << "\n";
    for (int h : {1, 4, 8, 12, 16, 20, 24, 168, 672}) {
      if (h > horizon) continue;
      out << h;
      for (std::size_t mth = 0; mth < report.methods.size(); ++mth)
        out << "," << report.mae[mth](h - 1) << "," << report.mmae[mth](h - 1);
      out << "\n";
    }
  }
  std::cout << "bench: origins=" << report.origins << "\n";
  return 0;
}

int cmd_simulate(const Common& c, std::size_t n, const std::string& start_date) {
  SyntheticModel model = SyntheticModel::standard();
  SimulateOptions opt;
  opt.n = n;
  opt.seed = c.seed;
  opt.start = make_hour(parse_date(start_date), 0);

  const int y0 = opt.start.date().year - 2;
  const int y1 = HourStamp{opt.start.value + static_cast<std::int64_t>(n) + 24}.date().year + 1;
  const HolidayCalendar holidays =
      c.holidays.empty() ? german_holidays(y0, y1) : load_holidays(c.holidays);

  const HourlyPanel panel = simulate_from(model, holidays, opt);
  fs::create_directories(c.out_dir);
  write_panel(panel, (fs::path(c.out_dir) / "synthetic_panel.csv").string());
  write_holidays(holidays, (fs::path(c.out_dir) / "holidays.csv").string());
  std::cout << "simulate: wrote " << panel.n() << " hours starting " << ts_str(opt.start) << "\n";
  return 0;
}

int cmd_inspect(const std::string& model_path) {
  const ModelFit m = load_model(model_path);
  std::cout << "model: " << kModelFormat << "\n"
            << "sample: start=" << ts_str(m.start) << " n=" << m.n << " t_min=" << m.t_min << "\n"
            << "estimation: passes=" << m.trace.steps.size()
            << " converged=" << (m.trace.converged ? "yes" : "no")
            << " variance_model=" << (m.config.tarch ? "tarch" : "none") << "\n";
  for (int i = 0; i < kNumSeries; ++i) {
    const EquationFit& eq = m.eq[i];
    std::cout << kSeriesNames[i] << ": columns=" << eq.columns.size()
              << " (reference " << DesignSystem::kReferenceParamCount[i] << ")"
              << " active=" << eq.df << " lambda=" << eq.lambda << " aic=" << eq.aic;
    if (eq.tarch.alpha.size() > 0)
      std::cout << " tarch_columns=" << eq.tarch.alpha.size() << " (reference "
                << DesignSystem::kReferenceTarchParamCount[i] << ")"
                << " tarch_active=" << eq.tarch.active.size() << " gamma=" << eq.tarch.gamma;
    std::cout << "\n";
    std::cout << "  standardization: mean=" << m.stats[static_cast<std::size_t>(i)].mean
              << " sd=" << m.stats[static_cast<std::size_t>(i)].sd << "\n";
  }
  return 0;
}

int map_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  if (dynamic_cast<const MissingInput*>(&e) || dynamic_cast<const MissingColumn*>(&e)) return 3;
  if (dynamic_cast<const UnparsableRow*>(&e) || dynamic_cast<const NonMonotonicTimestamps*>(&e) ||
      dynamic_cast<const AmbiguityUnresolvable*>(&e))
    return 4;
  if (dynamic_cast<const SampleTooShort*>(&e) || dynamic_cast<const DegenerateSeries*>(&e) ||
      dynamic_cast<const NonFiniteInput*>(&e) || dynamic_cast<const HistoryTooShort*>(&e) ||
      dynamic_cast<const HolidayCoverage*>(&e))
    return 5;
  if (dynamic_cast<const RankCollapse*>(&e)) return 6;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("hourly electricity price model: estimation, forecasting and "
                           "benchmarking\n") + kExitCodeDoc};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; flags override");

  Common c_fit, c_forecast, c_bench, c_sim;
  ModelFlags f_fit, f_bench;
  std::string fit_model_name = "model.json";
  std::string forecast_model, inspect_model;
  int horizon = 168;
  int mc = 1000;
  std::vector<double> levels{0.90, 0.99};
  std::vector<std::string> bench_models{"pvartarch", "pvar", "ar", "var", "persistent"};
  std::int64_t bench_window = 18481;
  int bench_horizon = 672, bench_step = 24, ar_pmax = 1210, var_pmax = 555, max_origins = 0;
  std::size_t sim_n = 20000;
  std::string sim_start = "2019-01-01";

  auto* fit = app.add_subcommand("fit", "estimate the model and write diagnostics");
  add_common(fit, c_fit, true);
  add_model_flags(fit, f_fit);
  fit->add_option("--model-name", fit_model_name, "model file name inside --out-dir")
      ->capture_default_str();

  auto* forecast = app.add_subcommand("forecast", "forecast from a fitted model");
  add_common(forecast, c_forecast, true);
  forecast->add_option("--model", forecast_model, "model file from fit")->required();
  forecast->add_option("--horizon", horizon, "forecast hours")->check(CLI::PositiveNumber)
      ->capture_default_str();
  forecast->add_option("--mc", mc, "bootstrap paths; 0 = point forecast only")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  forecast->add_option("--levels", levels, "prediction band levels")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "rolling out-of-sample comparison");
  add_common(bench, c_bench, true);
  add_model_flags(bench, f_bench);
  bench->add_option("--models", bench_models, "models to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"pvartarch", "pvar", "ar", "var", "persistent"}))
      ->capture_default_str();
  bench->add_option("--window", bench_window, "estimation window length (hours)")
      ->capture_default_str();
  bench->add_option("--horizon", bench_horizon, "forecast horizon")->capture_default_str();
  bench->add_option("--step", bench_step, "origin step (hours)")->capture_default_str();
  bench->add_option("--ar-pmax", ar_pmax, "univariate order cap")->capture_default_str();
  bench->add_option("--var-pmax", var_pmax, "bivariate order cap")->capture_default_str();
  bench->add_option("--max-origins", max_origins, "stop after this many origins (0 = all)")
      ->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "generate a synthetic panel");
  add_common(simulate, c_sim, false);
  simulate->add_option("--n", sim_n, "hours to generate")->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--start", sim_start, "first day (YYYY-MM-DD)")->capture_default_str();

  auto* inspect = app.add_subcommand("inspect", "summarize a model file");
  inspect->add_option("--model", inspect_model, "model file from fit")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fit->parsed()) {
      Eigen::setNbThreads(c_fit.threads);
      return cmd_fit(c_fit, f_fit, fit_model_name);
    }
    if (forecast->parsed()) {
      Eigen::setNbThreads(c_forecast.threads);
      return cmd_forecast(c_forecast, forecast_model, horizon, mc, levels);
    }
    if (bench->parsed()) {
      Eigen::setNbThreads(c_bench.threads);
      return cmd_bench(c_bench, f_bench, bench_models, bench_window, bench_horizon, bench_step,
                       ar_pmax, var_pmax, max_origins);
    }
    if (simulate->parsed()) return cmd_simulate(c_sim, sim_n, sim_start);
    if (inspect->parsed()) return cmd_inspect(inspect_model);
  } catch (const std::exception& e) {
    return map_error(e);
  }
  return 2;
}
