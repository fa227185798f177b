#include "spotcast/model_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "spotcast/errors.hpp"

namespace spotcast {

using nlohmann::json;

namespace {

json sparse(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j)
    if (v(j) != 0.0) out.push_back({j, v(j)});
  return out;
}

Eigen::VectorXd dense(const json& pairs, Eigen::Index size) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(size);
  for (const auto& p : pairs) {
    const Eigen::Index j = p.at(0).get<Eigen::Index>();
    if (j < 0 || j >= size) throw Error("model file: coefficient index out of range");
    v(j) = p.at(1).get<double>();
  }
  return v;
}

json lags_to_json(const LagSpec& lags) {
  json j;
  for (int i = 0; i < kNumSeries; ++i) {
    for (int k = 0; k < kNumSeries; ++k)
      j["mean"][kSeriesNames[i]][kSeriesNames[k]] = lags.lag_sets[i][k];
    j["periodic"][kSeriesNames[i]] = lags.periodic_lags[i];
    j["tarch"][kSeriesNames[i]] = lags.tarch_lags[i];
  }
  return j;
}

LagSpec lags_from_json(const json& j) {
  LagSpec lags;
  for (int i = 0; i < kNumSeries; ++i) {
    for (int k = 0; k < kNumSeries; ++k)
      lags.lag_sets[i][k] =
          j.at("mean").at(kSeriesNames[i]).at(kSeriesNames[k]).get<std::vector<int>>();
    lags.periodic_lags[i] = j.at("periodic").at(kSeriesNames[i]).get<std::vector<int>>();
    lags.tarch_lags[i] = j.at("tarch").at(kSeriesNames[i]).get<std::vector<int>>();
  }
  return lags;
}

json config_to_json(const FitConfig& c) {
  return json{{"basis",
               {{"degree", c.basis.degree},
                {"weekly_knot_distance", c.basis.weekly_knot_distance},
                {"daily_knot_distance", c.basis.daily_knot_distance},
                {"daily_period", c.basis.daily_period},
                {"annual_period", c.basis.annual_period},
                {"annual_count_price_load", c.basis.annual_count_price_load},
                {"annual_count_renewables", c.basis.annual_count_renewables},
                {"daily_count", c.basis.daily_count}}},
              {"lags", lags_to_json(c.lags)},
              {"phase_in_precedence", c.classify.phase_in_precedence},
              {"epsilon", c.epsilon},
              {"max_iterations", c.max_iterations},
              {"tarch", c.tarch},
              {"sigma_floor_rel", c.sigma_floor_rel}};
}

FitConfig config_from_json(const json& j) {
  FitConfig c;
  const json& b = j.at("basis");
  c.basis.degree = b.at("degree").get<int>();
  c.basis.weekly_knot_distance = b.at("weekly_knot_distance").get<double>();
  c.basis.daily_knot_distance = b.at("daily_knot_distance").get<double>();
  c.basis.daily_period = b.at("daily_period").get<double>();
  c.basis.annual_period = b.at("annual_period").get<double>();
  c.basis.annual_count_price_load = b.at("annual_count_price_load").get<int>();
  c.basis.annual_count_renewables = b.at("annual_count_renewables").get<int>();
  c.basis.daily_count = b.at("daily_count").get<int>();
  c.lags = lags_from_json(j.at("lags"));
  c.classify.phase_in_precedence = j.at("phase_in_precedence").get<bool>();
  c.epsilon = j.at("epsilon").get<double>();
  c.max_iterations = j.at("max_iterations").get<int>();
  c.tarch = j.at("tarch").get<bool>();
  c.sigma_floor_rel = j.at("sigma_floor_rel").get<double>();
  return c;
}

}  // namespace

json model_to_json(const ModelFit& m) {
  json j;
  j["format"] = kModelFormat;
  j["config"] = config_to_json(m.config);
  j["sample"] = {{"start", format_iso8601(m.start, is_summer_time(m.start) ? 120 : 60)},
                 {"start_hours", m.start.value},
                 {"n", m.n},
                 {"t_min", m.t_min}};
  for (int i = 0; i < kNumSeries; ++i)
    j["standardization"][kSeriesNames[i]] = {{"mean", m.stats[i].mean}, {"sd", m.stats[i].sd}};
  j["trend_denom"] = m.trend.denom;

  for (int i = 0; i < kNumSeries; ++i) {
    const EquationFit& eq = m.eq[i];
    json e;
    e["series"] = kSeriesNames[i];
    e["lambda"] = eq.lambda;
    e["aic"] = eq.aic;
    e["df"] = eq.df;
    e["theta"] = sparse(eq.theta);
    e["theta_first"] = sparse(eq.theta_first);
    if (eq.tarch.alpha.size() > 0) {
      e["tarch"] = {{"gamma", eq.tarch.gamma},
                    {"row_offset", eq.tarch.row_offset},
                    {"alpha", sparse(eq.tarch.alpha)}};
    }
    j["equations"].push_back(std::move(e));
  }

  json steps = json::array();
  for (const auto& s : m.trace.steps) {
    json st;
    st["iteration"] = s.iteration;
    for (int i = 0; i < kNumSeries; ++i) {
      json per;
      per["delta"] = std::isnan(s.delta[i]) ? json() : json(s.delta[i]);
      per["lambda"] = s.lambda[i];
      per["aic"] = s.aic[i];
      per["df"] = s.df[i];
      per["gamma"] = std::isnan(s.gamma[i]) ? json() : json(s.gamma[i]);
      st[kSeriesNames[i]] = std::move(per);
    }
    steps.push_back(std::move(st));
  }
  j["trace"] = {{"converged", m.trace.converged}, {"steps", std::move(steps)}};
  return j;
}

ModelFit model_from_json(const json& j) {
  if (j.value("format", "") != kModelFormat) throw Error("model file: unknown format");
  ModelFit m;
  m.config = config_from_json(j.at("config"));
  m.start = HourStamp{j.at("sample").at("start_hours").get<std::int64_t>()};
  m.n = j.at("sample").at("n").get<std::size_t>();
  m.t_min = j.at("sample").at("t_min").get<std::int64_t>();
  for (int i = 0; i < kNumSeries; ++i) {
    const json& s = j.at("standardization").at(kSeriesNames[i]);
    m.stats[i] = SeriesStats{s.at("mean").get<double>(), s.at("sd").get<double>()};
  }
  m.trend.denom = j.at("trend_denom").get<double>();

  const json& eqs = j.at("equations");
  if (eqs.size() != kNumSeries) throw Error("model file: expected three equations");
  for (int i = 0; i < kNumSeries; ++i) {
    const json& e = eqs.at(static_cast<std::size_t>(i));
    EquationFit& eq = m.eq[i];
    const Series series = static_cast<Series>(i);
    eq.equation = series;
    eq.columns = equation_columns(series, m.config.lags, m.config.basis.columns(series));
    eq.lambda = e.at("lambda").get<double>();
    eq.aic = e.at("aic").get<double>();
    eq.df = e.at("df").get<int>();
    const Eigen::Index p = static_cast<Eigen::Index>(eq.columns.size());
    eq.theta = dense(e.at("theta"), p);
    eq.theta_first = dense(e.at("theta_first"), p);
    if (e.contains("tarch")) {
      eq.tarch.columns = tarch_columns(m.config.lags.tarch_lags[i],
                                       m.config.basis.columns(series));
      eq.tarch.gamma = e.at("tarch").at("gamma").get<double>();
      eq.tarch.row_offset = e.at("tarch").at("row_offset").get<std::int64_t>();
      eq.tarch.alpha =
          dense(e.at("tarch").at("alpha"), static_cast<Eigen::Index>(eq.tarch.columns.size()));
      for (Eigen::Index a = 0; a < eq.tarch.alpha.size(); ++a)
        if (eq.tarch.alpha(a) != 0.0) eq.tarch.active.push_back(static_cast<int>(a));
    }
  }

  if (j.contains("trace")) {
    m.trace.converged = j.at("trace").at("converged").get<bool>();
    for (const auto& st : j.at("trace").at("steps")) {
      IterationTrace::Step s{};
      s.iteration = st.at("iteration").get<int>();
      for (int i = 0; i < kNumSeries; ++i) {
        const json& per = st.at(kSeriesNames[i]);
        s.delta[i] = per.at("delta").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                               : per.at("delta").get<double>();
        s.lambda[i] = per.at("lambda").get<double>();
        s.aic[i] = per.at("aic").get<double>();
        s.df[i] = per.at("df").get<int>();
        s.gamma[i] = per.at("gamma").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                               : per.at("gamma").get<double>();
      }
      m.trace.steps.push_back(s);
    }
  }
  return m;
}

void save_model(const ModelFit& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MissingInput("cannot open for writing: " + path);
  out << model_to_json(m).dump(1) << "\n";
}

ModelFit load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(std::string("model file: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace spotcast
