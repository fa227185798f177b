#include "spotcast/panel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spotcast/errors.hpp"

namespace spotcast {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // Trim surrounding whitespace and CR.
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool is_autumn_transition_hour(HourStamp t) {
  const CivilDate d = t.date();
  return t.hour() == 2 && d == last_sunday(d.year, 10);
}

bool is_spring_transition_hour(HourStamp t) {
  const CivilDate d = t.date();
  return t.hour() == 2 && d == last_sunday(d.year, 3);
}

}  // namespace

HourlyPanel load_panel(const std::string& path, const PanelSchema& schema) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open data file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw Error("empty data file: " + path);
  const auto header = split_csv(line);
  auto column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw MissingColumn(name);
  };
  const std::size_t c_ts = column(schema.timestamp);
  const std::size_t c_price = column(schema.price);
  const std::size_t c_load = column(schema.load);
  const std::size_t c_wind = column(schema.wind);
  const std::size_t c_solar = column(schema.solar);

  struct Row {
    HourStamp t;
    int offset_minutes;
    double price, load, renewables;
  };
  std::vector<Row> rows;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv(line);
    const std::size_t need = std::max({c_ts, c_price, c_load, c_wind, c_solar}) + 1;
    if (fields.size() < need) throw UnparsableRow(lineno, "too few columns");
    try {
      const ZonedTime z = parse_iso8601(fields[c_ts]);
      Row r;
      r.t = z.local_hour();
      r.offset_minutes = z.offset_minutes;
      std::size_t pos = 0;
      r.price = std::stod(fields[c_price], &pos);
      const double wind = std::stod(fields[c_wind]);
      const double solar = std::stod(fields[c_solar]);
      r.load = std::stod(fields[c_load]);
      r.renewables = wind + solar;
      if (r.load < 0.0) throw Error("negative load");
      if (wind < 0.0 || solar < 0.0) throw Error("negative feed-in");
      rows.push_back(r);
    } catch (const std::exception& e) {
      throw UnparsableRow(lineno, e.what());
    }
  }
  if (rows.empty()) throw Error("no data rows in " + path);

  // Autumn duplicates: the summer-time row (larger offset) comes first.
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.offset_minutes > b.offset_minutes;
  });

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::int64_t diff = rows[i].t.value - rows[i - 1].t.value;
    if (diff == 1) continue;
    if (diff == 0) {
      if (rows[i].offset_minutes == rows[i - 1].offset_minutes)
        throw NonMonotonicTimestamps("duplicated timestamp at " +
                                     format_iso8601(rows[i].t, rows[i].offset_minutes));
      if (!is_autumn_transition_hour(rows[i].t))
        throw NonMonotonicTimestamps("duplicated local hour outside DST transition at " +
                                     format_iso8601(rows[i].t, rows[i].offset_minutes));
      continue;
    }
    if (diff == 2 && is_spring_transition_hour(HourStamp{rows[i - 1].t.value + 1})) continue;
    throw NonMonotonicTimestamps("non-hourly cadence near " +
                                 format_iso8601(rows[i].t, rows[i].offset_minutes));
  }

  HourlyPanel panel;
  panel.timestamps.reserve(rows.size());
  for (const Row& r : rows) {
    panel.timestamps.push_back(r.t);
    panel.price.push_back(r.price);
    panel.load.push_back(r.load);
    panel.renewables.push_back(r.renewables);
  }
  return panel;
}

HourlyPanel normalize_dst(const HourlyPanel& panel) {
  HourlyPanel out;
  out.standardized = panel.standardized;
  out.stats = panel.stats;
  const std::size_t n = panel.n();
  auto push = [&](HourStamp t, double p, double l, double r) {
    out.timestamps.push_back(t);
    out.price.push_back(p);
    out.load.push_back(l);
    out.renewables.push_back(r);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const HourStamp t = panel.timestamps[i];
    if (!out.timestamps.empty()) {
      const std::int64_t diff = t.value - out.timestamps.back().value;
      if (diff == 0) {
        // Duplicated autumn hour: keep the first occurrence.
        std::size_t dups = 1;
        while (i + dups < n && panel.timestamps[i + dups] == t) ++dups;
        if (dups != 1 || !is_autumn_transition_hour(t))
          throw AmbiguityUnresolvable("unexpected duplicated hour at " + format_iso8601(t, 0));
        continue;
      }
      if (diff == 2) {
        const HourStamp missing{t.value - 1};
        if (!is_spring_transition_hour(missing))
          throw AmbiguityUnresolvable("gap outside DST transition before " + format_iso8601(t, 0));
        push(missing, 0.5 * (out.price.back() + panel.price[i]),
             0.5 * (out.load.back() + panel.load[i]),
             0.5 * (out.renewables.back() + panel.renewables[i]));
      } else if (diff != 1) {
        throw AmbiguityUnresolvable("gap of " + std::to_string(diff) + " hours before " +
                                    format_iso8601(t, 0));
      }
    }
    push(t, panel.price[i], panel.load[i], panel.renewables[i]);
  }
  return out;
}

HourlyPanel standardize(const HourlyPanel& panel) {
  if (panel.n() < 2) throw SampleTooShort("standardize needs at least two observations");
  HourlyPanel out = panel;
  for (int s = 0; s < kNumSeries; ++s) {
    auto& v = out.series(static_cast<Series>(s));
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    if (!(sd > 0.0)) throw DegenerateSeries(std::string(kSeriesNames[s]) + " has zero variance");
    for (double& x : v) x = (x - mean) / sd;
    out.stats[s] = SeriesStats{mean, sd};
  }
  out.standardized = true;
  return out;
}

void write_panel(const HourlyPanel& panel, const std::string& path) {
  std::ofstream outf(path);
  if (!outf) throw Error("cannot write " + path);
  outf << "timestamp,price_eur_mwh,load_mw,wind_mw,solar_mw\n";
  char buf[160];
  for (std::size_t i = 0; i < panel.n(); ++i) {
    const HourStamp t = panel.timestamps[i];
    const int offset = is_summer_time(t) ? 120 : 60;
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f,%.6f\n",
                  format_iso8601(t, offset).c_str(), panel.price[i], panel.load[i],
                  panel.renewables[i] / 2.0, panel.renewables[i] / 2.0);
    outf << buf;
  }
}

}  // namespace spotcast
