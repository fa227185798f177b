#ifndef SPOTCAST_PANEL_HPP_
#define SPOTCAST_PANEL_HPP_

#include <array>
#include <string>
#include <vector>

#include "spotcast/civil_time.hpp"

namespace spotcast {

enum class Series { Price = 0, Load = 1, Renewables = 2 };
inline constexpr int kNumSeries = 3;
inline constexpr const char* kSeriesNames[kNumSeries] = {"price", "load", "renewables"};

struct SeriesStats {
  double mean = 0.0;
  double sd = 1.0;
};

// Aligned hourly panel of price (EUR/MWh), load (MW) and combined wind +
// solar feed-in (MW). Timestamps live on the nominal local grid; after
// normalize_dst() the grid is gapless with exactly one row per wall-clock
// hour.
struct HourlyPanel {
  std::vector<HourStamp> timestamps;
  std::vector<double> price;
  std::vector<double> load;
  std::vector<double> renewables;
  bool standardized = false;
  std::array<SeriesStats, kNumSeries> stats{};

  std::size_t n() const { return timestamps.size(); }
  const std::vector<double>& series(Series s) const {
    switch (s) {
      case Series::Price: return price;
      case Series::Load: return load;
      default: return renewables;
    }
  }
  std::vector<double>& series(Series s) {
    return const_cast<std::vector<double>&>(static_cast<const HourlyPanel*>(this)->series(s));
  }
};

// Column-name mapping for delimited input files.
struct PanelSchema {
  std::string timestamp = "timestamp";
  std::string price = "price_eur_mwh";
  std::string load = "load_mw";
  std::string wind = "wind_mw";
  std::string solar = "solar_mw";
};

// Reads a comma-separated file with a header row. Renewables are the sum of
// the wind and solar columns. Rows are sorted by timestamp; a duplicated
// local hour is accepted only where the autumn DST transition permits it.
HourlyPanel load_panel(const std::string& path, const PanelSchema& schema = {});

// Removes the duplicated October hour (first occurrence kept) and fills the
// missing March hour with the midpoint of its neighbours, yielding a gapless
// hourly grid. Idempotent.
HourlyPanel normalize_dst(const HourlyPanel& panel);

// Replaces each series by (y - mean) / sd, recording the stats.
HourlyPanel standardize(const HourlyPanel& panel);

// Inverse of standardize() for a single value.
inline double destandardize(double value, const SeriesStats& s) { return value * s.sd + s.mean; }

// Writes a panel in the load_panel() input format. Renewables are split
// evenly between the wind and solar columns.
void write_panel(const HourlyPanel& panel, const std::string& path);

}  // namespace spotcast

#endif  // SPOTCAST_PANEL_HPP_
