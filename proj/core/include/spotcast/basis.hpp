#ifndef SPOTCAST_BASIS_HPP_
#define SPOTCAST_BASIS_HPP_

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "spotcast/calendar.hpp"
#include "spotcast/panel.hpp"

namespace spotcast {

// Knot spacings and periodicities of the deterministic bases. The defaults
// give 23 weekly-group columns, 12 annual columns for price/load and 35
// daily-by-annual interaction columns for the renewables equation.
struct BasisConfig {
  int degree = 3;
  double weekly_knot_distance = 4.0;
  double daily_knot_distance = 4.0;
  double daily_period = 24.0;
  double annual_period = 24.0 * 365.24;  // 8765.76
  int annual_count_price_load = 12;      // eta_annual for P and L
  int annual_count_renewables = 6;       // eta_annual for R
  int daily_count = 6;                   // eta_daily

  double annual_knot_distance_price_load() const {
    return annual_period / annual_count_price_load;
  }
  double annual_knot_distance_renewables() const {
    return annual_period / annual_count_renewables;
  }
  // Cumulative column boundaries C of the weekly groups (divided by the
  // weekly knot distance), last group shortened by one column.
  std::array<int, kNumGroups + 1> weekly_boundaries() const;
  int weekly_columns() const { return weekly_boundaries().back(); }
  int columns(Series i) const {
    if (i == Series::Renewables) return daily_count * annual_count_renewables - 1;
    return weekly_columns() + annual_count_price_load;
  }
};

// Evaluated deterministic basis functions, one row per panel hour.
struct BasisMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> labels;

  Eigen::Index cols() const { return values.cols(); }
  Eigen::Index rows() const { return values.rows(); }
};

// The 23 weekly-group columns for the price/load equations: column j of
// group g sums splines anchored on the group's time set, successive in-group
// columns being knot-distance shifts of each other.
BasisMatrix weekly_group_basis(const DayGroupCalendar& cal, const BasisConfig& cfg = {});

// Annual columns for price/load (strictly periodic with the annual period).
BasisMatrix annual_basis(std::size_t n, const BasisConfig& cfg = {});

// Daily-by-annual product columns for the renewables equation, without the
// DST shift. Column j pairs daily factor h1 = j mod eta_daily + 1 with
// annual factor h2 = j div eta_annual + 1; the all-constant pair is omitted.
BasisMatrix daily_annual_interaction_basis(std::size_t n, const BasisConfig& cfg = {});

// Applies the summer-time shift: rows with dst set are re-evaluated one hour
// ahead. Used for all renewables-equation columns.
BasisMatrix dst_shift_renewable_basis(const std::vector<std::uint8_t>& dst, std::size_t n,
                                      const BasisConfig& cfg = {});

// Full per-equation basis: weekly + annual for price/load, DST-shifted
// interactions for renewables.
BasisMatrix equation_basis(Series i, const DayGroupCalendar& cal, const BasisConfig& cfg = {});

// Writes a labeled basis matrix as CSV for inspection.
void dump_basis(const BasisMatrix& basis, const std::string& path);

}  // namespace spotcast

#endif  // SPOTCAST_BASIS_HPP_
