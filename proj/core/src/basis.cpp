#include "spotcast/basis.hpp"

#include <cmath>
#include <fstream>

#include "spotcast/bspline.hpp"
#include "spotcast/errors.hpp"

namespace spotcast {

std::array<int, kNumGroups + 1> BasisConfig::weekly_boundaries() const {
  std::array<int, kNumGroups + 1> c{};
  c[0] = 0;
  for (int g = 0; g < kNumGroups; ++g) {
    c[g + 1] = c[g] + static_cast<int>(std::lround(kGroupHours[g] / weekly_knot_distance));
  }
  c[kNumGroups] -= 1;  // drop the last column: the full set sums to a constant
  return c;
}

BasisMatrix weekly_group_basis(const DayGroupCalendar& cal, const BasisConfig& cfg) {
  const std::size_t n = cal.n();
  if (n < 168) throw SampleTooShort("weekly group basis needs at least one full week");
  const auto bounds = cfg.weekly_boundaries();
  const double dk = cfg.weekly_knot_distance;
  const double radius = dk * (cfg.degree + 1) / 2.0;

  BasisMatrix out;
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), bounds.back());
  out.labels.resize(bounds.back());
  for (int g = 0; g < kNumGroups; ++g) {
    for (int col = bounds[g]; col < bounds[g + 1]; ++col) {
      out.labels[col] = std::string("weekly:") + kGroupNames[g] + ":" +
                        std::to_string(col - bounds[g] + 1);
      const double offset = (col - bounds[g]) * dk;
      for (std::int64_t anchor : cal.time_sets[g]) {
        const double center = static_cast<double>(anchor) + offset;
        const std::int64_t lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(
                                                              std::ceil(center - radius)));
        const std::int64_t hi = std::min<std::int64_t>(
            static_cast<std::int64_t>(n) - 1, static_cast<std::int64_t>(std::floor(center + radius)));
        for (std::int64_t t = lo; t <= hi; ++t) {
          out.values(t, col) +=
              eval_bspline({cfg.degree, dk, center}, static_cast<double>(t));
        }
      }
    }
  }
  return out;
}

BasisMatrix annual_basis(std::size_t n, const BasisConfig& cfg) {
  const double dk = cfg.annual_knot_distance_price_load();
  const int count = cfg.annual_count_price_load;
  BasisMatrix out;
  out.values.resize(static_cast<Eigen::Index>(n), count);
  out.labels.resize(count);
  for (int m = 0; m < count; ++m) {
    out.labels[m] = "annual:" + std::to_string(m + 1);
    for (std::size_t t = 0; t < n; ++t) {
      out.values(static_cast<Eigen::Index>(t), m) = eval_periodic_bspline(
          static_cast<double>(t), cfg.annual_period, m * dk, dk, cfg.degree);
    }
  }
  return out;
}

namespace {

double daily_factor(double t, int h1, const BasisConfig& cfg) {
  if (h1 == 1) return 1.0;
  return eval_periodic_bspline(t, cfg.daily_period, (h1 - 2) * cfg.daily_knot_distance,
                               cfg.daily_knot_distance, cfg.degree);
}

double annual_factor_renewables(double t, int h2, const BasisConfig& cfg) {
  if (h2 == 1) return 1.0;
  const double dk = cfg.annual_knot_distance_renewables();
  return eval_periodic_bspline(t, cfg.annual_period, (h2 - 2) * dk, dk, cfg.degree);
}

BasisMatrix interaction_basis_at(std::size_t n, const BasisConfig& cfg,
                                 const std::vector<std::uint8_t>* dst) {
  const int cols = cfg.daily_count * cfg.annual_count_renewables - 1;
  BasisMatrix out;
  out.values.resize(static_cast<Eigen::Index>(n), cols);
  out.labels.resize(cols);
  for (int j = 1; j <= cols; ++j) {
    const int h1 = j % cfg.daily_count + 1;
    const int h2 = j / cfg.annual_count_renewables + 1;
    out.labels[j - 1] = "daily_annual:" + std::to_string(h1) + "x" + std::to_string(h2);
    for (std::size_t t = 0; t < n; ++t) {
      const double te = static_cast<double>(t) + ((dst && (*dst)[t]) ? 1.0 : 0.0);
      out.values(static_cast<Eigen::Index>(t), j - 1) =
          daily_factor(te, h1, cfg) * annual_factor_renewables(te, h2, cfg);
    }
  }
  return out;
}

}  // namespace

BasisMatrix daily_annual_interaction_basis(std::size_t n, const BasisConfig& cfg) {
  return interaction_basis_at(n, cfg, nullptr);
}

BasisMatrix dst_shift_renewable_basis(const std::vector<std::uint8_t>& dst, std::size_t n,
                                      const BasisConfig& cfg) {
  return interaction_basis_at(n, cfg, &dst);
}

BasisMatrix equation_basis(Series i, const DayGroupCalendar& cal, const BasisConfig& cfg) {
  const std::size_t n = cal.n();
  if (i == Series::Renewables) return dst_shift_renewable_basis(cal.dst, n, cfg);
  BasisMatrix weekly = weekly_group_basis(cal, cfg);
  BasisMatrix annual = annual_basis(n, cfg);
  BasisMatrix out;
  out.values.resize(weekly.rows(), weekly.cols() + annual.cols());
  out.values << weekly.values, annual.values;
  out.labels = weekly.labels;
  out.labels.insert(out.labels.end(), annual.labels.begin(), annual.labels.end());
  return out;
}

void dump_basis(const BasisMatrix& basis, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "t";
  for (const auto& label : basis.labels) out << "," << label;
  out << "\n";
  for (Eigen::Index r = 0; r < basis.rows(); ++r) {
    out << r;
    for (Eigen::Index c = 0; c < basis.cols(); ++c) out << "," << basis.values(r, c);
    out << "\n";
  }
}

}  // namespace spotcast
