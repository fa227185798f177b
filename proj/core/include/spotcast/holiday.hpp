#ifndef SPOTCAST_HOLIDAY_HPP_
#define SPOTCAST_HOLIDAY_HPP_

#include <set>
#include <string>

#include "spotcast/civil_time.hpp"

namespace spotcast {

// National and regional public holidays. National holidays count as
// Sundays, regional ones (holidays observed by at least a quarter of the
// population, plus Christmas Eve and New Year's Eve) as Saturdays.
class HolidayCalendar {
 public:
  HolidayCalendar() = default;

  void add_national(const CivilDate& d) { national_.insert(d); }
  void add_regional(const CivilDate& d) {
    if (!national_.count(d)) regional_.insert(d);
  }

  bool is_national(const CivilDate& d) const { return national_.count(d) > 0; }
  bool is_regional(const CivilDate& d) const { return !national_.count(d) && regional_.count(d) > 0; }

  // Year range the calendar is good for; forecasts beyond it are rejected.
  bool covers_year(int year) const { return year >= first_year_ && year <= last_year_; }
  void set_coverage(int first_year, int last_year) {
    first_year_ = first_year;
    last_year_ = last_year;
  }

  const std::set<CivilDate>& national() const { return national_; }
  const std::set<CivilDate>& regional() const { return regional_; }

 private:
  std::set<CivilDate> national_;
  std::set<CivilDate> regional_;
  int first_year_ = -100000;
  int last_year_ = 100000;
};

// Easter Sunday by the anonymous Gregorian computus.
CivilDate easter_sunday(int year);

// German national holidays plus the curated regional set (Epiphany, Corpus
// Christi, All Saints' Day, Christmas Eve, New Year's Eve) for the given
// year range, inclusive.
HolidayCalendar german_holidays(int first_year, int last_year);

// File format: CSV with columns date (ISO-8601), kind in {national,
// regional}, name.
HolidayCalendar load_holidays(const std::string& path);
void write_holidays(const HolidayCalendar& cal, const std::string& path);

}  // namespace spotcast

#endif  // SPOTCAST_HOLIDAY_HPP_
