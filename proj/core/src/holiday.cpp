#include "spotcast/holiday.hpp"

#include <fstream>
#include <sstream>

#include "spotcast/errors.hpp"

namespace spotcast {

CivilDate easter_sunday(int year) {
  const int a = year % 19;
  const int b = year / 100;
  const int c = year % 100;
  const int d = b / 4;
  const int e = b % 4;
  const int f = (b + 8) / 25;
  const int g = (b - f + 1) / 3;
  const int h = (19 * a + b - d - g + 15) % 30;
  const int i = c / 4;
  const int k = c % 4;
  const int l = (32 + 2 * e + 2 * i - h - k) % 7;
  const int m = (a + 11 * h + 22 * l) / 451;
  const int month = (h + l - 7 * m + 114) / 31;
  const int day = ((h + l - 7 * m + 114) % 31) + 1;
  return CivilDate{year, month, day};
}

namespace {

CivilDate offset_from(const CivilDate& d, int days) {
  return civil_from_days(days_from_civil(d) + days);
}

}  // namespace

HolidayCalendar german_holidays(int first_year, int last_year) {
  HolidayCalendar cal;
  for (int y = first_year; y <= last_year; ++y) {
    const CivilDate easter = easter_sunday(y);
    cal.add_national(CivilDate{y, 1, 1});            // Neujahr
    cal.add_national(offset_from(easter, -2));       // Karfreitag
    cal.add_national(offset_from(easter, 1));        // Ostermontag
    cal.add_national(CivilDate{y, 5, 1});            // Tag der Arbeit
    cal.add_national(offset_from(easter, 39));       // Christi Himmelfahrt
    cal.add_national(offset_from(easter, 50));       // Pfingstmontag
    cal.add_national(CivilDate{y, 10, 3});           // Tag der Deutschen Einheit
    cal.add_national(CivilDate{y, 12, 25});          // 1. Weihnachtstag
    cal.add_national(CivilDate{y, 12, 26});          // 2. Weihnachtstag

    cal.add_regional(CivilDate{y, 1, 6});            // Heilige Drei Koenige
    cal.add_regional(offset_from(easter, 60));       // Fronleichnam
    cal.add_regional(CivilDate{y, 11, 1});           // Allerheiligen
    cal.add_regional(CivilDate{y, 12, 24});          // Heiligabend
    cal.add_regional(CivilDate{y, 12, 31});          // Silvester
  }
  cal.set_coverage(first_year, last_year);
  return cal;
}

HolidayCalendar load_holidays(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open holiday file: " + path);
  HolidayCalendar cal;
  std::string line;
  long lineno = 0;
  int first_year = 100000, last_year = -100000;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string date_s, kind, name;
    std::getline(ss, date_s, ',');
    std::getline(ss, kind, ',');
    std::getline(ss, name);
    if (!header_seen) {
      header_seen = true;
      if (date_s == "date") continue;
    }
    CivilDate d;
    try {
      d = parse_date(date_s);
    } catch (const Error&) {
      throw UnparsableRow(lineno, "bad date in holiday file: " + date_s);
    }
    if (kind == "national") {
      cal.add_national(d);
    } else if (kind == "regional") {
      cal.add_regional(d);
    } else {
      throw UnparsableRow(lineno, "holiday kind must be national or regional, got: " + kind);
    }
    first_year = std::min(first_year, d.year);
    last_year = std::max(last_year, d.year);
  }
  if (first_year <= last_year) cal.set_coverage(first_year, last_year);
  return cal;
}

void write_holidays(const HolidayCalendar& cal, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "date,kind,name\n";
  for (const auto& d : cal.national()) out << format_date(d) << ",national,\n";
  for (const auto& d : cal.regional()) out << format_date(d) << ",regional,\n";
}

}  // namespace spotcast
