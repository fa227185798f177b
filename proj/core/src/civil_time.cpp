#include "spotcast/civil_time.hpp"

#include <cstdio>
#include <cstdlib>

#include "spotcast/errors.hpp"

namespace spotcast {

std::int64_t days_from_civil(const CivilDate& d) {
  // Howard Hinnant's algorithm, valid over the full proleptic range.
  std::int64_t y = d.year;
  const int m = d.month;
  const int dd = d.day;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + dd - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int weekday_from_days(std::int64_t days) {
  // 1970-01-01 was a Thursday (index 3 with Monday = 0).
  std::int64_t w = (days + 3) % 7;
  return static_cast<int>(w < 0 ? w + 7 : w);
}

HourStamp make_hour(const CivilDate& d, int hour) {
  return HourStamp{days_from_civil(d) * 24 + hour};
}

CivilDate last_sunday(int year, int month) {
  static const int mdays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int dim = mdays[month - 1];
  if (month == 2 && ((year % 4 == 0 && year % 100 != 0) || year % 400 == 0)) dim = 29;
  CivilDate last{year, month, dim};
  int wd = weekday_from_days(days_from_civil(last));  // 6 = Sunday
  last.day -= (wd + 1) % 7;
  return last;
}

bool is_summer_time(HourStamp t) {
  const CivilDate d = t.date();
  const HourStamp begin = make_hour(last_sunday(d.year, 3), 2);
  const HourStamp end = make_hour(last_sunday(d.year, 10), 3);
  return t >= begin && t < end;
}

std::int64_t ZonedTime::utc_seconds() const {
  return (days_from_civil(date) * 24 + hour) * 3600 + minute * 60 + second -
         static_cast<std::int64_t>(offset_minutes) * 60;
}

ZonedTime parse_iso8601(const std::string& s) {
  ZonedTime z;
  int y, mo, d, h, mi = 0, se = 0;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d%n", &y, &mo, &d, &h, &mi, &se, &consumed) < 6 ||
      consumed == 0) {
    if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d%n", &y, &mo, &d, &h, &mi, &consumed) < 5 ||
        consumed == 0) {
      throw Error("unparsable timestamp: " + s);
    }
    se = 0;
  }
  z.date = CivilDate{y, mo, d};
  z.hour = h;
  z.minute = mi;
  z.second = se;
  const char* rest = s.c_str() + consumed;
  if (*rest == '\0') {
    z.offset_minutes = 0;
  } else if (*rest == 'Z') {
    z.offset_minutes = 0;
  } else if (*rest == '+' || *rest == '-') {
    int oh = 0, om = 0;
    if (std::sscanf(rest + 1, "%d:%d", &oh, &om) < 1) {
      throw Error("unparsable zone offset in timestamp: " + s);
    }
    z.offset_minutes = (oh * 60 + om) * (*rest == '-' ? -1 : 1);
  } else {
    throw Error("unparsable zone offset in timestamp: " + s);
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23) {
    throw Error("timestamp out of range: " + s);
  }
  return z;
}

std::string format_iso8601(HourStamp t, int offset_minutes) {
  const CivilDate d = t.date();
  char buf[40];
  const char sign = offset_minutes < 0 ? '-' : '+';
  const int ao = std::abs(offset_minutes);
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00:00%c%02d:%02d", d.year, d.month, d.day,
                t.hour(), sign, ao / 60, ao % 60);
  return buf;
}

std::string format_date(const CivilDate& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

CivilDate parse_date(const std::string& s) {
  int y, m, d;
  if (std::sscanf(s.c_str(), "%d-%d-%d", &y, &m, &d) != 3) {
    throw Error("unparsable date: " + s);
  }
  return CivilDate{y, m, d};
}

}  // namespace spotcast
