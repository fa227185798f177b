#ifndef SPOTCAST_CIVIL_TIME_HPP_
#define SPOTCAST_CIVIL_TIME_HPP_

#include <cstdint>
#include <string>

namespace spotcast {

// A calendar date (proleptic Gregorian).
struct CivilDate {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  friend bool operator==(const CivilDate&, const CivilDate&) = default;
  auto operator<=>(const CivilDate&) const = default;
};

// Days since 1970-01-01.
std::int64_t days_from_civil(const CivilDate& d);
CivilDate civil_from_days(std::int64_t days);

// 0 = Monday ... 6 = Sunday.
int weekday_from_days(std::int64_t days);

// A wall-clock hour on the gapless nominal local grid: hours since
// 1970-01-01 00:00 local time. After DST normalization every calendar day
// has exactly 24 of these.
struct HourStamp {
  std::int64_t value = 0;  // hours since epoch, local nominal time

  CivilDate date() const { return civil_from_days(value >= 0 ? value / 24 : (value - 23) / 24); }
  int hour() const {
    int h = static_cast<int>(value % 24);
    return h < 0 ? h + 24 : h;
  }
  int weekday() const { return weekday_from_days(value >= 0 ? value / 24 : (value - 23) / 24); }

  friend bool operator==(const HourStamp&, const HourStamp&) = default;
  auto operator<=>(const HourStamp&) const = default;
};

HourStamp make_hour(const CivilDate& d, int hour);

// Date of the last Sunday of the given month.
CivilDate last_sunday(int year, int month);

// EU daylight saving rule on the nominal local grid: summer time is in
// force from 02:00 on the last Sunday of March up to (exclusive) 03:00 on
// the last Sunday of October. On the normalized grid the spring day keeps
// hours 0 and 1 in winter time and the autumn day keeps hour 2 in summer
// time (first occurrence of the duplicated hour).
bool is_summer_time(HourStamp t);

// Parsed ISO-8601 timestamp with zone offset, e.g. 2012-10-03T14:00:00+02:00.
struct ZonedTime {
  CivilDate date;
  int hour = 0;
  int minute = 0;
  int second = 0;
  int offset_minutes = 0;

  HourStamp local_hour() const { return make_hour(date, hour); }
  std::int64_t utc_seconds() const;
};

ZonedTime parse_iso8601(const std::string& s);
std::string format_iso8601(HourStamp t, int offset_minutes);
std::string format_date(const CivilDate& d);
CivilDate parse_date(const std::string& s);

}  // namespace spotcast

#endif  // SPOTCAST_CIVIL_TIME_HPP_
