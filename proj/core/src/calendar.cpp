#include "spotcast/calendar.hpp"

namespace spotcast {

namespace {

enum class OffKind { None, Full, Semi };

OffKind off_kind(const CivilDate& d, const HolidayCalendar& holidays) {
  const int wd = weekday_from_days(days_from_civil(d));
  if (wd == 6 || holidays.is_national(d)) return OffKind::Full;
  if (wd == 5 || holidays.is_regional(d)) return OffKind::Semi;
  return OffKind::None;
}

}  // namespace

DayGroup classify_hour(HourStamp t, const HolidayCalendar& holidays, const ClassifyOptions& opt) {
  const CivilDate today = t.date();
  const OffKind own = off_kind(today, holidays);
  if (own == OffKind::Full) return DayGroup::FullOff;
  if (own == OffKind::Semi) return DayGroup::SemiOff;
  const int h = t.hour();
  const bool next_off =
      off_kind(civil_from_days(days_from_civil(today) + 1), holidays) != OffKind::None;
  const bool prev_off =
      off_kind(civil_from_days(days_from_civil(today) - 1), holidays) != OffKind::None;
  const bool in = h >= 12 && next_off;
  const bool out = h < 12 && prev_off;
  if (in && out) return opt.phase_in_precedence ? DayGroup::PhaseIn : DayGroup::PhaseOut;
  if (in) return DayGroup::PhaseIn;
  if (out) return DayGroup::PhaseOut;
  return DayGroup::Normal;
}

DayGroupCalendar classify_hours(const std::vector<HourStamp>& timestamps,
                                const HolidayCalendar& holidays, const ClassifyOptions& opt) {
  DayGroupCalendar cal;
  cal.timestamps = timestamps;
  cal.groups.reserve(timestamps.size());
  cal.dst = dst_mask(timestamps);
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    const HourStamp t = timestamps[i];
    const DayGroup g = classify_hour(t, holidays, opt);
    cal.groups.push_back(g);
    const int h = t.hour();
    const bool anchor = (g == DayGroup::FullOff || g == DayGroup::SemiOff ||
                         g == DayGroup::PhaseOut)
                            ? h == 0
                            : h == 12;
    if (anchor) cal.time_sets[static_cast<int>(g)].push_back(static_cast<std::int64_t>(i));
  }
  return cal;
}

std::vector<std::uint8_t> dst_mask(const std::vector<HourStamp>& timestamps) {
  std::vector<std::uint8_t> mask(timestamps.size());
  for (std::size_t i = 0; i < timestamps.size(); ++i) mask[i] = is_summer_time(timestamps[i]);
  return mask;
}

}  // namespace spotcast
