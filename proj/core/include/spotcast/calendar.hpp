#ifndef SPOTCAST_CALENDAR_HPP_
#define SPOTCAST_CALENDAR_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "spotcast/civil_time.hpp"
#include "spotcast/holiday.hpp"

namespace spotcast {

// The five day groups. Enumerator order fixes the group index g used by the
// weekly basis construction.
enum class DayGroup : int { FullOff = 0, SemiOff = 1, PhaseIn = 2, PhaseOut = 3, Normal = 4 };
inline constexpr int kNumGroups = 5;
inline constexpr const char* kGroupNames[kNumGroups] = {"full_off", "semi_off", "phase_in",
                                                        "phase_out", "normal"};
// Unique parameterized hours per group.
inline constexpr int kGroupHours[kNumGroups] = {24, 24, 12, 12, 24};

struct ClassifyOptions {
  // When an hour qualifies for both phases (cannot happen with
  // midnight-aligned off days, kept switchable), phase-in wins by default.
  bool phase_in_precedence = true;
};

// Per-hour day-group assignment plus the group anchor sets and DST mask,
// aligned with a panel's timestamps.
struct DayGroupCalendar {
  std::vector<HourStamp> timestamps;
  std::vector<DayGroup> groups;
  // time_sets[g]: 0-based hour positions of the first hour of every
  // occurrence of group g (hour 0 for the off groups and phase-out, noon for
  // phase-in and normal).
  std::array<std::vector<std::int64_t>, kNumGroups> time_sets;
  std::vector<std::uint8_t> dst;  // 1 when summer time is in force

  std::size_t n() const { return groups.size(); }
};

// Classifies every hour: Sundays and national holidays are full-off days,
// Saturdays and regional holidays semi-off, the 12 hours before an off day
// phase-in, the 12 hours after phase-out, everything else normal.
DayGroupCalendar classify_hours(const std::vector<HourStamp>& timestamps,
                                const HolidayCalendar& holidays, const ClassifyOptions& opt = {});

// Group of a single hour, independent of any sample window.
DayGroup classify_hour(HourStamp t, const HolidayCalendar& holidays,
                       const ClassifyOptions& opt = {});

// Summer-time mask for a timestamp sequence.
std::vector<std::uint8_t> dst_mask(const std::vector<HourStamp>& timestamps);

}  // namespace spotcast

#endif  // SPOTCAST_CALENDAR_HPP_
