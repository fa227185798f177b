#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "spotcast/calendar.hpp"
#include "spotcast/holiday.hpp"

using namespace spotcast;

TEST_CASE("easter computus against known dates") {
  CHECK(easter_sunday(2008) == CivilDate{2008, 3, 23});
  CHECK(easter_sunday(2011) == CivilDate{2011, 4, 24});
  CHECK(easter_sunday(2012) == CivilDate{2012, 4, 8});
  CHECK(easter_sunday(2013) == CivilDate{2013, 3, 31});
  CHECK(easter_sunday(2016) == CivilDate{2016, 3, 27});
  CHECK(easter_sunday(2024) == CivilDate{2024, 3, 31});
}

TEST_CASE("german holiday table") {
  HolidayCalendar cal = german_holidays(2013, 2013);
  CHECK(cal.covers_year(2013));
  CHECK_FALSE(cal.covers_year(2014));

  // Fixed national days.
  CHECK(cal.is_national({2013, 1, 1}));
  CHECK(cal.is_national({2013, 5, 1}));
  CHECK(cal.is_national({2013, 10, 3}));
  CHECK(cal.is_national({2013, 12, 25}));
  CHECK(cal.is_national({2013, 12, 26}));
  // Easter-relative national days (Easter 2013-03-31).
  CHECK(cal.is_national({2013, 3, 29}));  // Good Friday
  CHECK(cal.is_national({2013, 4, 1}));   // Easter Monday
  CHECK(cal.is_national({2013, 5, 9}));   // Ascension
  CHECK(cal.is_national({2013, 5, 20}));  // Whit Monday
  // Regional days.
  CHECK(cal.is_regional({2013, 1, 6}));    // Epiphany
  CHECK(cal.is_regional({2013, 5, 30}));   // Corpus Christi
  CHECK(cal.is_regional({2013, 11, 1}));   // All Saints
  CHECK(cal.is_regional({2013, 12, 24}));  // Christmas Eve
  CHECK(cal.is_regional({2013, 12, 31}));  // New Year's Eve
  // An ordinary day is neither.
  CHECK_FALSE(cal.is_national({2013, 6, 11}));
  CHECK_FALSE(cal.is_regional({2013, 6, 11}));
}

TEST_CASE("holiday file round trip") {
  HolidayCalendar cal = german_holidays(2012, 2014);
  const std::string path = std::string(std::tmpnam(nullptr)) + ".csv";
  write_holidays(cal, path);
  HolidayCalendar back = load_holidays(path);
  std::remove(path.c_str());
  CHECK(back.national() == cal.national());
  CHECK(back.regional() == cal.regional());
}

TEST_CASE("hour classification") {
  HolidayCalendar cal = german_holidays(2013, 2013);
  ClassifyOptions opt;

  // 2013-06-10 is a Monday, the 11th a Tuesday, both plain workdays.
  CHECK(classify_hour(make_hour({2013, 6, 11}, 10), cal, opt) == DayGroup::Normal);
  // Sunday 2013-06-09 is fully off.
  CHECK(classify_hour(make_hour({2013, 6, 9}, 10), cal, opt) == DayGroup::FullOff);
  // Saturday 2013-06-08 is semi off.
  CHECK(classify_hour(make_hour({2013, 6, 8}, 10), cal, opt) == DayGroup::SemiOff);
  // National holiday mid-week counts as a Sunday: 2013-05-01 (Wednesday).
  CHECK(classify_hour(make_hour({2013, 5, 1}, 10), cal, opt) == DayGroup::FullOff);
  // Regional holiday counts as a Saturday: 2013-05-30 (Thursday).
  CHECK(classify_hour(make_hour({2013, 5, 30}, 10), cal, opt) == DayGroup::SemiOff);
  // The 12 hours before an off day phase in: Friday 2013-06-07 evening.
  CHECK(classify_hour(make_hour({2013, 6, 7}, 18), cal, opt) == DayGroup::PhaseIn);
  CHECK(classify_hour(make_hour({2013, 6, 7}, 11), cal, opt) == DayGroup::Normal);
  // The 12 hours after an off day phase out: Monday 2013-06-10 morning.
  CHECK(classify_hour(make_hour({2013, 6, 10}, 5), cal, opt) == DayGroup::PhaseOut);
  CHECK(classify_hour(make_hour({2013, 6, 10}, 13), cal, opt) == DayGroup::Normal);
  // Inside a Saturday-Sunday block there is no phase-out on the Sunday.
  CHECK(classify_hour(make_hour({2013, 6, 9}, 5), cal, opt) == DayGroup::FullOff);
}

TEST_CASE("classify_hours aligns time sets with timestamps") {
  HolidayCalendar cal = german_holidays(2013, 2013);
  std::vector<HourStamp> ts;
  HourStamp t0 = make_hour({2013, 6, 3}, 0);  // Monday
  for (int i = 0; i < 14 * 24; ++i) ts.push_back(HourStamp{t0.value + i});
  DayGroupCalendar dgc = classify_hours(ts, cal);
  REQUIRE(dgc.n() == ts.size());

  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(dgc.groups[i] == classify_hour(ts[i], cal));

  // Anchors sit at hour 0 (off groups, phase-out) or noon (phase-in,
  // normal) of a day in their group.
  for (int g = 0; g < kNumGroups; ++g) {
    const DayGroup grp = static_cast<DayGroup>(g);
    const int anchor_hour =
        (grp == DayGroup::PhaseIn || grp == DayGroup::Normal) ? 12 : 0;
    for (std::int64_t pos : dgc.time_sets[g]) {
      REQUIRE(pos >= 0);
      REQUIRE(static_cast<std::size_t>(pos) < ts.size());
      CHECK(dgc.groups[static_cast<std::size_t>(pos)] == grp);
      CHECK(ts[static_cast<std::size_t>(pos)].hour() == anchor_hour);
    }
  }

  // Two plain weeks: two Sundays (full off), two Saturdays (semi off), two
  // phase-out Monday mornings, two phase-in Friday evenings, and Mon-Thu
  // noons as normal anchors.
  CHECK(dgc.time_sets[static_cast<int>(DayGroup::FullOff)].size() == 2);
  CHECK(dgc.time_sets[static_cast<int>(DayGroup::SemiOff)].size() == 2);
  CHECK(dgc.time_sets[static_cast<int>(DayGroup::PhaseOut)].size() == 2);
  CHECK(dgc.time_sets[static_cast<int>(DayGroup::PhaseIn)].size() == 2);
  CHECK(dgc.time_sets[static_cast<int>(DayGroup::Normal)].size() == 8);

  // DST mask: all summer over this range.
  for (auto d : dgc.dst) CHECK(d == 1);
}
