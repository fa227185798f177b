#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "spotcast/errors.hpp"
#include "spotcast/panel.hpp"

using namespace spotcast;

namespace {

struct TempCsv {
  std::string path;
  explicit TempCsv(const std::string& body) {
    path = std::string(std::tmpnam(nullptr)) + ".csv";
    std::ofstream out(path);
    out << body;
  }
  ~TempCsv() { std::remove(path.c_str()); }
};

const char* kHeader = "timestamp,price_eur_mwh,load_mw,wind_mw,solar_mw\n";

}  // namespace

TEST_CASE("load_panel reads and sums renewables") {
  TempCsv f(std::string(kHeader) +
            "2013-01-07T00:00:00+01:00,30.5,55000,2000,0\n"
            "2013-01-07T01:00:00+01:00,28.25,54000,2100,1\n"
            "2013-01-07T02:00:00+01:00,27,53500,2200,2\n");
  HourlyPanel p = load_panel(f.path);
  REQUIRE(p.n() == 3);
  CHECK(p.timestamps[0] == make_hour({2013, 1, 7}, 0));
  CHECK(p.price[1] == doctest::Approx(28.25));
  CHECK(p.renewables[2] == doctest::Approx(2202.0));
  CHECK_FALSE(p.standardized);
}

TEST_CASE("load_panel sorts out-of-order rows") {
  TempCsv f(std::string(kHeader) +
            "2013-01-07T01:00:00+01:00,2,2,2,0\n"
            "2013-01-07T00:00:00+01:00,1,1,1,0\n");
  HourlyPanel p = load_panel(f.path);
  CHECK(p.price[0] == 1.0);
  CHECK(p.price[1] == 2.0);
}

TEST_CASE("load_panel error cases") {
  CHECK_THROWS_AS(load_panel("/nonexistent/file.csv"), MissingInput);

  TempCsv missing("timestamp,price_eur_mwh,load_mw,wind_mw\n");
  CHECK_THROWS_AS(load_panel(missing.path), MissingColumn);

  TempCsv bad(std::string(kHeader) + "2013-01-07T00:00:00+01:00,abc,1,1,0\n");
  CHECK_THROWS_AS(load_panel(bad.path), UnparsableRow);

  TempCsv few(std::string(kHeader) + "2013-01-07T00:00:00+01:00,1,1\n");
  CHECK_THROWS_AS(load_panel(few.path), UnparsableRow);

  TempCsv negloads(std::string(kHeader) + "2013-01-07T00:00:00+01:00,1,-5,1,0\n");
  CHECK_THROWS_AS(load_panel(negloads.path), UnparsableRow);

  TempCsv gap(std::string(kHeader) +
              "2013-01-07T00:00:00+01:00,1,1,1,0\n"
              "2013-01-07T03:00:00+01:00,1,1,1,0\n");
  CHECK_THROWS_AS(load_panel(gap.path), NonMonotonicTimestamps);

  TempCsv dup(std::string(kHeader) +
              "2013-01-07T00:00:00+01:00,1,1,1,0\n"
              "2013-01-07T00:00:00+01:00,2,1,1,0\n");
  CHECK_THROWS_AS(load_panel(dup.path), NonMonotonicTimestamps);
}

TEST_CASE("autumn transition: duplicated hour accepted, first kept") {
  // 2013-10-27: hour 02 appears twice, first with summer-time offset.
  TempCsv f(std::string(kHeader) +
            "2013-10-27T01:00:00+02:00,10,1,1,0\n"
            "2013-10-27T02:00:00+02:00,20,1,1,0\n"
            "2013-10-27T02:00:00+01:00,30,1,1,0\n"
            "2013-10-27T03:00:00+01:00,40,1,1,0\n");
  HourlyPanel raw = load_panel(f.path);
  REQUIRE(raw.n() == 4);
  HourlyPanel p = normalize_dst(raw);
  REQUIRE(p.n() == 3);
  CHECK(p.price[0] == 10.0);
  CHECK(p.price[1] == 20.0);  // summer-time occurrence kept
  CHECK(p.price[2] == 40.0);
  CHECK(p.timestamps[2].value - p.timestamps[1].value == 1);
}

TEST_CASE("spring transition: skipped hour filled with the midpoint") {
  // 2013-03-31: hour 02 does not exist locally.
  TempCsv f(std::string(kHeader) +
            "2013-03-31T01:00:00+01:00,10,100,50,0\n"
            "2013-03-31T03:00:00+02:00,30,300,150,0\n");
  HourlyPanel p = normalize_dst(load_panel(f.path));
  REQUIRE(p.n() == 3);
  CHECK(p.timestamps[1] == make_hour({2013, 3, 31}, 2));
  CHECK(p.price[1] == doctest::Approx(20.0));
  CHECK(p.load[1] == doctest::Approx(200.0));
  CHECK(p.renewables[1] == doctest::Approx(100.0));
}

TEST_CASE("normalize_dst is idempotent and rejects real gaps") {
  TempCsv f(std::string(kHeader) +
            "2013-01-07T00:00:00+01:00,1,1,1,0\n"
            "2013-01-07T01:00:00+01:00,2,2,2,0\n");
  HourlyPanel p = normalize_dst(load_panel(f.path));
  HourlyPanel q = normalize_dst(p);
  CHECK(q.n() == p.n());
  CHECK(q.price == p.price);

  HourlyPanel gap = p;
  gap.timestamps[1].value += 5;
  CHECK_THROWS_AS(normalize_dst(gap), AmbiguityUnresolvable);
}

TEST_CASE("standardize and destandardize") {
  HourlyPanel p;
  for (int i = 0; i < 10; ++i) {
    p.timestamps.push_back(HourStamp{i});
    p.price.push_back(static_cast<double>(i));
    p.load.push_back(2.0 * i + 1.0);
    p.renewables.push_back(i % 3 + 0.5);
  }
  HourlyPanel s = standardize(p);
  CHECK(s.standardized);
  for (int k = 0; k < kNumSeries; ++k) {
    double mean = 0.0, ss = 0.0;
    const auto& v = s.series(static_cast<Series>(k));
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double x : v) ss += (x - mean) * (x - mean);
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ss / (v.size() - 1.0) == doctest::Approx(1.0));
    // Round trip back to the original values.
    for (std::size_t i = 0; i < v.size(); ++i)
      CHECK(destandardize(v[i], s.stats[k]) ==
            doctest::Approx(p.series(static_cast<Series>(k))[i]));
  }

  HourlyPanel flat = p;
  for (auto& x : flat.load) x = 7.0;
  CHECK_THROWS_AS(standardize(flat), DegenerateSeries);
}

TEST_CASE("write_panel round trips through load_panel") {
  HourlyPanel p;
  HourStamp t0 = make_hour({2014, 5, 1}, 0);
  for (int i = 0; i < 48; ++i) {
    p.timestamps.push_back(HourStamp{t0.value + i});
    p.price.push_back(25.0 + 0.25 * i);
    p.load.push_back(50000.0 + 10.0 * i);
    p.renewables.push_back(4000.0 + i);
  }
  const std::string path = std::string(std::tmpnam(nullptr)) + ".csv";
  write_panel(p, path);
  HourlyPanel q = load_panel(path);
  std::remove(path.c_str());
  REQUIRE(q.n() == p.n());
  for (std::size_t i = 0; i < p.n(); ++i) {
    CHECK(q.timestamps[i] == p.timestamps[i]);
    CHECK(q.price[i] == doctest::Approx(p.price[i]));
    CHECK(q.renewables[i] == doctest::Approx(p.renewables[i]));
  }
}
