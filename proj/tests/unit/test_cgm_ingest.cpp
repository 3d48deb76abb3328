#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fcut/cgm_ingest.hpp"
#include "fcut/error.hpp"
#include "fcut/rng.hpp"

namespace {

using namespace std::chrono;

fcut::Timestamp at(int y, unsigned mo, unsigned d, int h = 0, int mi = 0, int s = 0) {
  return sys_days{year{y} / month{mo} / day{d}} + hours{h} + minutes{mi} + seconds{s};
}

// Regular 5-minute sampling over whole UTC days starting at `first`.
fcut::SubjectSeries full_days(const std::string& id, fcut::Timestamp first, int days,
                              double glucose = 100.0) {
  fcut::SubjectSeries s;
  s.subject_id = id;
  for (int i = 0; i < days * 288; ++i) s.records.push_back({first + minutes{5 * i}, glucose});
  return s;
}

std::string to_csv(const std::vector<fcut::SubjectSeries>& series) {
  std::ostringstream out;
  fcut::write_series(out, series);
  return out.str();
}

}  // namespace

TEST_CASE("timestamps parse in the supported ISO-8601 forms") {
  fcut::Timestamp t;
  REQUIRE(fcut::parse_timestamp("2024-03-01T08:30:00Z", t));
  CHECK(t == at(2024, 3, 1, 8, 30));
  REQUIRE(fcut::parse_timestamp("2024-03-01 08:30", t));
  CHECK(t == at(2024, 3, 1, 8, 30));
  REQUIRE(fcut::parse_timestamp("2024-03-01T08:30:15.750", t));
  CHECK(t == at(2024, 3, 1, 8, 30, 15));
  REQUIRE(fcut::parse_timestamp("2024-03-01T08:30:00+02:00", t));
  CHECK(t == at(2024, 3, 1, 6, 30));
  REQUIRE(fcut::parse_timestamp("2024-03-01T00:30:00-0130", t));
  CHECK(t == at(2024, 3, 1, 2, 0));
  for (const char* bad : {"not-a-date", "2024-02-30T00:00:00", "2024-03-01T25:00", "2024-03-01",
                          "2024-03-01T08:30:00Zjunk", "2024/03/01 08:30"}) {
    INFO(bad);
    CHECK_FALSE(fcut::parse_timestamp(bad, t));
  }
  CHECK(fcut::format_timestamp(at(2023, 12, 31, 23, 59, 59)) == "2023-12-31T23:59:59Z");
}

TEST_CASE("series rows are grouped, sorted, deduplicated and clamped") {
  std::istringstream in(
      "subject_id,timestamp,glucose\n"
      "s1,2024-01-01T00:10:00Z,120\n"
      "s2,2024-01-01T00:00:00Z,39.0\n"
      "s1,2024-01-01T00:00:00Z,100\n"
      "s1,2024-01-01T00:05:00Z,110\n"
      "s1,2024-01-01T00:05:00Z,999\n"
      "s2,2024-01-01T00:05:00Z,401\n");
  const auto parsed = fcut::parse_series(in, "series.csv");
  REQUIRE(parsed.series.size() == 2);
  const auto& s1 = parsed.series[0];
  CHECK(s1.subject_id == "s1");
  REQUIRE(s1.records.size() == 3);
  CHECK(s1.records[0].glucose == 100);
  CHECK(s1.records[1].glucose == 110);  // first of the duplicate timestamps
  CHECK(s1.records[2].glucose == 120);
  CHECK(parsed.reports.at("s1").deduped == 1);
  CHECK(parsed.reports.at("s1").clamped == 1);  // the dropped 999 was clamped before dedup
  const auto& s2 = parsed.series[1];
  CHECK(s2.records[0].glucose == 40.0);
  CHECK(s2.records[1].glucose == 400.0);
  CHECK(parsed.reports.at("s2").clamped == 2);
}

TEST_CASE("malformed rows cite file, line and field") {
  std::istringstream bad_time("subject_id,timestamp,glucose\ns1,2024-01-01T00:00:00Z,100\ns1,not-a-date,100\n");
  try {
    fcut::parse_series(bad_time, "series.csv");
    FAIL("expected a parse error");
  } catch (const fcut::ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.field() == "timestamp");
    CHECK(std::string(e.what()).find("series.csv:3") != std::string::npos);
  }
  std::istringstream bad_glucose("subject_id,timestamp,glucose\ns1,2024-01-01T00:00:00Z,abc\n");
  CHECK_THROWS_AS(fcut::parse_series(bad_glucose, "x.csv"), fcut::ParseError);
  std::istringstream bad_header("id,time,value\n");
  CHECK_THROWS_AS(fcut::parse_series(bad_header, "x.csv"), fcut::ParseError);
  std::istringstream bad_label("subject_id,label\ns1,2\n");
  CHECK_THROWS_WITH(fcut::parse_labels(bad_label, "labels.csv"),
                    Catch::Matchers::ContainsSubstring("labels.csv:2"));
}

TEST_CASE("day filter keeps complete days and drops gapped ones") {
  auto s = full_days("s", at(2024, 1, 1), 1);
  auto r = fcut::filter_days(s);
  CHECK(r.series.retained_days == 1);
  CHECK(r.dropped_days == 0);

  // One 125-minute gap: 25 samples removed from the middle of the day.
  auto gapped = full_days("s", at(2024, 1, 1), 1);
  gapped.records.erase(gapped.records.begin() + 100, gapped.records.begin() + 124);
  REQUIRE((gapped.records[100].timestamp - gapped.records[99].timestamp) == minutes{125});
  for (auto mode : {fcut::GapMode::single, fcut::GapMode::cumulative}) {
    fcut::DayFilterOptions opt;
    opt.gap_mode = mode;
    const auto out = fcut::filter_days(gapped, opt);
    CHECK(out.dropped_days == 1);
    CHECK(out.series.records.empty());
  }

  // Two 70-minute gaps: fine per gap, too much in total.
  auto two = full_days("s", at(2024, 1, 1), 1);
  two.records.erase(two.records.begin() + 200, two.records.begin() + 213);
  two.records.erase(two.records.begin() + 50, two.records.begin() + 63);
  fcut::DayFilterOptions single;
  single.gap_mode = fcut::GapMode::single;
  CHECK(fcut::filter_days(two, single).series.retained_days == 1);
  CHECK(fcut::filter_days(two).series.retained_days == 0);

  // 24 h of data starting at 10:00 covers neither calendar day fully.
  auto late = full_days("s", at(2024, 1, 1, 10), 1);
  const auto lr = fcut::filter_days(late);
  CHECK(lr.series.retained_days == 0);
  CHECK(lr.dropped_days == 2);

  // Starting at 01:30 only misses 90 minutes of the first day.
  auto early = full_days("s", at(2024, 1, 1, 1, 30), 2);
  early.records.resize(288 * 2 - 48);  // last sample on day 2 at 21:25
  const auto er = fcut::filter_days(early);
  CHECK(er.series.retained_days == 1);
  CHECK(er.dropped_days == 1);
}

TEST_CASE("day filter is idempotent and accounts for every record") {
  fcut::SplitMix64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = full_days("s", at(2024, 1, 1), 7);
    // Punch random holes.
    const int holes = static_cast<int>(rng.below(6));
    for (int h = 0; h < holes; ++h) {
      const auto start = rng.below(s.records.size() - 40);
      const auto len = 1 + rng.below(40);
      s.records.erase(s.records.begin() + static_cast<long>(start),
                      s.records.begin() + static_cast<long>(start + len));
    }
    const auto once = fcut::filter_days(s);
    const auto twice = fcut::filter_days(once.series);
    CHECK(twice.series.records == once.series.records);
    CHECK(twice.series.retained_days == once.series.retained_days);
    CHECK(twice.dropped_days == 0);
    CHECK(once.series.records.size() + once.dropped_records == s.records.size());
  }
}

TEST_CASE("cohort ingest applies the minimum-days rule and reports labels") {
  std::vector<fcut::SubjectSeries> series;
  // s1: 7 days, 5 of which get a 3-hour hole.
  auto s1 = full_days("s1", at(2024, 1, 1), 7);
  for (int d = 6; d >= 2; --d) {
    const long start = d * 288 + 100;
    s1.records.erase(s1.records.begin() + start, s1.records.begin() + start + 36);
  }
  series.push_back(s1);
  series.push_back(full_days("s2", at(2024, 1, 1), 3, 39.0));  // clamped to 40
  auto s3 = full_days("s3", at(2024, 1, 1), 1);
  s3.records.resize(20);  // all-gap day
  series.push_back(s3);
  series.push_back(full_days("s4", at(2024, 1, 1), 2));  // unlabeled

  std::istringstream series_in(to_csv(series));
  std::istringstream labels_in("subject_id,label\ns1,1\ns2,0\ns3,0\nghost,1\n");
  const auto cohort = fcut::ingest_cohort(series_in, "series.csv", labels_in, "labels.csv");

  const auto& rep = cohort.report.subjects;
  CHECK(rep.at("s1").retained_days == 2);
  CHECK(rep.at("s1").dropped_days == 5);
  CHECK_FALSE(rep.at("s1").excluded);
  CHECK(rep.at("s2").clamped == 3 * 288);
  CHECK(rep.at("s3").excluded);
  CHECK(cohort.report.excluded_count() == 1);
  CHECK(cohort.report.missing_series == std::vector<std::string>{"ghost"});
  CHECK(cohort.report.unlabeled == std::vector<std::string>{"s4"});
  REQUIRE(cohort.series.size() == 3);
  for (const auto& [id, r] : rep) {
    CHECK(r.records_read == r.deduped + r.dropped_records + r.retained_records);
  }
}

TEST_CASE("serialized retained series re-parse to identical records") {
  fcut::SplitMix64 rng(4);
  std::vector<fcut::SubjectSeries> series;
  for (int i = 0; i < 4; ++i) {
    auto s = full_days("sub" + std::to_string(i), at(2024, 5, 1), 2);
    for (auto& r : s.records) r.glucose = 40.0 + rng.uniform() * 360.0;
    series.push_back(s);
  }
  std::istringstream in(to_csv(series));
  const auto parsed = fcut::parse_series(in, "rt.csv");
  REQUIRE(parsed.series.size() == series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    CHECK(parsed.series[i].subject_id == series[i].subject_id);
    CHECK(parsed.series[i].records == series[i].records);
  }
}
