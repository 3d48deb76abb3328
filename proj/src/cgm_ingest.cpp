#include "fcut/cgm_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "fcut/csv.hpp"
#include "fcut/error.hpp"

namespace fcut {

namespace chr = std::chrono;

std::vector<double> SubjectSeries::glucose() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.glucose);
  return out;
}

std::size_t IngestReport::excluded_count() const {
  return static_cast<std::size_t>(std::count_if(
      subjects.begin(), subjects.end(), [](const auto& kv) { return kv.second.excluded; }));
}

namespace {

bool read_digits(std::string_view s, std::size_t pos, std::size_t count, int& out) {
  if (pos + count > s.size()) return false;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  const auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + count, out);
  return ec == std::errc() && ptr == s.data() + pos + count;
}

}  // namespace

bool parse_timestamp(std::string_view s, Timestamp& out) {
  int year, month, day, hour, minute, second = 0;
  if (!read_digits(s, 0, 4, year) || s.size() < 16 || s[4] != '-' ||
      !read_digits(s, 5, 2, month) || s[7] != '-' || !read_digits(s, 8, 2, day) ||
      (s[10] != 'T' && s[10] != ' ') || !read_digits(s, 11, 2, hour) ||
      s[13] != ':' || !read_digits(s, 14, 2, minute)) {
    return false;
  }
  std::size_t pos = 16;
  if (pos < s.size() && s[pos] == ':') {
    if (!read_digits(s, pos + 1, 2, second)) return false;
    pos += 3;
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      const std::size_t start = pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      if (pos == start) return false;
    }
  }
  int offset_minutes = 0;
  if (pos < s.size()) {
    if (s[pos] == 'Z' && pos + 1 == s.size()) {
      ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
      const int sign = s[pos] == '+' ? 1 : -1;
      int oh, om;
      if (!read_digits(s, pos + 1, 2, oh)) return false;
      std::size_t mpos = pos + 3;
      if (mpos < s.size() && s[mpos] == ':') ++mpos;
      if (!read_digits(s, mpos, 2, om) || mpos + 2 != s.size()) return false;
      if (oh > 23 || om > 59) return false;
      offset_minutes = sign * (oh * 60 + om);
      pos = s.size();
    } else {
      return false;
    }
  }
  if (pos != s.size()) return false;
  const chr::year_month_day ymd{chr::year{year}, chr::month{static_cast<unsigned>(month)},
                                chr::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) return false;
  out = chr::sys_days{ymd} + chr::hours{hour} + chr::minutes{minute} +
        chr::seconds{second} - chr::minutes{offset_minutes};
  return true;
}

std::string format_timestamp(Timestamp t) {
  const auto day = chr::floor<chr::days>(t);
  const chr::year_month_day ymd{day};
  const chr::hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

namespace {

void expect_header(std::istream& in, const std::string& file_name,
                   const std::vector<std::string>& expected) {
  const auto line = csv::next_line(in, true);
  if (!line) throw ParseError(file_name, 1, "header", "file is empty");
  if (csv::split(*line) != expected) {
    throw ParseError(file_name, 1, "header", "expected header '" + csv::join(expected) + "'");
  }
}

}  // namespace

ParsedSeries parse_series(std::istream& in, const std::string& file_name) {
  expect_header(in, file_name, {"subject_id", "timestamp", "glucose"});
  std::map<std::string, std::vector<GlucoseRecord>> rows;
  ParsedSeries parsed;
  std::size_t line_no = 1;
  while (auto line = csv::next_line(in)) {
    ++line_no;
    if (line->find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = csv::split(*line);
    if (fields.size() != 3) {
      throw ParseError(file_name, line_no, "row",
                       "expected 3 fields, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(file_name, line_no, "subject_id", "empty");
    GlucoseRecord rec;
    if (!parse_timestamp(fields[1], rec.timestamp)) {
      throw ParseError(file_name, line_no, "timestamp", "invalid ISO-8601 value '" + fields[1] + "'");
    }
    const auto glucose = csv::parse_double(fields[2]);
    if (!glucose) {
      throw ParseError(file_name, line_no, "glucose", "not a number: '" + fields[2] + "'");
    }
    auto& report = parsed.reports[fields[0]];
    ++report.records_read;
    rec.glucose = std::clamp(*glucose, kGlucoseMin, kGlucoseMax);
    if (rec.glucose != *glucose) ++report.clamped;
    rows[fields[0]].push_back(rec);
  }

  for (auto& [id, records] : rows) {
    std::stable_sort(records.begin(), records.end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    const auto last = std::unique(records.begin(), records.end(), [](const auto& a, const auto& b) {
      return a.timestamp == b.timestamp;
    });
    parsed.reports[id].deduped = static_cast<std::size_t>(records.end() - last);
    records.erase(last, records.end());
    SubjectSeries s;
    s.subject_id = id;
    s.records = std::move(records);
    parsed.series.push_back(std::move(s));
  }
  return parsed;
}

CohortLabels parse_labels(std::istream& in, const std::string& file_name) {
  expect_header(in, file_name, {"subject_id", "label"});
  CohortLabels labels;
  std::size_t line_no = 1;
  while (auto line = csv::next_line(in)) {
    ++line_no;
    if (line->find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = csv::split(*line);
    if (fields.size() != 2) {
      throw ParseError(file_name, line_no, "row",
                       "expected 2 fields, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(file_name, line_no, "subject_id", "empty");
    if (fields[1] != "0" && fields[1] != "1") {
      throw ParseError(file_name, line_no, "label", "must be 0 or 1, got '" + fields[1] + "'");
    }
    const int label = fields[1] == "1" ? 1 : 0;
    const auto [it, inserted] = labels.emplace(fields[0], label);
    if (!inserted && it->second != label) {
      throw ParseError(file_name, line_no, "label",
                       "conflicting labels for subject '" + fields[0] + "'");
    }
  }
  return labels;
}

void write_series(std::ostream& out, const std::vector<SubjectSeries>& series) {
  out << "subject_id,timestamp,glucose\n";
  for (const auto& s : series) {
    for (const auto& r : s.records) {
      out << s.subject_id << ',' << format_timestamp(r.timestamp) << ','
          << csv::format_number(r.glucose) << '\n';
    }
  }
}

GapMode parse_gap_mode(std::string_view name) {
  if (name == "single") return GapMode::single;
  if (name == "cumulative") return GapMode::cumulative;
  throw InputError("unknown gap mode '" + std::string(name) + "' (single|cumulative)");
}

std::string_view to_string(GapMode mode) {
  return mode == GapMode::single ? "single" : "cumulative";
}

DayFilterResult filter_days(const SubjectSeries& series, const DayFilterOptions& options) {
  DayFilterResult result;
  result.series.subject_id = series.subject_id;
  result.series.nominal_interval_minutes = series.nominal_interval_minutes;
  const double skip_threshold = options.skip_factor * series.nominal_interval_minutes;

  const auto& recs = series.records;
  std::size_t begin = 0;
  while (begin < recs.size()) {
    const auto day = chr::floor<chr::days>(recs[begin].timestamp);
    std::size_t end = begin;
    while (end < recs.size() && chr::floor<chr::days>(recs[end].timestamp) == day) ++end;

    double total_missing = 0.0;
    double largest = 0.0;
    auto account = [&](chr::seconds gap) {
      const double minutes = static_cast<double>(gap.count()) / 60.0;
      if (minutes > skip_threshold) {
        total_missing += minutes;
        largest = std::max(largest, minutes);
      }
    };
    account(recs[begin].timestamp - Timestamp{day});
    for (std::size_t i = begin + 1; i < end; ++i) {
      account(recs[i].timestamp - recs[i - 1].timestamp);
    }
    account(Timestamp{day + chr::days{1}} - recs[end - 1].timestamp);

    const double measure = options.gap_mode == GapMode::single ? largest : total_missing;
    if (measure > options.max_gap_minutes) {
      ++result.dropped_days;
      result.dropped_records += end - begin;
    } else {
      result.series.records.insert(result.series.records.end(), recs.begin() + begin,
                                   recs.begin() + end);
      ++result.series.retained_days;
    }
    begin = end;
  }
  return result;
}

namespace {

Cohort build_cohort(ParsedSeries parsed, CohortLabels labels, bool with_labels,
                    const IngestOptions& options) {
  Cohort cohort;
  cohort.labels = std::move(labels);
  cohort.report.subjects = std::move(parsed.reports);
  for (auto& s : parsed.series) {
    s.nominal_interval_minutes = options.nominal_interval_minutes;
    auto filtered = filter_days(s, options.day_filter);
    auto& rep = cohort.report.subjects[s.subject_id];
    rep.retained_days = filtered.series.retained_days;
    rep.dropped_days = filtered.dropped_days;
    rep.dropped_records = filtered.dropped_records;
    rep.retained_records = filtered.series.records.size();
    rep.excluded = filtered.series.retained_days == 0 ||
                   filtered.series.retained_days < options.min_retained_days;
    rep.labeled = cohort.labels.contains(s.subject_id);
    if (with_labels && !rep.labeled) cohort.report.unlabeled.push_back(s.subject_id);
    if (!rep.excluded) cohort.series.push_back(std::move(filtered.series));
  }
  for (const auto& [id, label] : cohort.labels) {
    if (!cohort.report.subjects.contains(id)) cohort.report.missing_series.push_back(id);
  }
  return cohort;
}

}  // namespace

Cohort ingest_cohort(std::istream& series_in, const std::string& series_name,
                     std::istream& labels_in, const std::string& labels_name,
                     const IngestOptions& options) {
  auto parsed = parse_series(series_in, series_name);
  auto labels = parse_labels(labels_in, labels_name);
  return build_cohort(std::move(parsed), std::move(labels), true, options);
}

Cohort ingest_series(std::istream& series_in, const std::string& series_name,
                     const IngestOptions& options) {
  return build_cohort(parse_series(series_in, series_name), {}, false, options);
}

}  // namespace fcut
