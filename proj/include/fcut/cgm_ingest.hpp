#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fcut {

using Timestamp = std::chrono::sys_seconds;

inline constexpr double kGlucoseMin = 40.0;   // mg/dL, device floor
inline constexpr double kGlucoseMax = 400.0;  // mg/dL, device ceiling

struct GlucoseRecord {
  Timestamp timestamp;
  double glucose = 0.0;  // mg/dL

  friend bool operator==(const GlucoseRecord&, const GlucoseRecord&) = default;
};

struct SubjectSeries {
  std::string subject_id;
  std::vector<GlucoseRecord> records;  // strictly increasing timestamps
  double nominal_interval_minutes = 5.0;
  std::size_t retained_days = 0;

  std::vector<double> glucose() const;
};

// subject_id -> 0 (control) or 1 (case)
using CohortLabels = std::map<std::string, int>;

// Per-subject bookkeeping. records_read = deduped + dropped_records +
// retained_records; clamped values are kept, not dropped.
struct SubjectReport {
  std::size_t records_read = 0;
  std::size_t clamped = 0;
  std::size_t deduped = 0;
  std::size_t retained_days = 0;
  std::size_t dropped_days = 0;
  std::size_t dropped_records = 0;
  std::size_t retained_records = 0;
  bool excluded = false;
  bool labeled = false;
};

struct IngestReport {
  std::map<std::string, SubjectReport> subjects;
  std::vector<std::string> missing_series;  // labeled but absent from series
  std::vector<std::string> unlabeled;       // in series but not labeled

  std::size_t excluded_count() const;
};

// Parses ISO-8601 date-times: YYYY-MM-DD[T| ]HH:MM[:SS[.fff]][Z|+HH:MM|-HH:MM|+HHMM].
// A missing offset means UTC. Fractional seconds are truncated. Returns false
// on any malformed input.
bool parse_timestamp(std::string_view text, Timestamp& out);

// YYYY-MM-DDTHH:MM:SSZ
std::string format_timestamp(Timestamp t);

struct ParsedSeries {
  std::vector<SubjectSeries> series;  // sorted by subject_id
  std::map<std::string, SubjectReport> reports;
};

// Reads `subject_id,timestamp,glucose`. Groups by subject, sorts by time,
// keeps the first of exact-duplicate timestamps (file order), clamps glucose
// to [40, 400] and counts clamps. Throws ParseError on malformed rows.
ParsedSeries parse_series(std::istream& in, const std::string& file_name);

// Reads `subject_id,label` with label in {0, 1}. Throws ParseError otherwise.
CohortLabels parse_labels(std::istream& in, const std::string& file_name);

void write_series(std::ostream& out, const std::vector<SubjectSeries>& series);

enum class GapMode { single, cumulative };

GapMode parse_gap_mode(std::string_view name);
std::string_view to_string(GapMode mode);

struct DayFilterOptions {
  double max_gap_minutes = 120.0;
  GapMode gap_mode = GapMode::cumulative;
  // A gap counts as missing data when it exceeds this multiple of the
  // nominal sampling interval.
  double skip_factor = 1.5;
};

struct DayFilterResult {
  SubjectSeries series;  // retained days only
  std::size_t dropped_days = 0;
  std::size_t dropped_records = 0;
};

// Partitions records into UTC calendar days. Gaps are measured between
// consecutive in-day samples and from midnight to the first sample and the
// last sample to the next midnight. In single mode a day is discarded if any
// gap exceeds max_gap_minutes; in cumulative mode if the summed missing
// gaps exceed it.
DayFilterResult filter_days(const SubjectSeries& series,
                            const DayFilterOptions& options = {});

struct IngestOptions {
  DayFilterOptions day_filter;
  std::size_t min_retained_days = 2;
  double nominal_interval_minutes = 5.0;
};

struct Cohort {
  std::vector<SubjectSeries> series;  // retained, non-excluded subjects
  CohortLabels labels;
  IngestReport report;
};

// parse_series + parse_labels + filter_days + the minimum-days rule.
Cohort ingest_cohort(std::istream& series_in, const std::string& series_name,
                     std::istream& labels_in, const std::string& labels_name,
                     const IngestOptions& options = {});

// Same as above for a series file without labels.
Cohort ingest_series(std::istream& series_in, const std::string& series_name,
                     const IngestOptions& options = {});

}  // namespace fcut
