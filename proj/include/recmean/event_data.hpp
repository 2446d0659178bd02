#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace recmean {

/// How a subject's observation ended. Both kinds are right-censoring to every
/// estimator; the distinction is kept for reporting.
enum class EndKind { kDropout, kAdministrative };

enum class RecordKind { kEvent, kCensor };

enum class ValidationErrorKind {
  kMalformedRow,
  kMissingCensor,
  kDuplicateCensor,
  kEventAfterCensor,
  kDuplicateEventTime,
  kNonPositiveTime,
  kDuplicateSubject,
  kEmptyCohort,
};

std::string_view to_string(ValidationErrorKind kind);
std::string_view to_string(EndKind kind);

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationErrorKind kind, const std::string& detail,
                  std::optional<std::size_t> line = std::nullopt);

  ValidationErrorKind kind() const noexcept { return kind_; }
  /// 1-based source line, when the error came from a file.
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ValidationErrorKind kind_;
  std::optional<std::size_t> line_;
};

/// One row of the ingestion format: an event or the end of observation.
struct RawRecord {
  std::string subject_id;
  double time = 0.0;
  RecordKind kind = RecordKind::kEvent;
  std::size_t line = 0;  // 0 when not read from a file
};

/// A single subject's counting path: strictly increasing event times, all at
/// or before the end of observation. The k-th event time (1-based) is the
/// subject's k-th order event.
class SubjectHistory {
 public:
  /// Throws ValidationError if the invariants do not hold.
  SubjectHistory(std::string id, std::vector<double> event_times,
                 double observation_end, EndKind end_kind);

  const std::string& id() const noexcept { return id_; }
  std::span<const double> event_times() const noexcept { return event_times_; }
  double observation_end() const noexcept { return observation_end_; }
  EndKind end_kind() const noexcept { return end_kind_; }
  std::size_t event_count() const noexcept { return event_times_.size(); }

  friend bool operator==(const SubjectHistory&, const SubjectHistory&) = default;

 private:
  std::string id_;
  std::vector<double> event_times_;
  double observation_end_;
  EndKind end_kind_;
};

/// Number of events at or before t (right-continuous).
std::size_t count_at(const SubjectHistory& subject, double t);

/// X_t for one subject as explicit jumps. counts[i] is the count from
/// breakpoints[i] until the next breakpoint; the count before the first
/// breakpoint is 0.
struct CountPath {
  std::vector<double> breakpoints;
  std::vector<std::size_t> counts;
};

CountPath count_path(const SubjectHistory& subject);

/// Immutable, validated cohort sharing time origin 0. Subjects are kept in
/// ascending id order so that construction is independent of input order.
class CohortDataset {
 public:
  /// Throws ValidationError on an empty cohort or repeated subject ids.
  explicit CohortDataset(std::vector<SubjectHistory> subjects);

  std::span<const SubjectHistory> subjects() const noexcept { return subjects_; }
  std::size_t size() const noexcept { return subjects_.size(); }
  /// Largest per-subject event count.
  std::size_t max_order() const noexcept { return max_order_; }
  /// Largest observation_end.
  double horizon() const noexcept { return horizon_; }
  std::size_t total_events() const noexcept { return total_events_; }

  friend bool operator==(const CohortDataset& a, const CohortDataset& b) {
    return a.subjects_ == b.subjects_;
  }

 private:
  std::vector<SubjectHistory> subjects_;
  std::size_t max_order_ = 0;
  double horizon_ = 0.0;
  std::size_t total_events_ = 0;
};

/// Groups raw records by subject and builds a cohort. Record order is
/// irrelevant. A subject's end kind is ADMINISTRATIVE when its censor time
/// equals the latest censor time in the input, DROPOUT otherwise.
CohortDataset validate_cohort(std::span<const RawRecord> records);

/// Inverse of validate_cohort: each subject's events in time order followed by
/// its censor record.
std::vector<RawRecord> to_records(const CohortDataset& cohort);

}  // namespace recmean
