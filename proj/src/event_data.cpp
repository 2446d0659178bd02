#include "recmean/event_data.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace recmean {

std::string_view to_string(ValidationErrorKind kind) {
  switch (kind) {
    case ValidationErrorKind::kMalformedRow: return "MalformedRow";
    case ValidationErrorKind::kMissingCensor: return "MissingCensor";
    case ValidationErrorKind::kDuplicateCensor: return "DuplicateCensor";
    case ValidationErrorKind::kEventAfterCensor: return "EventAfterCensor";
    case ValidationErrorKind::kDuplicateEventTime: return "DuplicateEventTime";
    case ValidationErrorKind::kNonPositiveTime: return "NonPositiveTime";
    case ValidationErrorKind::kDuplicateSubject: return "DuplicateSubject";
    case ValidationErrorKind::kEmptyCohort: return "EmptyCohort";
  }
  return "Unknown";
}

std::string_view to_string(EndKind kind) {
  return kind == EndKind::kDropout ? "DROPOUT" : "ADMINISTRATIVE";
}

namespace {

std::string format_message(ValidationErrorKind kind, const std::string& detail,
                           std::optional<std::size_t> line) {
  std::string msg(to_string(kind));
  if (line) msg += " (line " + std::to_string(*line) + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

ValidationError::ValidationError(ValidationErrorKind kind, const std::string& detail,
                                 std::optional<std::size_t> line)
    : std::runtime_error(format_message(kind, detail, line)), kind_(kind), line_(line) {}

SubjectHistory::SubjectHistory(std::string id, std::vector<double> event_times,
                               double observation_end, EndKind end_kind)
    : id_(std::move(id)),
      event_times_(std::move(event_times)),
      observation_end_(observation_end),
      end_kind_(end_kind) {
  if (!std::isfinite(observation_end_) || observation_end_ <= 0.0) {
    throw ValidationError(ValidationErrorKind::kNonPositiveTime,
                          "subject " + id_ + " observation end must be positive");
  }
  for (std::size_t k = 0; k < event_times_.size(); ++k) {
    const double t = event_times_[k];
    if (!std::isfinite(t) || t <= 0.0) {
      throw ValidationError(ValidationErrorKind::kNonPositiveTime,
                            "subject " + id_ + " has a non-positive event time");
    }
    if (k > 0 && t <= event_times_[k - 1]) {
      throw ValidationError(t == event_times_[k - 1] ? ValidationErrorKind::kDuplicateEventTime
                                                     : ValidationErrorKind::kMalformedRow,
                            "subject " + id_ + " event times must be strictly increasing");
    }
    if (t > observation_end_) {
      throw ValidationError(ValidationErrorKind::kEventAfterCensor,
                            "subject " + id_ + " has an event after its censor time");
    }
  }
}

std::size_t count_at(const SubjectHistory& subject, double t) {
  const auto times = subject.event_times();
  return static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
}

CountPath count_path(const SubjectHistory& subject) {
  CountPath path;
  const auto times = subject.event_times();
  path.breakpoints.assign(times.begin(), times.end());
  path.counts.resize(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) path.counts[k] = k + 1;
  return path;
}

CohortDataset::CohortDataset(std::vector<SubjectHistory> subjects) : subjects_(std::move(subjects)) {
  if (subjects_.empty()) {
    throw ValidationError(ValidationErrorKind::kEmptyCohort, "cohort has no subjects");
  }
  // Already-sorted input (the simulator's) skips the sort.
  const auto by_id = [](const SubjectHistory& a, const SubjectHistory& b) { return a.id() < b.id(); };
  if (!std::is_sorted(subjects_.begin(), subjects_.end(), by_id)) {
    std::sort(subjects_.begin(), subjects_.end(), by_id);
  }
  for (std::size_t i = 0; i < subjects_.size(); ++i) {
    const auto& s = subjects_[i];
    if (i > 0 && s.id() == subjects_[i - 1].id()) {
      throw ValidationError(ValidationErrorKind::kDuplicateSubject, "subject id " + s.id() + " repeated");
    }
    max_order_ = std::max(max_order_, s.event_count());
    horizon_ = std::max(horizon_, s.observation_end());
    total_events_ += s.event_count();
  }
}

CohortDataset validate_cohort(std::span<const RawRecord> records) {
  struct Pending {
    std::vector<const RawRecord*> events;
    const RawRecord* censor = nullptr;
  };
  std::map<std::string, Pending> grouped;
  double latest_censor = 0.0;

  for (const auto& rec : records) {
    const std::optional<std::size_t> line = rec.line ? std::optional(rec.line) : std::nullopt;
    if (rec.subject_id.empty()) {
      throw ValidationError(ValidationErrorKind::kMalformedRow, "empty subject id", line);
    }
    if (!std::isfinite(rec.time) || rec.time <= 0.0) {
      throw ValidationError(ValidationErrorKind::kNonPositiveTime,
                            "subject " + rec.subject_id + " time must be positive", line);
    }
    auto& pending = grouped[rec.subject_id];
    if (rec.kind == RecordKind::kEvent) {
      pending.events.push_back(&rec);
    } else {
      if (pending.censor != nullptr) {
        throw ValidationError(ValidationErrorKind::kDuplicateCensor,
                              "subject " + rec.subject_id + " has more than one CENSOR record", line);
      }
      pending.censor = &rec;
      latest_censor = std::max(latest_censor, rec.time);
    }
  }

  std::vector<SubjectHistory> subjects;
  subjects.reserve(grouped.size());
  for (auto& [id, pending] : grouped) {
    if (pending.censor == nullptr) {
      throw ValidationError(ValidationErrorKind::kMissingCensor, "subject " + id + " has no CENSOR record");
    }
    std::sort(pending.events.begin(), pending.events.end(),
              [](const RawRecord* a, const RawRecord* b) { return a->time < b->time; });
    std::vector<double> times;
    times.reserve(pending.events.size());
    for (const RawRecord* ev : pending.events) {
      const std::optional<std::size_t> line = ev->line ? std::optional(ev->line) : std::nullopt;
      if (ev->time > pending.censor->time) {
        throw ValidationError(ValidationErrorKind::kEventAfterCensor,
                              "subject " + id + " has an event after its censor time", line);
      }
      if (!times.empty() && times.back() == ev->time) {
        throw ValidationError(ValidationErrorKind::kDuplicateEventTime,
                              "subject " + id + " has two events at the same time", line);
      }
      times.push_back(ev->time);
    }
    const EndKind kind =
        pending.censor->time == latest_censor ? EndKind::kAdministrative : EndKind::kDropout;
    subjects.emplace_back(id, std::move(times), pending.censor->time, kind);
  }
  return CohortDataset(std::move(subjects));
}

std::vector<RawRecord> to_records(const CohortDataset& cohort) {
  std::vector<RawRecord> out;
  out.reserve(cohort.total_events() + cohort.size());
  for (const auto& s : cohort.subjects()) {
    for (double t : s.event_times()) out.push_back({s.id(), t, RecordKind::kEvent, 0});
    out.push_back({s.id(), s.observation_end(), RecordKind::kCensor, 0});
  }
  return out;
}

}  // namespace recmean
