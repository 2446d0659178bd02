#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "recmean/event_data.hpp"

namespace recmean {

/// Sorted distinct times at which at least one event (of any order) occurs.
struct EventTimeGrid {
  std::vector<double> times;
};

EventTimeGrid event_time_grid(const CohortDataset& cohort);

/// Risk set of stratum j (subjects with exactly j events) at one grid time.
struct StratumSnapshot {
  std::size_t stratum = 0;
  double time = 0.0;
  /// Subjects with exactly `stratum` events strictly before `time` whose
  /// observation_end is >= `time`.
  std::size_t at_risk = 0;
  /// Subjects whose (stratum+1)-th event is exactly at `time`.
  std::size_t events = 0;
};

/// Direct evaluation by scanning every subject. Throws std::out_of_range if
/// j > max_order and std::invalid_argument if t is not a grid time.
StratumSnapshot stratum_snapshot(const CohortDataset& cohort, std::size_t j, double t);

struct StratumCount {
  std::size_t stratum = 0;
  std::size_t at_risk = 0;
  std::size_t events = 0;
};

/// All risk sets of a cohort, built with one sweep over the grid.
///
/// For each grid time the table stores the total number of subjects still
/// under observation and one StratumCount per stratum that has at least one
/// event there, in ascending stratum order. Strata without an event at a
/// grid time contribute nothing to any estimator and are not stored; use
/// stratum_snapshot() for those.
///
/// Ties: a subject censored at t is at risk at t; subjects enter stratum j at
/// the instant of their j-th event and are at risk for the (j+1)-th from just
/// after it.
class RiskTable {
 public:
  explicit RiskTable(const CohortDataset& cohort);

  std::span<const double> times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  std::size_t max_order() const noexcept { return max_order_; }
  std::size_t subject_count() const noexcept { return subject_count_; }

  std::size_t total_at_risk(std::size_t i) const { return total_at_risk_[i]; }
  std::size_t total_events(std::size_t i) const { return total_events_[i]; }
  std::span<const StratumCount> active_strata(std::size_t i) const {
    return std::span(counts_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }

 private:
  std::vector<double> times_;
  std::vector<std::size_t> total_at_risk_;
  std::vector<std::size_t> total_events_;
  std::vector<std::size_t> offsets_;
  std::vector<StratumCount> counts_;
  std::size_t max_order_ = 0;
  std::size_t subject_count_ = 0;
};

}  // namespace recmean
