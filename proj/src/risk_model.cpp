#include "recmean/risk_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace recmean {

EventTimeGrid event_time_grid(const CohortDataset& cohort) {
  EventTimeGrid grid;
  grid.times.reserve(cohort.total_events());
  for (const auto& s : cohort.subjects()) {
    grid.times.insert(grid.times.end(), s.event_times().begin(), s.event_times().end());
  }
  std::sort(grid.times.begin(), grid.times.end());
  grid.times.erase(std::unique(grid.times.begin(), grid.times.end()), grid.times.end());
  return grid;
}

StratumSnapshot stratum_snapshot(const CohortDataset& cohort, std::size_t j, double t) {
  if (j > cohort.max_order()) {
    throw std::out_of_range("stratum " + std::to_string(j) + " exceeds max order " +
                            std::to_string(cohort.max_order()));
  }
  bool on_grid = false;
  StratumSnapshot snap{j, t, 0, 0};
  for (const auto& s : cohort.subjects()) {
    const auto times = s.event_times();
    const auto before = static_cast<std::size_t>(
        std::lower_bound(times.begin(), times.end(), t) - times.begin());
    if (before < times.size() && times[before] == t) on_grid = true;
    if (before == j && s.observation_end() >= t) ++snap.at_risk;
    if (times.size() > j && times[j] == t) ++snap.events;
  }
  if (!on_grid) throw std::invalid_argument("time is not an event time of the cohort");
  return snap;
}

RiskTable::RiskTable(const CohortDataset& cohort)
    : max_order_(cohort.max_order()), subject_count_(cohort.size()) {
  struct Transition {
    double time;
    std::size_t from;  // stratum the subject leaves
  };
  std::vector<Transition> transitions;
  transitions.reserve(cohort.total_events());
  std::vector<std::pair<double, std::size_t>> censors;  // (end, final stratum)
  censors.reserve(cohort.size());
  for (const auto& s : cohort.subjects()) {
    const auto times = s.event_times();
    for (std::size_t k = 0; k < times.size(); ++k) transitions.push_back({times[k], k});
    censors.emplace_back(s.observation_end(), times.size());
  }
  std::sort(transitions.begin(), transitions.end(), [](const Transition& a, const Transition& b) {
    return a.time < b.time || (a.time == b.time && a.from < b.from);
  });
  std::sort(censors.begin(), censors.end());

  std::vector<std::size_t> occupancy(max_order_ + 1, 0);
  occupancy[0] = cohort.size();
  std::size_t observed = cohort.size();
  std::size_t next_censor = 0;

  offsets_.push_back(0);
  for (std::size_t i = 0; i < transitions.size();) {
    const double t = transitions[i].time;
    // Censoring acts just after its time, so only ends strictly before t leave.
    while (next_censor < censors.size() && censors[next_censor].first < t) {
      --occupancy[censors[next_censor].second];
      --observed;
      ++next_censor;
    }
    std::size_t end = i;
    while (end < transitions.size() && transitions[end].time == t) ++end;

    times_.push_back(t);
    total_at_risk_.push_back(observed);
    total_events_.push_back(end - i);
    for (std::size_t k = i; k < end;) {
      const std::size_t from = transitions[k].from;
      std::size_t d = 0;
      while (k < end && transitions[k].from == from) {
        ++d;
        ++k;
      }
      counts_.push_back({from, occupancy[from], d});
    }
    // Snapshots are taken before anyone moves, so same-time transitions in
    // different strata all see the pre-jump risk sets.
    for (std::size_t k = i; k < end; ++k) {
      --occupancy[transitions[k].from];
      ++occupancy[transitions[k].from + 1];
    }
    offsets_.push_back(counts_.size());
    i = end;
  }
}

}  // namespace recmean
