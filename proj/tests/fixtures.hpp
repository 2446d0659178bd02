#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "recmean/event_data.hpp"

namespace recmean::test {

inline SubjectHistory admin(std::string id, std::vector<double> events, double end) {
  return SubjectHistory(std::move(id), std::move(events), end, EndKind::kAdministrative);
}

inline SubjectHistory dropout(std::string id, std::vector<double> events, double end) {
  return SubjectHistory(std::move(id), std::move(events), end, EndKind::kDropout);
}

// S1 event@1; S2 event@2; S3 none; all censored@3.
inline CohortDataset fixture_d1() {
  return CohortDataset({admin("S1", {1}, 3), admin("S2", {2}, 3), admin("S3", {}, 3)});
}

// A events@1,@2; B none; censored@3.
inline CohortDataset fixture_d2() { return CohortDataset({admin("A", {1, 2}, 3), admin("B", {}, 3)}); }

// S1 event@1 then drop-out@1.5; S2 event@2; S3 none; S2, S3 censored@3.
inline CohortDataset fixture_d3() {
  return CohortDataset({dropout("S1", {1}, 1.5), admin("S2", {2}, 3), admin("S3", {}, 3)});
}

struct CohortShape {
  std::size_t min_subjects = 5;
  std::size_t max_subjects = 50;
  std::size_t max_events = 3;
  double cutoff = 10.0;
  bool dropouts = false;
  // Draw times from a coarse lattice so that subjects share event times and
  // events coincide with censoring.
  bool lattice = false;
};

// Random valid cohort. Without drop-outs every subject is observed to `cutoff`.
inline CohortDataset random_cohort(std::mt19937_64& rng, const CohortShape& shape) {
  std::uniform_int_distribution<std::size_t> n_dist(shape.min_subjects, shape.max_subjects);
  std::uniform_int_distribution<std::size_t> k_dist(0, shape.max_events);
  std::uniform_int_distribution<int> lattice_dist(1, 8);
  std::uniform_real_distribution<double> cont_dist(0.0, shape.cutoff);
  std::bernoulli_distribution drop(0.35);
  const auto draw_time = [&] {
    if (shape.lattice) return shape.cutoff * lattice_dist(rng) / 8.0;
    double t = 0.0;
    while (t <= 0.0) t = cont_dist(rng);
    return t;
  };

  const std::size_t n = n_dist(rng);
  std::vector<SubjectHistory> subjects;
  for (std::size_t i = 0; i < n; ++i) {
    double end = shape.cutoff;
    EndKind kind = EndKind::kAdministrative;
    if (shape.dropouts && drop(rng)) {
      end = draw_time();
      if (end < shape.cutoff) kind = EndKind::kDropout;
    }
    std::vector<double> events;
    const std::size_t k = k_dist(rng);
    for (std::size_t e = 0; e < k; ++e) {
      const double t = draw_time();
      if (t <= end) events.push_back(t);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    subjects.emplace_back("S" + std::to_string(1000 + i), std::move(events), end, kind);
  }
  return CohortDataset(std::move(subjects));
}

}  // namespace recmean::test
