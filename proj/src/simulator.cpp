#include "recmean/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace recmean {

void ScenarioParams::validate() const {
  if (max_events == 0) throw std::invalid_argument("max_events must be positive");
  if (gap_rates.size() != max_events) {
    throw std::invalid_argument("need one gap rate per event order (" + std::to_string(max_events) + ")");
  }
  for (double r : gap_rates) {
    if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("gap rates must be finite and >= 0");
  }
  if (!std::isfinite(dropout_rate) || dropout_rate < 0.0) {
    throw std::invalid_argument("dropout rate must be finite and >= 0");
  }
  if (!std::isfinite(admin_cutoff) || admin_cutoff <= 0.0) {
    throw std::invalid_argument("administrative cutoff must be positive");
  }
}

ScenarioParams ScenarioParams::poisson() { return ScenarioParams{}; }

ScenarioParams ScenarioParams::event_dependent() {
  ScenarioParams p;
  p.gap_rates = {0.002, 0.001};
  p.dropout_rate = 0.001;
  return p;
}

double CounterRng::exponential(std::uint64_t k, double rate) const {
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(uniform(k)) / rate;
}

CohortDataset simulate_cohort(const ScenarioParams& params, std::uint64_t seed) {
  params.validate();
  const std::size_t width = std::to_string(params.n_subjects).size();
  std::vector<SubjectHistory> subjects;
  subjects.reserve(params.n_subjects);
  std::vector<double> times;
  for (std::size_t i = 0; i < params.n_subjects; ++i) {
    const CounterRng rng(CounterRng::subject_key(seed, i));
    // Draws 0..max_events-1 are gaps, draw max_events is the drop-out time.
    const double dropout = rng.exponential(params.max_events, params.dropout_rate);
    const double end = std::min(dropout, params.admin_cutoff);
    times.clear();
    double t = 0.0;
    for (std::size_t k = 0; k < params.max_events; ++k) {
      t += rng.exponential(k, params.gap_rates[k]);
      if (!(t <= end)) break;
      times.push_back(t);
    }
    std::string id = std::to_string(i + 1);
    id.insert(0, width - id.size(), '0');
    subjects.emplace_back("S" + id, times, end,
                          dropout < params.admin_cutoff ? EndKind::kDropout : EndKind::kAdministrative);
  }
  return CohortDataset(std::move(subjects));
}

namespace {

ReplicateSummary summarize(const ScenarioParams& params, std::size_t r, std::uint64_t base_seed,
                           ConditionalEstimator method) {
  const CohortDataset cohort = simulate_cohort(params, replicate_seed(base_seed, r));
  const RiskTable table(cohort);
  ReplicateSummary s;
  s.replicate_index = r;
  s.na_at_horizon = nelson_aalen_mean(table).value_at(params.admin_cutoff);
  s.proposed_at_horizon = proposed_mean(table, method).mean.value_at(params.admin_cutoff);
  s.max_count_observed = cohort.max_order();
  return s;
}

}  // namespace

std::vector<ReplicateSummary> run_replicates(const ScenarioParams& params, std::size_t n_replicates,
                                             std::uint64_t base_seed, unsigned threads,
                                             ConditionalEstimator method) {
  if (n_replicates == 0) throw std::invalid_argument("need at least one replicate");
  params.validate();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_replicates));

  std::vector<ReplicateSummary> out(n_replicates);
  if (threads == 1) {
    for (std::size_t r = 0; r < n_replicates; ++r) out[r] = summarize(params, r, base_seed, method);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t r = next++; r < n_replicates && !failed; r = next++) {
          try {
            out[r] = summarize(params, r, base_seed, method);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace recmean
