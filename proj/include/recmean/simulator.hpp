#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "recmean/estimators.hpp"
#include "recmean/event_data.hpp"

namespace recmean {

/// Cohort design with exponential gaps between successive events.
///
/// Subject k draws gap_i ~ Exp(gap_rates[i]) for i < max_events and a
/// drop-out time ~ Exp(dropout_rate) from time 0 (none when the rate is 0).
/// Observation ends at min(drop-out, admin_cutoff); later events are lost.
/// Rates are per day, times in days. A rate of 0 means the event never occurs.
struct ScenarioParams {
  std::size_t n_subjects = 100;
  std::size_t max_events = 2;
  std::vector<double> gap_rates{0.003, 0.003};
  double dropout_rate = 0.0;
  double admin_cutoff = 370.0;

  /// Throws std::invalid_argument on inconsistent parameters. n_subjects == 0
  /// is not checked here; it surfaces as EmptyCohort when the cohort is built.
  void validate() const;

  /// Homogeneous Poisson process truncated at two events, no drop-out.
  static ScenarioParams poisson();
  /// Event-dependent rates (0.002 then 0.001) with drop-out at rate 0.001.
  static ScenarioParams event_dependent();
};

/// Counter-based generator: SplitMix64's finalizer applied to key + (k+1) * gamma.
/// Every draw is a pure function of (key, k), so streams never depend on
/// evaluation order or thread count.
class CounterRng {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64-counter v1";
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Key of the substream for subject `index` of a cohort drawn with `seed`.
  static constexpr std::uint64_t subject_key(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix(seed ^ mix(index + kGamma));
  }

  constexpr std::uint64_t bits(std::uint64_t k) const noexcept { return mix(key_ + (k + 1) * kGamma); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  constexpr double uniform(std::uint64_t k) const noexcept {
    return (static_cast<double>(bits(k) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exponential with the given rate; +inf when rate is 0.
  double exponential(std::uint64_t k, double rate) const;

 private:
  std::uint64_t key_;
};

/// Seed of replicate r in a study started from base_seed.
constexpr std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t r) noexcept {
  return CounterRng::mix(base_seed ^ CounterRng::mix(r * CounterRng::kGamma + 1));
}

/// Deterministic in (params, seed). Subject ids are "S" plus the 1-based index,
/// zero-padded to a common width.
CohortDataset simulate_cohort(const ScenarioParams& params, std::uint64_t seed);

struct ReplicateSummary {
  std::size_t replicate_index = 0;
  double na_at_horizon = 0.0;
  double proposed_at_horizon = 0.0;
  std::size_t max_count_observed = 0;

  friend bool operator==(const ReplicateSummary&, const ReplicateSummary&) = default;
};

/// Simulates n_replicates cohorts and evaluates both estimators at
/// admin_cutoff. Output is ordered by replicate index and does not depend on
/// `threads` (0 means hardware concurrency).
std::vector<ReplicateSummary> run_replicates(const ScenarioParams& params, std::size_t n_replicates,
                                             std::uint64_t base_seed, unsigned threads = 1,
                                             ConditionalEstimator method = ConditionalEstimator::kOccupancyRatio);

}  // namespace recmean
