#pragma once

#include <cstddef>
#include <vector>

#include "recmean/event_data.hpp"
#include "recmean/risk_model.hpp"
#include "recmean/step_function.hpp"

namespace recmean {

/// How the conditional probability of reaching order j given order j-1,
/// F(j | j-1), is estimated for j >= 2. Both give the usual Kaplan-Meier
/// failure curve for j = 1.
enum class ConditionalEstimator {
  /// F(j | j-1) = Q(j) / Q(j-1), where Q(j) is the probability of at least j
  /// events from a forward state-occupation recursion over the stratum risk
  /// sets. Without drop-outs the occupancies equal the observed fractions, so
  /// the mean coincides with Nelson-Aalen.
  kOccupancyRatio,
  /// Product-limit over stratum j-1 with delayed entry:
  /// F(j | j-1) = 1 - prod(1 - d/Y). Ignores subjects that enter the stratum
  /// after earlier ones have left it, so it is biased low whenever entries
  /// and exits interleave.
  kProductLimit,
};

/// Count reference C in the variance bound mu * (C - mu).
enum class BoundMode {
  kMaxCount,  // largest observed count by t over subjects
  kMinCount,  // smallest observed count by t over subjects
};

/// F(j | j-1)(t) for j >= 1; the zero function when no subject has j events.
/// Throws std::out_of_range for j = 0.
StepFunction km_conditional_failure(const CohortDataset& cohort, std::size_t j,
                                    ConditionalEstimator method = ConditionalEstimator::kOccupancyRatio);

/// Estimated probability of having exactly j events, built as the chain
/// product S(j+1 | j) * F(j | j-1) * ... * F(1 | 0), with F(max_order+1 | max_order) = 0.
/// j = 0 is the first-event Kaplan-Meier survival curve.
StepFunction occupancy_probability(const CohortDataset& cohort, std::size_t j,
                                   ConditionalEstimator method = ConditionalEstimator::kOccupancyRatio);

struct HazardIncrement {
  double time = 0.0;
  double increment = 0.0;
};

/// events / at_risk for stratum j at every grid time where its risk set is
/// non-empty.
std::vector<HazardIncrement> stratum_hazard_increments(const CohortDataset& cohort, std::size_t j);

struct MeanEstimate {
  StepFunction mean;
  /// per_stratum[j]: cumulative contribution of transitions out of stratum j.
  std::vector<StepFunction> per_stratum;
};

/// mu(t) = sum over strata j and grid times s <= t of
///   hazard_j(s) * occupancy_j(s-).
MeanEstimate proposed_mean(const CohortDataset& cohort,
                           ConditionalEstimator method = ConditionalEstimator::kOccupancyRatio);
MeanEstimate proposed_mean(const RiskTable& table,
                           ConditionalEstimator method = ConditionalEstimator::kOccupancyRatio);

/// Sum over grid times s <= t of (events at s) / (subjects observed at s).
StepFunction nelson_aalen_mean(const CohortDataset& cohort);
StepFunction nelson_aalen_mean(const RiskTable& table);

/// Largest or smallest count_at(subject, t) over all subjects, as a function of t.
StepFunction count_reference_curve(const CohortDataset& cohort, BoundMode mode);

struct VarianceBound {
  double time = 0.0;
  double mu_hat = 0.0;
  double count_reference = 0.0;
  /// Upper bound on Var(X_t), never an estimate of it.
  double bound = 0.0;
  /// Set when count_reference < mu_hat and the bound was clamped to 0.
  bool degenerate = false;
  BoundMode mode = BoundMode::kMaxCount;
};

/// Throws std::out_of_range unless 0 <= t <= cohort.horizon().
VarianceBound variance_upper_bound(const CohortDataset& cohort, double t,
                                   BoundMode mode = BoundMode::kMaxCount);
VarianceBound variance_upper_bound(const CohortDataset& cohort, const MeanEstimate& estimate,
                                   double t, BoundMode mode = BoundMode::kMaxCount);

struct IncidenceRateInterval {
  double low = 0.0;
  double high = 0.0;
  double point = 0.0;
  double half_width = 0.0;
  bool degenerate = false;
};

/// z quantile of the standard normal distribution. Throws
/// std::invalid_argument unless 0 < p < 1.
double standard_normal_quantile(double p);

/// Asymptotic normal interval point +/- z * sqrt(variance_bound / n), clamped
/// below at 0. Throws std::invalid_argument unless 0 < level < 1 and n > 0.
IncidenceRateInterval normal_interval(double point, double variance_bound, std::size_t n,
                                      double level, bool degenerate = false);

/// Interval for the incidence rate at t using the proposed mean and the
/// variance bound. Asymptotic: the normal approximation needs many events per
/// subject or many subjects.
IncidenceRateInterval incidence_rate_ci(const CohortDataset& cohort, double t, double level,
                                        BoundMode mode = BoundMode::kMaxCount,
                                        ConditionalEstimator method = ConditionalEstimator::kOccupancyRatio);

/// One row of the estimate export.
struct EstimateRow {
  double time = 0.0;
  double mean = 0.0;
  double na_mean = 0.0;
  double variance_bound = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool degenerate = false;
};

/// Rows for every grid time <= horizon, then one at the horizon unless the
/// last grid row is already there.
std::vector<EstimateRow> estimate_table(const CohortDataset& cohort, double horizon, double level,
                                        BoundMode mode = BoundMode::kMaxCount,
                                        ConditionalEstimator method = ConditionalEstimator::kOccupancyRatio);

}  // namespace recmean
