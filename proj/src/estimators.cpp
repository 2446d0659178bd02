#include "recmean/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/normal.hpp>

namespace recmean {

namespace {

// Conditional failure curves F(k | k-1), k = 1..J+1, advanced one grid time at
// a time. failure_[J+1] stays 0: no order beyond the largest observed one.
class OccupancyChain {
 public:
  OccupancyChain(std::size_t max_order, ConditionalEstimator method)
      : method_(method),
        failure_(max_order + 2, 0.0),
        survival_(max_order + 2, 1.0),
        mass_(max_order + 1, 0.0),
        tail_(max_order + 2, 0.0) {
    mass_[0] = 1.0;
  }

  std::size_t max_order() const { return mass_.size() - 1; }
  double failure(std::size_t k) const { return failure_[k]; }

  // P(j) = (1 - F(j+1 | j)) * prod_{k<=j} F(k | k-1)
  void occupancies(std::vector<double>& out) const {
    out.resize(mass_.size());
    double reached = 1.0;
    for (std::size_t j = 0; j < mass_.size(); ++j) {
      out[j] = (1.0 - failure_[j + 1]) * reached;
      reached *= failure_[j + 1];
    }
  }

  void advance(std::span<const StratumCount> active) {
    if (method_ == ConditionalEstimator::kProductLimit) {
      for (const auto& c : active) {
        survival_[c.stratum + 1] *= 1.0 - static_cast<double>(c.events) / static_cast<double>(c.at_risk);
        failure_[c.stratum + 1] = 1.0 - survival_[c.stratum + 1];
      }
      return;
    }
    moves_.clear();
    for (const auto& c : active) {
      moves_.push_back(mass_[c.stratum] * (static_cast<double>(c.events) / static_cast<double>(c.at_risk)));
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
      mass_[active[i].stratum] -= moves_[i];
      mass_[active[i].stratum + 1] += moves_[i];
    }
    const std::size_t top = max_order();
    tail_[top + 1] = 0.0;
    for (std::size_t j = top + 1; j-- > 0;) tail_[j] = tail_[j + 1] + mass_[j];
    for (std::size_t k = 1; k <= top; ++k) {
      failure_[k] = tail_[k - 1] > 0.0 ? tail_[k] / tail_[k - 1] : 0.0;
    }
  }

 private:
  ConditionalEstimator method_;
  std::vector<double> failure_;
  std::vector<double> survival_;  // product-limit only
  std::vector<double> mass_;      // occupancy ratio only
  std::vector<double> tail_;
  std::vector<double> moves_;
};

void check_order(std::size_t j, std::size_t lo, std::size_t hi) {
  if (j < lo || j > hi) {
    throw std::out_of_range("event order " + std::to_string(j) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
  }
}

void check_time(const CohortDataset& cohort, double t) {
  if (!(t >= 0.0) || t > cohort.horizon()) {
    throw std::out_of_range("time must lie in [0, cohort horizon]");
  }
}

double max_or_min_count(const CohortDataset& cohort, double t, BoundMode mode) {
  std::size_t best = mode == BoundMode::kMaxCount ? 0 : std::numeric_limits<std::size_t>::max();
  for (const auto& s : cohort.subjects()) {
    const std::size_t c = count_at(s, t);
    best = mode == BoundMode::kMaxCount ? std::max(best, c) : std::min(best, c);
  }
  return static_cast<double>(best);
}

VarianceBound make_bound(double t, double mu, double reference, BoundMode mode) {
  VarianceBound vb;
  vb.time = t;
  vb.mu_hat = mu;
  vb.count_reference = reference;
  vb.mode = mode;
  if (reference < mu) {
    vb.bound = 0.0;
    vb.degenerate = true;
  } else {
    vb.bound = mu * (reference - mu);
  }
  return vb;
}

}  // namespace

StepFunction km_conditional_failure(const CohortDataset& cohort, std::size_t j, ConditionalEstimator method) {
  check_order(j, 1, std::numeric_limits<std::size_t>::max() - 1);
  StepFunction curve(0.0);
  if (j > cohort.max_order()) return curve;
  const RiskTable table(cohort);
  OccupancyChain chain(table.max_order(), method);
  for (std::size_t i = 0; i < table.size(); ++i) {
    chain.advance(table.active_strata(i));
    curve.append(table.times()[i], chain.failure(j));
  }
  return curve;
}

StepFunction occupancy_probability(const CohortDataset& cohort, std::size_t j, ConditionalEstimator method) {
  check_order(j, 0, cohort.max_order());
  const RiskTable table(cohort);
  OccupancyChain chain(table.max_order(), method);
  std::vector<double> occ;
  StepFunction curve(j == 0 ? 1.0 : 0.0);
  for (std::size_t i = 0; i < table.size(); ++i) {
    chain.advance(table.active_strata(i));
    chain.occupancies(occ);
    curve.append(table.times()[i], occ[j]);
  }
  return curve;
}

std::vector<HazardIncrement> stratum_hazard_increments(const CohortDataset& cohort, std::size_t j) {
  check_order(j, 0, cohort.max_order());
  std::vector<HazardIncrement> out;
  for (double t : event_time_grid(cohort).times) {
    const StratumSnapshot snap = stratum_snapshot(cohort, j, t);
    if (snap.at_risk == 0) continue;
    out.push_back({t, static_cast<double>(snap.events) / static_cast<double>(snap.at_risk)});
  }
  return out;
}

MeanEstimate proposed_mean(const CohortDataset& cohort, ConditionalEstimator method) {
  return proposed_mean(RiskTable(cohort), method);
}

MeanEstimate proposed_mean(const RiskTable& table, ConditionalEstimator method) {
  MeanEstimate est;
  est.per_stratum.assign(table.max_order() + 1, StepFunction(0.0));
  std::vector<double> stratum_total(table.max_order() + 1, 0.0);
  OccupancyChain chain(table.max_order(), method);
  std::vector<double> occ;
  double total = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double t = table.times()[i];
    const auto active = table.active_strata(i);
    chain.occupancies(occ);  // left limits at t
    double step = 0.0;
    for (const auto& c : active) {
      const double inc = static_cast<double>(c.events) / static_cast<double>(c.at_risk) * occ[c.stratum];
      stratum_total[c.stratum] += inc;
      est.per_stratum[c.stratum].append(t, stratum_total[c.stratum]);
      step += inc;
    }
    total += step;
    est.mean.append(t, total);
    chain.advance(active);
  }
  return est;
}

StepFunction nelson_aalen_mean(const CohortDataset& cohort) { return nelson_aalen_mean(RiskTable(cohort)); }

StepFunction nelson_aalen_mean(const RiskTable& table) {
  StepFunction curve(0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    total += static_cast<double>(table.total_events(i)) / static_cast<double>(table.total_at_risk(i));
    curve.append(table.times()[i], total);
  }
  return curve;
}

StepFunction count_reference_curve(const CohortDataset& cohort, BoundMode mode) {
  std::vector<std::pair<double, std::size_t>> jumps;  // (time, order reached)
  jumps.reserve(cohort.total_events());
  for (const auto& s : cohort.subjects()) {
    const auto times = s.event_times();
    for (std::size_t k = 0; k < times.size(); ++k) jumps.emplace_back(times[k], k + 1);
  }
  std::sort(jumps.begin(), jumps.end());

  std::vector<std::size_t> histogram(cohort.max_order() + 1, 0);
  histogram[0] = cohort.size();
  std::size_t lowest = 0;
  std::size_t highest = 0;
  StepFunction curve(0.0);
  for (std::size_t i = 0; i < jumps.size();) {
    const double t = jumps[i].first;
    for (; i < jumps.size() && jumps[i].first == t; ++i) {
      --histogram[jumps[i].second - 1];
      ++histogram[jumps[i].second];
      highest = std::max(highest, jumps[i].second);
    }
    while (histogram[lowest] == 0) ++lowest;
    const std::size_t value = mode == BoundMode::kMaxCount ? highest : lowest;
    const double previous = curve.empty() ? curve.initial_value() : curve.values().back();
    if (static_cast<double>(value) != previous) curve.append(t, static_cast<double>(value));
  }
  return curve;
}

VarianceBound variance_upper_bound(const CohortDataset& cohort, double t, BoundMode mode) {
  return variance_upper_bound(cohort, proposed_mean(cohort), t, mode);
}

VarianceBound variance_upper_bound(const CohortDataset& cohort, const MeanEstimate& estimate, double t,
                                   BoundMode mode) {
  check_time(cohort, t);
  return make_bound(t, estimate.mean.value_at(t), max_or_min_count(cohort, t, mode), mode);
}

double standard_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal quantile needs 0 < p < 1");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

IncidenceRateInterval normal_interval(double point, double variance_bound, std::size_t n, double level,
                                      bool degenerate) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must lie in (0, 1)");
  if (n == 0) throw std::invalid_argument("interval needs at least one subject");
  IncidenceRateInterval ci;
  ci.point = point;
  ci.degenerate = degenerate;
  const double z = standard_normal_quantile(0.5 * (1.0 + level));
  ci.half_width = z * std::sqrt(std::max(variance_bound, 0.0)) / std::sqrt(static_cast<double>(n));
  ci.low = std::max(0.0, point - ci.half_width);
  ci.high = point + ci.half_width;
  return ci;
}

IncidenceRateInterval incidence_rate_ci(const CohortDataset& cohort, double t, double level, BoundMode mode,
                                        ConditionalEstimator method) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must lie in (0, 1)");
  const VarianceBound vb = variance_upper_bound(cohort, proposed_mean(cohort, method), t, mode);
  return normal_interval(vb.mu_hat, vb.bound, cohort.size(), level, vb.degenerate);
}

std::vector<EstimateRow> estimate_table(const CohortDataset& cohort, double horizon, double level,
                                        BoundMode mode, ConditionalEstimator method) {
  check_time(cohort, horizon);
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must lie in (0, 1)");
  const RiskTable table(cohort);
  const MeanEstimate est = proposed_mean(table, method);
  const StepFunction na = nelson_aalen_mean(table);
  const StepFunction reference = count_reference_curve(cohort, mode);

  std::vector<EstimateRow> rows;
  const auto add_row = [&](double t) {
    const VarianceBound vb = make_bound(t, est.mean.value_at(t), reference.value_at(t), mode);
    const IncidenceRateInterval ci = normal_interval(vb.mu_hat, vb.bound, cohort.size(), level, vb.degenerate);
    rows.push_back({t, vb.mu_hat, na.value_at(t), vb.bound, ci.low, ci.high, vb.degenerate});
  };
  for (double t : table.times()) {
    if (t > horizon) break;
    add_row(t);
  }
  if (rows.empty() || rows.back().time != horizon) add_row(horizon);
  return rows;
}

}  // namespace recmean
