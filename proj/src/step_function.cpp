#include "recmean/step_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace recmean {

StepFunction::StepFunction(double initial, std::vector<double> breakpoints, std::vector<double> values)
    : initial_(initial), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size()) {
    throw std::invalid_argument("StepFunction: one value per breakpoint required");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > 0.0) || (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))) {
      throw std::invalid_argument("StepFunction: breakpoints must be positive and strictly increasing");
    }
  }
}

void StepFunction::append(double t, double value) {
  if (!(t > 0.0) || (!breakpoints_.empty() && !(t > breakpoints_.back()))) {
    throw std::invalid_argument("StepFunction::append: breakpoint out of order");
  }
  breakpoints_.push_back(t);
  values_.push_back(value);
}

double StepFunction::value_at(double t) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) return initial_;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepFunction::left_limit(double t) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) return initial_;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

}  // namespace recmean
