#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace recmean {

/// Right-continuous piecewise-constant function on [0, inf).
///
/// The function equals `initial_value()` on [0, breakpoints[0]) and
/// `values[i]` on [breakpoints[i], breakpoints[i+1]). Breakpoints are strictly
/// increasing and positive.
class StepFunction {
 public:
  StepFunction() = default;
  explicit StepFunction(double initial) : initial_(initial) {}
  /// Throws std::invalid_argument if sizes differ or breakpoints are not
  /// strictly increasing and positive.
  StepFunction(double initial, std::vector<double> breakpoints, std::vector<double> values);

  /// Adds a jump at t. t must exceed every existing breakpoint.
  void append(double t, double value);

  double value_at(double t) const;
  /// Value just before t.
  double left_limit(double t) const;

  double initial_value() const noexcept { return initial_; }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return breakpoints_.size(); }
  bool empty() const noexcept { return breakpoints_.empty(); }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  double initial_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

}  // namespace recmean
