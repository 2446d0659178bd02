#include <gtest/gtest.h>

#include "recmean/step_function.hpp"

namespace recmean {
namespace {

TEST(StepFunction, RightContinuousWithLeftLimits) {
  const StepFunction f(0.5, {1.0, 2.0}, {1.5, 3.0});
  EXPECT_EQ(f.value_at(0.0), 0.5);
  EXPECT_EQ(f.value_at(0.999), 0.5);
  EXPECT_EQ(f.value_at(1.0), 1.5);
  EXPECT_EQ(f.left_limit(1.0), 0.5);
  EXPECT_EQ(f.left_limit(1.5), 1.5);
  EXPECT_EQ(f.value_at(2.0), 3.0);
  EXPECT_EQ(f.left_limit(2.0), 1.5);
  EXPECT_EQ(f.value_at(100.0), 3.0);
  EXPECT_EQ(f.left_limit(100.0), 3.0);
}

TEST(StepFunction, Append) {
  StepFunction f;
  EXPECT_EQ(f.value_at(7.0), 0.0);
  f.append(1.0, 2.0);
  f.append(3.0, 4.0);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.value_at(2.0), 2.0);
  EXPECT_THROW(f.append(3.0, 5.0), std::invalid_argument);
  EXPECT_THROW(f.append(2.0, 5.0), std::invalid_argument);
}

TEST(StepFunction, RejectsBadBreakpoints) {
  EXPECT_THROW(StepFunction(0.0, {2.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(StepFunction(0.0, {1.0}, {}), std::invalid_argument);
  EXPECT_THROW(StepFunction(0.0, {0.0}, {1.0}), std::invalid_argument);
}

}  // namespace
}  // namespace recmean
