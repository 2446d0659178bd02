#include <gtest/gtest.h>

#include <random>

#include "brute_force_oracle.hpp"
#include "fixtures.hpp"
#include "recmean/estimators.hpp"

namespace recmean {
namespace {

TEST(BruteForceOracle, FixturesInExactArithmetic) {
  using test::Rational;
  EXPECT_EQ(test::oracle_mean_mass_flow(test::oracle_subjects(test::fixture_d1()), 3), Rational(2, 3));
  EXPECT_EQ(test::oracle_mean_mass_flow(test::oracle_subjects(test::fixture_d2()), 3), Rational(1));
  EXPECT_EQ(test::oracle_mean_mass_flow(test::oracle_subjects(test::fixture_d3()), 3), Rational(2, 3));
  EXPECT_EQ(test::oracle_nelson_aalen(test::oracle_subjects(test::fixture_d3()), 3), Rational(5, 6));
  EXPECT_EQ(test::oracle_mean_product_limit(test::oracle_subjects(test::fixture_d2()), 3), Rational(1));
}

TEST(BruteForceOracle, SmallCohortsMatchBothMethods) {
  std::mt19937_64 rng(2718);
  test::CohortShape shape;
  shape.min_subjects = 1;
  shape.max_subjects = 4;
  shape.max_events = 2;
  shape.cutoff = 4.0;
  for (int trial = 0; trial < 300; ++trial) {
    shape.dropouts = trial % 2 == 0;
    shape.lattice = trial % 3 != 2;
    const CohortDataset cohort = test::random_cohort(rng, shape);
    const auto subjects = test::oracle_subjects(cohort);
    const auto ratio = proposed_mean(cohort, ConditionalEstimator::kOccupancyRatio);
    const auto limit = proposed_mean(cohort, ConditionalEstimator::kProductLimit);
    for (double t : {1.0, 2.0, 2.5, 4.0}) {
      if (t > cohort.horizon()) continue;
      ASSERT_NEAR(ratio.mean.value_at(t), test::oracle_mean_mass_flow(subjects, t).convert_to<double>(), 1e-12);
      ASSERT_NEAR(limit.mean.value_at(t), test::oracle_mean_product_limit(subjects, t).convert_to<double>(), 1e-12);
      ASSERT_NEAR(nelson_aalen_mean(cohort).value_at(t), test::oracle_nelson_aalen(subjects, t).convert_to<double>(),
                  1e-12);
    }
  }
}

}  // namespace
}  // namespace recmean
