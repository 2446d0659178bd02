#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "recmean/risk_model.hpp"

namespace recmean {
namespace {

TEST(EventTimeGrid, UnionOfEventTimes) {
  EXPECT_EQ(event_time_grid(test::fixture_d1()).times, (std::vector<double>{1, 2}));
  EXPECT_EQ(event_time_grid(test::fixture_d2()).times, (std::vector<double>{1, 2}));
  const CohortDataset none({test::admin("A", {}, 3)});
  EXPECT_TRUE(event_time_grid(none).times.empty());
}

TEST(StratumSnapshot, Fixtures) {
  const auto d1 = test::fixture_d1();
  auto s = stratum_snapshot(d1, 0, 1);
  EXPECT_EQ(s.at_risk, 3u);
  EXPECT_EQ(s.events, 1u);
  s = stratum_snapshot(d1, 0, 2);
  EXPECT_EQ(s.at_risk, 2u);
  EXPECT_EQ(s.events, 1u);

  s = stratum_snapshot(test::fixture_d2(), 1, 2);
  EXPECT_EQ(s.at_risk, 1u);
  EXPECT_EQ(s.events, 1u);

  s = stratum_snapshot(test::fixture_d3(), 1, 2);
  EXPECT_EQ(s.at_risk, 0u);
  EXPECT_EQ(s.events, 0u);
}

TEST(StratumSnapshot, Preconditions) {
  EXPECT_THROW(stratum_snapshot(test::fixture_d1(), 2, 1), std::out_of_range);
  EXPECT_THROW(stratum_snapshot(test::fixture_d1(), 0, 1.5), std::invalid_argument);
}

TEST(StratumSnapshot, CensoredAtEventTimeIsAtRisk) {
  const CohortDataset c({test::dropout("A", {}, 2), test::admin("B", {2}, 4)});
  EXPECT_EQ(stratum_snapshot(c, 0, 2).at_risk, 2u);
}

TEST(RiskTable, MatchesDirectSnapshots) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    test::CohortShape shape;
    shape.dropouts = trial % 2 == 1;
    shape.lattice = trial % 3 != 0;
    shape.max_subjects = 30;
    const CohortDataset cohort = test::random_cohort(rng, shape);
    const RiskTable table(cohort);
    ASSERT_EQ(std::vector<double>(table.times().begin(), table.times().end()), event_time_grid(cohort).times);
    for (std::size_t i = 0; i < table.size(); ++i) {
      const double t = table.times()[i];
      std::size_t total = 0;
      std::size_t events = 0;
      auto active = table.active_strata(i);
      std::size_t a = 0;
      for (std::size_t j = 0; j <= cohort.max_order(); ++j) {
        const StratumSnapshot snap = stratum_snapshot(cohort, j, t);
        ASSERT_LE(snap.events, snap.at_risk);
        total += snap.at_risk;
        events += snap.events;
        if (snap.events > 0) {
          ASSERT_LT(a, active.size());
          EXPECT_EQ(active[a].stratum, j);
          EXPECT_EQ(active[a].at_risk, snap.at_risk);
          EXPECT_EQ(active[a].events, snap.events);
          ++a;
        }
      }
      EXPECT_EQ(a, active.size());
      EXPECT_EQ(table.total_at_risk(i), total);
      EXPECT_EQ(table.total_events(i), events);
    }
  }
}

// Strata plus subjects censored before t account for everyone; events of
// order j+1 summed over the grid equal the subjects with at least j+1 events.
TEST(RiskModelProperties, PartitionAndConservation) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    test::CohortShape shape;
    shape.dropouts = true;
    shape.lattice = trial % 2 == 0;
    shape.max_subjects = 25;
    const CohortDataset cohort = test::random_cohort(rng, shape);
    const auto grid = event_time_grid(cohort).times;
    std::vector<std::size_t> events_by_order(cohort.max_order() + 1, 0);
    for (double t : grid) {
      std::size_t in_strata = 0;
      for (std::size_t j = 0; j <= cohort.max_order(); ++j) {
        const auto snap = stratum_snapshot(cohort, j, t);
        in_strata += snap.at_risk;
        events_by_order[j] += snap.events;
      }
      std::size_t censored_before = 0;
      for (const auto& s : cohort.subjects()) censored_before += s.observation_end() < t ? 1 : 0;
      ASSERT_EQ(in_strata + censored_before, cohort.size());
    }
    for (std::size_t j = 0; j <= cohort.max_order(); ++j) {
      std::size_t reached = 0;
      for (const auto& s : cohort.subjects()) reached += s.event_count() >= j + 1 ? 1 : 0;
      ASSERT_EQ(events_by_order[j], reached);
    }
    ASSERT_EQ(events_by_order[cohort.max_order()], 0u);
  }
}

}  // namespace
}  // namespace recmean
