#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "recmean/event_data.hpp"

namespace recmean {
namespace {

using test::admin;

RawRecord ev(std::string id, double t) { return {std::move(id), t, RecordKind::kEvent, 0}; }
RawRecord cens(std::string id, double t) { return {std::move(id), t, RecordKind::kCensor, 0}; }

ValidationErrorKind error_of(const std::vector<RawRecord>& records) {
  try {
    validate_cohort(records);
  } catch (const ValidationError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ValidationError thrown";
  return ValidationErrorKind::kMalformedRow;
}

TEST(ValidateCohort, MinimalInput) {
  const std::vector<RawRecord> records{ev("S1", 1), cens("S1", 3), cens("S2", 3)};
  const CohortDataset cohort = validate_cohort(records);
  EXPECT_EQ(cohort.size(), 2u);
  EXPECT_EQ(cohort.max_order(), 1u);
  EXPECT_EQ(cohort.horizon(), 3.0);
  EXPECT_EQ(cohort.subjects()[0].observation_end(), 3.0);
}

TEST(ValidateCohort, InputOrderIsIrrelevant) {
  const std::vector<RawRecord> ordered{ev("S1", 1), cens("S1", 3), cens("S2", 3)};
  const std::vector<RawRecord> shuffled{cens("S2", 3), cens("S1", 3), ev("S1", 1)};
  EXPECT_EQ(validate_cohort(ordered), validate_cohort(shuffled));
}

TEST(ValidateCohort, Errors) {
  EXPECT_EQ(error_of({ev("S1", 5), cens("S1", 3)}), ValidationErrorKind::kEventAfterCensor);
  EXPECT_EQ(error_of({ev("S1", 1), cens("S2", 3)}), ValidationErrorKind::kMissingCensor);
  EXPECT_EQ(error_of({ev("S1", 1), ev("S1", 1), cens("S1", 3)}), ValidationErrorKind::kDuplicateEventTime);
  EXPECT_EQ(error_of({ev("S1", 0), cens("S1", 3)}), ValidationErrorKind::kNonPositiveTime);
  EXPECT_EQ(error_of({cens("S1", 0)}), ValidationErrorKind::kNonPositiveTime);
  EXPECT_EQ(error_of({cens("S1", 3), cens("S1", 4)}), ValidationErrorKind::kDuplicateCensor);
  EXPECT_EQ(error_of({}), ValidationErrorKind::kEmptyCohort);
}

TEST(ValidateCohort, EventAtCensorTimeIsKept) {
  const CohortDataset cohort = validate_cohort(std::vector<RawRecord>{ev("S1", 3), cens("S1", 3)});
  EXPECT_EQ(cohort.subjects()[0].event_count(), 1u);
}

TEST(ValidateCohort, EndKindFromLatestCensor) {
  const CohortDataset cohort =
      validate_cohort(std::vector<RawRecord>{ev("S1", 1), cens("S1", 1.5), cens("S2", 3), cens("S3", 3)});
  EXPECT_EQ(cohort.subjects()[0].end_kind(), EndKind::kDropout);
  EXPECT_EQ(cohort.subjects()[1].end_kind(), EndKind::kAdministrative);
}

TEST(CohortDataset, RejectsRepeatedIds) {
  EXPECT_THROW(CohortDataset({admin("A", {}, 1), admin("A", {}, 2)}), ValidationError);
}

TEST(SubjectHistory, RejectsTiesAndLateEvents) {
  EXPECT_THROW(admin("A", {1, 1}, 3), ValidationError);
  EXPECT_THROW(admin("A", {4}, 3), ValidationError);
  EXPECT_THROW(admin("A", {}, -1), ValidationError);
}

TEST(CountAt, RightContinuous) {
  const SubjectHistory s = admin("A", {1, 2}, 5);
  EXPECT_EQ(count_at(s, 1.5), 1u);
  EXPECT_EQ(count_at(s, 2.0), 2u);
  EXPECT_EQ(count_at(s, 0.0), 0u);
  EXPECT_EQ(count_at(admin("B", {}, 100), 100), 0u);
}

TEST(CountPath, UnitJumps) {
  const CountPath path = count_path(admin("A", {0.5, 2, 4}, 5));
  ASSERT_EQ(path.breakpoints.size(), 3u);
  for (std::size_t k = 0; k < path.counts.size(); ++k) EXPECT_EQ(path.counts[k], k + 1);
}

TEST(CohortProperties, CountPathsAndRoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    test::CohortShape shape;
    shape.dropouts = trial % 2 == 0;
    shape.lattice = trial % 3 == 0;
    const CohortDataset cohort = test::random_cohort(rng, shape);
    for (const auto& s : cohort.subjects()) {
      std::size_t previous = 0;
      for (double t = 0.0; t <= shape.cutoff; t += 0.37) {
        const std::size_t c = count_at(s, t);
        ASSERT_GE(c, previous);
        previous = c;
      }
      ASSERT_EQ(count_at(s, s.observation_end()), s.event_count());
    }
    const CohortDataset again = validate_cohort(to_records(cohort));
    ASSERT_EQ(again, validate_cohort(to_records(again)));
    // End kinds are inferred from the latest censor time, which the generator matches.
    ASSERT_EQ(again.size(), cohort.size());
  }
}

}  // namespace
}  // namespace recmean
