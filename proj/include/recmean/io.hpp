#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recmean/estimators.hpp"
#include "recmean/event_data.hpp"
#include "recmean/simulator.hpp"

namespace recmean::io {

// Cohort ingestion: header `subject_id,time,kind`, kind is EVENT or CENSOR
// (case-sensitive), time a non-negative decimal. Syntax errors raise
// ValidationError{kMalformedRow} carrying the 1-based line number.
inline constexpr std::string_view kCohortHeader = "subject_id,time,kind";
std::vector<RawRecord> parse_cohort_records(std::istream& in);
CohortDataset read_cohort_csv(std::istream& in);
CohortDataset read_cohort_csv(const std::filesystem::path& path);
/// Times are written in shortest round-trip form.
void write_cohort_csv(std::ostream& out, const CohortDataset& cohort);

// Estimate export, 12 significant digits.
inline constexpr std::string_view kEstimateHeader = "time,mean,na_mean,variance_bound,ci_low,ci_high";
void write_estimate_csv(std::ostream& out, std::span<const EstimateRow> rows);
/// The degenerate flag is not part of the format and reads back as false.
std::vector<EstimateRow> read_estimate_csv(std::istream& in);

// Replicate summaries, 12 significant digits.
inline constexpr std::string_view kReplicateHeader = "replicate,na_at_horizon,proposed_at_horizon,max_count";
void write_replicate_csv(std::ostream& out, std::span<const ReplicateSummary> rows);
std::vector<ReplicateSummary> read_replicate_csv(std::istream& in);

/// "%.12g"
std::string format_decimal(double value);

/// Writes to a sibling temporary file and renames it over `path`.
/// Throws std::runtime_error on any I/O failure; `path` is untouched then.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace recmean::io
