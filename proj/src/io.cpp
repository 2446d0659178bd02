#include "recmean/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace recmean::io {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  throw ValidationError(ValidationErrorKind::kMalformedRow, what, line_no);
}

double parse_double(std::string_view text, std::size_t line_no, const char* column) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    malformed(line_no, std::string("cannot parse ") + column + " '" + std::string(text) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view text, std::size_t line_no, const char* column) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    malformed(line_no, std::string("cannot parse ") + column + " '" + std::string(text) + "'");
  }
  return value;
}

// Reads lines, dropping a trailing '\r'. Returns false at end of input.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void expect_header(std::istream& in, std::string_view header) {
  std::string line;
  if (!next_line(in, line) || line != header) {
    malformed(1, "expected header '" + std::string(header) + "'");
  }
}

std::string shortest(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string format_decimal(double value) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.12g", value);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::vector<RawRecord> parse_cohort_records(std::istream& in) {
  expect_header(in, kCohortHeader);
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) malformed(line_no, "expected 3 fields");
    if (fields[0].empty()) malformed(line_no, "empty subject_id");
    RawRecord rec;
    rec.subject_id = std::string(fields[0]);
    rec.time = parse_double(fields[1], line_no, "time");
    if (rec.time < 0.0) malformed(line_no, "time must be non-negative");
    if (fields[2] == "EVENT") {
      rec.kind = RecordKind::kEvent;
    } else if (fields[2] == "CENSOR") {
      rec.kind = RecordKind::kCensor;
    } else {
      malformed(line_no, "kind must be EVENT or CENSOR, got '" + std::string(fields[2]) + "'");
    }
    rec.line = line_no;
    records.push_back(std::move(rec));
  }
  return records;
}

CohortDataset read_cohort_csv(std::istream& in) { return validate_cohort(parse_cohort_records(in)); }

CohortDataset read_cohort_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_cohort_csv(in);
}

void write_cohort_csv(std::ostream& out, const CohortDataset& cohort) {
  out << kCohortHeader << '\n';
  for (const auto& rec : to_records(cohort)) {
    out << rec.subject_id << ',' << shortest(rec.time) << ','
        << (rec.kind == RecordKind::kEvent ? "EVENT" : "CENSOR") << '\n';
  }
}

void write_estimate_csv(std::ostream& out, std::span<const EstimateRow> rows) {
  out << kEstimateHeader << '\n';
  for (const auto& r : rows) {
    out << format_decimal(r.time) << ',' << format_decimal(r.mean) << ',' << format_decimal(r.na_mean) << ','
        << format_decimal(r.variance_bound) << ',' << format_decimal(r.ci_low) << ','
        << format_decimal(r.ci_high) << '\n';
  }
}

std::vector<EstimateRow> read_estimate_csv(std::istream& in) {
  expect_header(in, kEstimateHeader);
  std::vector<EstimateRow> rows;
  std::string line;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 6) malformed(line_no, "expected 6 fields");
    rows.push_back({parse_double(f[0], line_no, "time"), parse_double(f[1], line_no, "mean"),
                    parse_double(f[2], line_no, "na_mean"), parse_double(f[3], line_no, "variance_bound"),
                    parse_double(f[4], line_no, "ci_low"), parse_double(f[5], line_no, "ci_high"), false});
  }
  return rows;
}

void write_replicate_csv(std::ostream& out, std::span<const ReplicateSummary> rows) {
  out << kReplicateHeader << '\n';
  for (const auto& r : rows) {
    out << r.replicate_index << ',' << format_decimal(r.na_at_horizon) << ','
        << format_decimal(r.proposed_at_horizon) << ',' << r.max_count_observed << '\n';
  }
}

std::vector<ReplicateSummary> read_replicate_csv(std::istream& in) {
  expect_header(in, kReplicateHeader);
  std::vector<ReplicateSummary> rows;
  std::string line;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 4) malformed(line_no, "expected 4 fields");
    rows.push_back({parse_count(f[0], line_no, "replicate"), parse_double(f[1], line_no, "na_at_horizon"),
                    parse_double(f[2], line_no, "proposed_at_horizon"), parse_count(f[3], line_no, "max_count")});
  }
  return rows;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw std::runtime_error("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace recmean::io
