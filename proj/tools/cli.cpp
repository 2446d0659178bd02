#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "recmean/estimators.hpp"
#include "recmean/io.hpp"
#include "recmean/simulator.hpp"
#include "svg_plot.hpp"

namespace recmean::cli {

namespace {

constexpr double kEqualityTolerance = 1e-10;

enum class Scenario { kPoisson, kEventDependent };

struct RunConfig {
  std::string input_path;
  std::string output_path;
  std::optional<double> horizon;
  double ci_level = 0.95;
  BoundMode bound_mode = BoundMode::kMaxCount;
  ConditionalEstimator conditional = ConditionalEstimator::kOccupancyRatio;
  Scenario scenario = Scenario::kPoisson;
  std::size_t subjects = 100;
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  std::optional<double> rate1;
  std::optional<double> rate2;
  std::optional<double> dropout_rate;
  std::optional<double> cutoff;
  unsigned threads = 1;
  bool emit_svg = false;
};

ScenarioParams scenario_params(const RunConfig& cfg) {
  ScenarioParams p = cfg.scenario == Scenario::kPoisson ? ScenarioParams::poisson() : ScenarioParams::event_dependent();
  p.n_subjects = cfg.subjects;
  if (cfg.rate1) p.gap_rates[0] = *cfg.rate1;
  if (cfg.rate2) p.gap_rates[1] = *cfg.rate2;
  if (cfg.dropout_rate) p.dropout_rate = *cfg.dropout_rate;
  if (cfg.cutoff) p.admin_cutoff = *cfg.cutoff;
  p.validate();
  return p;
}

std::filesystem::path svg_path_for(const std::string& output) {
  std::filesystem::path p(output);
  if (p.extension() == ".csv") return p.replace_extension(".svg");
  p += ".svg";
  return p;
}

std::string_view bound_name(BoundMode m) { return m == BoundMode::kMaxCount ? "max" : "min"; }

int cmd_estimate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CohortDataset cohort = io::read_cohort_csv(std::filesystem::path(cfg.input_path));
  const double horizon = cfg.horizon.value_or(cohort.horizon());
  if (!(horizon >= 0.0) || horizon > cohort.horizon()) {
    err << "error: horizon " << horizon << " outside [0, " << cohort.horizon() << "]\n";
    return 1;
  }
  const auto rows = estimate_table(cohort, horizon, cfg.ci_level, cfg.bound_mode, cfg.conditional);
  std::ostringstream csv;
  io::write_estimate_csv(csv, rows);
  io::write_file_atomic(cfg.output_path, csv.str());

  const EstimateRow& last = rows.back();
  const auto degenerate = std::count_if(rows.begin(), rows.end(), [](const EstimateRow& r) { return r.degenerate; });
  if (last.degenerate) {
    err << "warning: degenerate variance bound at horizon (count reference below mean); interval has zero width\n";
  } else if (degenerate > 0) {
    err << "warning: degenerate variance bound at " << degenerate << " time point(s)\n";
  }
  out << "subjects=" << cohort.size() << '\n'
      << "events=" << cohort.total_events() << '\n'
      << "horizon=" << io::format_decimal(horizon) << '\n'
      << "mean=" << io::format_decimal(last.mean) << '\n'
      << "na_mean=" << io::format_decimal(last.na_mean) << '\n'
      << "variance_bound=" << io::format_decimal(last.variance_bound) << '\n'
      << "bound_mode=" << bound_name(cfg.bound_mode) << '\n'
      << "level=" << io::format_decimal(cfg.ci_level) << '\n'
      << "ci_low=" << io::format_decimal(last.ci_low) << '\n'
      << "ci_high=" << io::format_decimal(last.ci_high) << '\n'
      << "degenerate=" << (last.degenerate ? 1 : 0) << '\n';
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const ScenarioParams params = scenario_params(cfg);
  const CohortDataset cohort = simulate_cohort(params, cfg.seed);
  std::ostringstream csv;
  io::write_cohort_csv(csv, cohort);
  io::write_file_atomic(cfg.output_path, csv.str());
  const auto dropouts = std::count_if(cohort.subjects().begin(), cohort.subjects().end(),
                                      [](const SubjectHistory& s) { return s.end_kind() == EndKind::kDropout; });
  out << "subjects=" << cohort.size() << '\n'
      << "events=" << cohort.total_events() << '\n'
      << "dropouts=" << dropouts << '\n'
      << "seed=" << cfg.seed << '\n'
      << "rng=" << CounterRng::kAlgorithm << '\n';
  return 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const ScenarioParams params = scenario_params(cfg);
  const auto rows = run_replicates(params, cfg.replicates, cfg.seed, cfg.threads, cfg.conditional);
  std::ostringstream csv;
  io::write_replicate_csv(csv, rows);
  io::write_file_atomic(cfg.output_path, csv.str());
  if (cfg.emit_svg) {
    const std::string title =
        cfg.scenario == Scenario::kPoisson ? "Poisson process, no drop-out" : "Event-dependent intensity with drop-out";
    io::write_file_atomic(svg_path_for(cfg.output_path), scatter_svg(rows, title));
  }

  std::size_t proposed_le_na = 0;
  std::size_t equal = 0;
  double sum_na = 0.0;
  double sum_proposed = 0.0;
  for (const auto& r : rows) {
    proposed_le_na += r.proposed_at_horizon <= r.na_at_horizon ? 1 : 0;
    equal += std::abs(r.proposed_at_horizon - r.na_at_horizon) < kEqualityTolerance ? 1 : 0;
    sum_na += r.na_at_horizon;
    sum_proposed += r.proposed_at_horizon;
  }
  const double n = static_cast<double>(rows.size());
  out << "replicates=" << rows.size() << '\n'
      << "proposed_le_na=" << proposed_le_na << '\n'
      << "equal_within_tol=" << equal << '\n'
      << "mean_na=" << io::format_decimal(sum_na / n) << '\n'
      << "mean_proposed=" << io::format_decimal(sum_proposed / n) << '\n';
  return 0;
}

void add_scenario_options(CLI::App& sub, RunConfig& cfg) {
  const std::map<std::string, Scenario> scenarios{{"poisson", Scenario::kPoisson},
                                                  {"event-dependent", Scenario::kEventDependent}};
  sub.add_option("--scenario", cfg.scenario,
                 "Preset: poisson (gap rates 0.003/0.003 per day, no drop-out) or event-dependent "
                 "(0.002 then 0.001 per day, drop-out 0.001 per day); cutoff 370 days")
      ->transform(CLI::CheckedTransformer(scenarios, CLI::ignore_case));
  sub.add_option("--subjects", cfg.subjects, "Subjects per cohort")->capture_default_str();
  sub.add_option("--seed", cfg.seed, "Base seed (64-bit)")->capture_default_str();
  sub.add_option("--rate1", cfg.rate1, "Rate of the first event, per day (overrides preset)");
  sub.add_option("--rate2", cfg.rate2, "Rate of the second event after the first, per day (overrides preset)");
  sub.add_option("--dropout-rate", cfg.dropout_rate, "Drop-out rate from time 0, per day; 0 disables");
  sub.add_option("--cutoff", cfg.cutoff, "Administrative end of study, days (overrides preset)");
}

void add_estimator_options(CLI::App& sub, RunConfig& cfg) {
  const std::map<std::string, ConditionalEstimator> methods{{"ratio", ConditionalEstimator::kOccupancyRatio},
                                                            {"product-limit", ConditionalEstimator::kProductLimit}};
  sub.add_option("--conditional", cfg.conditional,
                 "Conditional order-to-order estimate: ratio (default; matches Nelson-Aalen without drop-out) "
                 "or product-limit (delayed-entry Kaplan-Meier)")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Mean count, variance bound and incidence-rate intervals for recurrent events whose "
               "intensity changes after each event. Times are in days, rates per day."};
  app.name(args.empty() ? "recmean" : std::filesystem::path(args.front()).filename().string());
  app.require_subcommand(1);

  auto* estimate = app.add_subcommand("estimate", "Estimate the mean count curve from a cohort CSV");
  estimate->add_option("--input", cfg.input_path, "Cohort CSV (subject_id,time,kind)")->required()->check(CLI::ExistingFile);
  estimate->add_option("--output", cfg.output_path, "Estimate CSV to write")->required();
  estimate->add_option("--horizon", cfg.horizon, "Last time reported, days (default: latest censor time)");
  estimate->add_option("--level", cfg.ci_level, "Confidence level in (0,1)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  const std::map<std::string, BoundMode> bounds{{"max", BoundMode::kMaxCount}, {"min", BoundMode::kMinCount}};
  estimate->add_option("--bound-mode", cfg.bound_mode,
                       "Count reference in the variance bound: max or min observed count by t")
      ->transform(CLI::CheckedTransformer(bounds, CLI::ignore_case));
  add_estimator_options(*estimate, cfg);

  auto* simulate = app.add_subcommand("simulate", "Write one simulated cohort as CSV");
  simulate->add_option("--output", cfg.output_path, "Cohort CSV to write")->required();
  add_scenario_options(*simulate, cfg);

  auto* compare = app.add_subcommand("compare", "Replicate study: Nelson-Aalen vs proposed mean at the cutoff");
  compare->add_option("--output", cfg.output_path, "Replicate summary CSV to write")->required();
  compare->add_option("--replicates", cfg.replicates, "Number of simulated cohorts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compare->add_option("--threads", cfg.threads, "Worker threads (0 = all cores); output does not depend on it")
      ->capture_default_str();
  compare->add_flag("--svg", cfg.emit_svg, "Also write a scatter plot next to the CSV (.svg)");
  add_scenario_options(*compare, cfg);
  add_estimator_options(*compare, cfg);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*estimate) return cmd_estimate(cfg, out, err);
    if (*simulate) return cmd_simulate(cfg, out);
    return cmd_compare(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace recmean::cli
