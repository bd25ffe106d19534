#pragma once

#include "cheeger/consistency.hpp"
#include "cheeger/io.hpp"
#include "cheeger/manifold.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cheeger {

struct ExperimentConfig {
  std::string manifold = "circle";
  std::vector<std::size_t> n_list;
  /// Explicit epsilon per n (same length as n_list); empty means the rule.
  std::vector<double> epsilon_list;
  double epsilon_c = 1.0;
  /// Defaults to 3 / (2 + 4m).
  std::optional<double> k_epsilon;
  /// eps *= log(n)^log_power.
  double log_power = 0.0;
  std::string objective = "cheeger";
  double gamma = 0.0;
  std::string method = "pipeline";
  /// a = eps^bandwidth_exponent.
  double bandwidth_exponent = 1.0 / 3.0;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
  /// Quadrature resolution for cut errors; 0 picks a per-manifold default.
  int grid = 0;
  bool record_timings = false;

  int intrinsic_dim() const;
  double k_eps() const;
  double epsilon_for(std::size_t index) const;
  double bandwidth(double epsilon) const;
};

struct ConfigValidation {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;
  Json resolved;
  bool ok() const { return errors.empty(); }
};

/// Parses a JSON config, fills defaults and checks invariants. Messages carry
/// the line of the offending key where it can be located.
ConfigValidation validate_config_text(const std::string& text);
ConfigValidation validate_config(const std::filesystem::path& path);
/// Same checks on an in-memory config.
ConfigValidation validate_config(const ExperimentConfig& config);

Json resolved_config(const ExperimentConfig& c);

struct ExperimentRecord {
  std::size_t n = 0;
  int trial = 0;
  std::uint64_t trial_seed = 0;
  double epsilon = 0.0;
  double a = 0.0;
  double cheeger_ratio = 0.0;
  double continuum_ref = 0.0;
  double abs_error = 0.0;
  double l1_cut_error = 0.0;
  double discrete_error = 0.0;
  std::optional<double> smoothed_error;
  double sup_displacement = 0.0;
  double kappa = 0.0;
  std::string method;
  std::string certificate;
  bool degraded = false;
  std::optional<double> eigen_residual;
  std::string config_hash;
  bool failed = false;
  std::string error;
  double elapsed_sec = 0.0;
};

Json to_json(const ExperimentRecord& r, bool with_timings);
ExperimentRecord record_from_json(const Json& j);

struct ExperimentOutcome {
  std::vector<ExperimentRecord> records;
  Json rates;
  std::string digest;
  std::size_t reused = 0;
  std::size_t failed = 0;
};

struct RunOptions {
  int workers = 1;
  /// Stop after this many newly computed trials (0 = no limit); used to
  /// simulate an interrupted sweep.
  std::size_t max_new_trials = 0;
};

/// Runs every (n, trial), reusing per-trial files already in out_dir, then
/// writes summary.csv, rates.json and digest.txt.
ExperimentOutcome run_experiment(const ExperimentConfig& config, const RunOptions& opts = {});

/// One trial, independent of the filesystem.
ExperimentRecord run_trial(const ExperimentConfig& config, std::size_t n_index, int trial);

std::string record_filename(const ExperimentRecord& r);
std::string config_hash(const ExperimentConfig& c);

/// Rates: fit_rate on abs_error and l1_cut_error of successful records.
Json rates_json(const ExperimentConfig& c, const std::vector<ExperimentRecord>& records);
std::string summary_csv(const std::vector<ExperimentRecord>& records, bool with_timings);
std::string run_digest(const std::vector<ExperimentRecord>& records);

enum class PlotKind { RateLogLog, CutError, Concentration };
PlotKind plot_kind_from_name(const std::string& name);
std::string to_string(PlotKind k);

struct PlotData {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> sigma;
  std::vector<std::size_t> count;
  double slope = 0.0;
  double intercept = 0.0;
  /// Count of consecutive steps where y does not increase.
  int non_increasing_steps = 0;
};

/// Reads a summary (or ustat CSV), aggregates per n and writes
/// <kind>.tsv and <kind>.svg into out_dir.
PlotData emit_plot_data(const std::filesystem::path& summary, PlotKind kind,
                        const std::filesystem::path& out_dir);

}  // namespace cheeger
