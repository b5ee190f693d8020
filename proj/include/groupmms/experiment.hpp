#pragma once

#include "groupmms/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace groupmms {

enum class Distribution {
  uniform01,          // uniform on [0,1)
  exponential_mean1,  // exponential, mean 1
  lognormal_0_1,      // log-normal, underlying normal mu=0 sigma=1
};

std::string distribution_name(Distribution d);
std::optional<Distribution> distribution_from_name(const std::string& name);

struct ExperimentConfig {
  std::vector<std::size_t> shape = {2, 2};  // group sizes
  std::size_t goods = 4;
  Distribution distribution = Distribution::uniform01;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::vector<double> thresholds = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

  // Throws std::invalid_argument: shape nonempty with positive sizes,
  // trials >= 1, thresholds nonempty and strictly ascending.
  void validate() const;
};

// JSON object with keys shape, goods, distribution, trials, seed, thresholds.
// Missing keys keep the defaults above.
ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& config);

// One utility draw as a pure function of its key; evaluation order and worker
// count cannot change the sampled values. agent is the group-major flat index.
double sample_utility(std::uint64_t seed, std::uint64_t trial, std::size_t agent,
                      std::size_t good, Distribution distribution);

// The exact-rational embedding of trial's sampled utility matrix (binary64
// values are exactly representable).
Instance sample_instance(const ExperimentConfig& config, std::size_t trial);

// Best min per-agent ratio over all allocations, double pipeline. utilities
// holds one row per agent in group-major flat order; shape gives group sizes.
// Agents with a zero maximin share are skipped (+inf ratio); +inf is returned
// when every agent is skipped. Subject to the enumeration guard.
double best_ratio_double(const std::vector<std::vector<double>>& utilities,
                         const std::vector<std::size_t>& shape);

struct ExperimentTable {
  ExperimentConfig config;
  // counts[t] = trials whose best ratio reached thresholds[t] (with 1e-9 slack
  // against float rounding at the boundary).
  std::vector<std::size_t> counts;
  double wall_seconds = 0.0;  // informational; never written to CSV output
};

// Slack applied when comparing a trial's best ratio against a threshold.
constexpr double kThresholdSlack = 1e-9;

ExperimentTable run_experiment(const ExperimentConfig& config);         // OpenMP over trials
ExperimentTable run_experiment_serial(const ExperimentConfig& config);  // reference loop

// CSV with header threshold,count,trials,proportion. Byte-stable.
std::string table_to_csv(const ExperimentTable& table);

// table_<sizes joined by x>_<distribution>.csv, e.g. table_2x2_uniform01.csv.
std::string table_csv_filename(const ExperimentConfig& config);

// One markdown section per distribution, one row per shape. Tables must share
// their threshold lists.
std::string tables_to_markdown(const std::vector<ExperimentTable>& tables);

}  // namespace groupmms
