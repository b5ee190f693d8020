#include "groupmms/experiment.hpp"

#include "groupmms/maximin.hpp"

#include "json.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace groupmms {

using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Chained finalizer over the key components; component distinguishes the two
// uniforms behind a Box-Muller draw.
std::uint64_t draw_bits(std::uint64_t seed, std::uint64_t trial, std::size_t agent,
                        std::size_t good, std::size_t component) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ trial);
  h = splitmix64(h ^ static_cast<std::uint64_t>(agent));
  h = splitmix64(h ^ static_cast<std::uint64_t>(2 * good + component));
  return h;
}

// Uniform on [0,1) with 53 random mantissa bits.
double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr double kTwoPi = 6.28318530717958647692;

}  // namespace

std::string distribution_name(Distribution d) {
  switch (d) {
    case Distribution::uniform01: return "uniform01";
    case Distribution::exponential_mean1: return "exponential_mean1";
    case Distribution::lognormal_0_1: return "lognormal_0_1";
  }
  throw std::logic_error("unknown distribution");
}

std::optional<Distribution> distribution_from_name(const std::string& name) {
  if (name == "uniform01") return Distribution::uniform01;
  if (name == "exponential_mean1") return Distribution::exponential_mean1;
  if (name == "lognormal_0_1") return Distribution::lognormal_0_1;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (shape.empty()) throw std::invalid_argument("shape must name at least one group");
  for (std::size_t s : shape) {
    if (s == 0) throw std::invalid_argument("every group needs at least one agent");
  }
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (thresholds.empty()) throw std::invalid_argument("need at least one threshold");
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i - 1] < thresholds[i])) {
      throw std::invalid_argument("thresholds must be strictly ascending");
    }
  }
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("$: config must be a JSON object");

  ExperimentConfig config;
  if (j.contains("shape")) {
    if (!j["shape"].is_array()) throw ParseError("$.shape: expected an array");
    config.shape.clear();
    for (const json& v : j["shape"]) {
      if (!v.is_number_integer()) throw ParseError("$.shape: group sizes must be integers");
      std::int64_t s = v.get<std::int64_t>();
      if (s <= 0) throw ParseError("$.shape: group sizes must be positive");
      config.shape.push_back(static_cast<std::size_t>(s));
    }
  }
  if (j.contains("goods")) {
    if (!j["goods"].is_number_unsigned()) {
      throw ParseError("$.goods: expected a nonnegative integer");
    }
    config.goods = j["goods"].get<std::uint64_t>();
  }
  if (j.contains("distribution")) {
    if (!j["distribution"].is_string()) throw ParseError("$.distribution: expected a string");
    auto d = distribution_from_name(j["distribution"].get<std::string>());
    if (!d) {
      throw ParseError("$.distribution: unknown name \"" + j["distribution"].get<std::string>() +
                       "\" (uniform01, exponential_mean1, lognormal_0_1)");
    }
    config.distribution = *d;
  }
  if (j.contains("trials")) {
    if (!j["trials"].is_number_unsigned()) throw ParseError("$.trials: expected a positive integer");
    config.trials = j["trials"].get<std::uint64_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError("$.seed: expected a nonnegative integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("thresholds")) {
    if (!j["thresholds"].is_array()) throw ParseError("$.thresholds: expected an array");
    config.thresholds.clear();
    for (const json& v : j["thresholds"]) {
      if (!v.is_number()) throw ParseError("$.thresholds: expected numbers");
      config.thresholds.push_back(v.get<double>());
    }
  }
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("$: ") + e.what());
  }
  return config;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
  json j;
  j["shape"] = config.shape;
  j["goods"] = config.goods;
  j["distribution"] = distribution_name(config.distribution);
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  j["thresholds"] = config.thresholds;
  return j.dump();
}

double sample_utility(std::uint64_t seed, std::uint64_t trial, std::size_t agent,
                      std::size_t good, Distribution distribution) {
  double u0 = to_unit(draw_bits(seed, trial, agent, good, 0));
  switch (distribution) {
    case Distribution::uniform01:
      return u0;
    case Distribution::exponential_mean1:
      return -std::log1p(-u0);  // inverse CDF; u0 < 1 keeps this finite
    case Distribution::lognormal_0_1: {
      double u1 = to_unit(draw_bits(seed, trial, agent, good, 1));
      double radius = std::sqrt(-2.0 * std::log1p(-u0));
      return std::exp(radius * std::cos(kTwoPi * u1));
    }
  }
  throw std::logic_error("unknown distribution");
}

Instance sample_instance(const ExperimentConfig& config, std::size_t trial) {
  config.validate();
  std::vector<std::vector<UtilityVector>> groups;
  groups.reserve(config.shape.size());
  std::size_t flat = 0;
  for (std::size_t size : config.shape) {
    std::vector<UtilityVector> group;
    group.reserve(size);
    for (std::size_t a = 0; a < size; ++a, ++flat) {
      UtilityVector u;
      u.reserve(config.goods);
      for (std::size_t g = 0; g < config.goods; ++g) {
        u.push_back(Rational(
            sample_utility(config.seed, trial, flat, g, config.distribution)));
      }
      group.push_back(std::move(u));
    }
    groups.push_back(std::move(group));
  }
  return Instance(config.goods, std::move(groups));
}

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Scratch for one trial's search, reused across trials within a worker.
struct TrialKernel {
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t codes = 0;                // k^m
  std::vector<std::size_t> pow;         // pow[g] = k^(m-1-g)
  std::vector<std::size_t> agent_group; // flat agent -> group
  std::vector<std::vector<double>> utilities;
  std::vector<double> mms;
  std::vector<std::size_t> digit;
  std::vector<double> loads;

  TrialKernel(const std::vector<std::size_t>& shape, std::size_t goods) {
    k = shape.size();
    m = goods;
    codes = checked_power(k, m);
    pow.assign(m, 1);
    for (std::size_t g = m; g-- > 0;) {
      if (g + 1 < m) pow[g] = pow[g + 1] * k;
    }
    for (std::size_t i = 0; i < shape.size(); ++i) {
      for (std::size_t a = 0; a < shape[i]; ++a) agent_group.push_back(i);
    }
    utilities.assign(agent_group.size(), std::vector<double>(m, 0.0));
    mms.assign(agent_group.size(), 0.0);
    digit.assign(m, 0);
    loads.assign(k, 0.0);
  }

  void sample(std::uint64_t seed, std::uint64_t trial, Distribution distribution) {
    for (std::size_t a = 0; a < utilities.size(); ++a) {
      for (std::size_t g = 0; g < m; ++g) {
        utilities[a][g] = sample_utility(seed, trial, a, g, distribution);
      }
    }
  }

  double agent_mms(std::size_t a) {
    double best = -1.0;
    for (std::size_t code = 0; code < codes; ++code) {
      std::fill(loads.begin(), loads.end(), 0.0);
      for (std::size_t g = 0; g < m; ++g) loads[(code / pow[g]) % k] += utilities[a][g];
      double lo = *std::min_element(loads.begin(), loads.end());
      if (lo > best) best = lo;
    }
    return best;
  }

  double best_ratio() {
    for (std::size_t a = 0; a < utilities.size(); ++a) mms[a] = agent_mms(a);
    double best = -1.0;
    for (std::size_t code = 0; code < codes; ++code) {
      for (std::size_t g = 0; g < m; ++g) digit[g] = (code / pow[g]) % k;
      double lo = kInfinity;
      for (std::size_t a = 0; a < utilities.size(); ++a) {
        if (mms[a] <= 0.0) continue;  // ratio +inf, never the minimum here
        double bundle = 0.0;
        for (std::size_t g = 0; g < m; ++g) {
          if (digit[g] == agent_group[a]) bundle += utilities[a][g];
        }
        double ratio = bundle / mms[a];
        if (ratio < lo) lo = ratio;
      }
      if (lo > best) best = lo;
    }
    return best;
  }
};

ExperimentTable finish(const ExperimentConfig& config, std::vector<std::size_t> counts,
                       std::chrono::steady_clock::time_point start) {
  ExperimentTable table;
  table.config = config;
  table.counts = std::move(counts);
  table.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return table;
}

}  // namespace

double best_ratio_double(const std::vector<std::vector<double>>& utilities,
                         const std::vector<std::size_t>& shape) {
  std::size_t agents = 0;
  for (std::size_t s : shape) agents += s;
  if (utilities.size() != agents) {
    throw std::invalid_argument("utilities rows must match the shape's agent count");
  }
  std::size_t goods = utilities.empty() ? 0 : utilities[0].size();
  for (const auto& row : utilities) {
    if (row.size() != goods) throw std::invalid_argument("ragged utilities");
  }
  TrialKernel kernel(shape, goods);
  kernel.utilities = utilities;
  double best = kernel.best_ratio();
  return best < 0.0 ? kInfinity : best;
}

ExperimentTable run_experiment_serial(const ExperimentConfig& config) {
  config.validate();
  auto start = std::chrono::steady_clock::now();
  std::vector<std::size_t> counts(config.thresholds.size(), 0);
  TrialKernel kernel(config.shape, config.goods);
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    kernel.sample(config.seed, trial, config.distribution);
    double ratio = kernel.best_ratio();
    if (ratio < 0.0) ratio = kInfinity;
    for (std::size_t t = 0; t < config.thresholds.size(); ++t) {
      if (ratio >= config.thresholds[t] - kThresholdSlack) ++counts[t];
    }
  }
  return finish(config, std::move(counts), start);
}

ExperimentTable run_experiment(const ExperimentConfig& config) {
  config.validate();
  auto start = std::chrono::steady_clock::now();
  std::vector<std::size_t> counts(config.thresholds.size(), 0);
  std::size_t threshold_count = config.thresholds.size();

#pragma omp parallel
  {
    TrialKernel kernel(config.shape, config.goods);
    std::vector<std::size_t> local(threshold_count, 0);
    std::int64_t trials = static_cast<std::int64_t>(config.trials);

#pragma omp for schedule(static)
    for (std::int64_t trial = 0; trial < trials; ++trial) {
      kernel.sample(config.seed, static_cast<std::uint64_t>(trial), config.distribution);
      double ratio = kernel.best_ratio();
      if (ratio < 0.0) ratio = kInfinity;
      for (std::size_t t = 0; t < threshold_count; ++t) {
        if (ratio >= config.thresholds[t] - kThresholdSlack) ++local[t];
      }
    }

#pragma omp critical
    {
      for (std::size_t t = 0; t < threshold_count; ++t) counts[t] += local[t];
    }
  }
  return finish(config, std::move(counts), start);
}

namespace {

std::string format_threshold(double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

std::string format_proportion(double p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", p);
  return buf;
}

std::string shape_tag(const std::vector<std::size_t>& shape, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(shape[i]);
  }
  return out;
}

}  // namespace

std::string table_to_csv(const ExperimentTable& table) {
  std::string out = "threshold,count,trials,proportion\n";
  for (std::size_t t = 0; t < table.config.thresholds.size(); ++t) {
    double proportion =
        static_cast<double>(table.counts[t]) / static_cast<double>(table.config.trials);
    out += format_threshold(table.config.thresholds[t]);
    out += ",";
    out += std::to_string(table.counts[t]);
    out += ",";
    out += std::to_string(table.config.trials);
    out += ",";
    out += format_proportion(proportion);
    out += "\n";
  }
  return out;
}

std::string table_csv_filename(const ExperimentConfig& config) {
  return "table_" + shape_tag(config.shape, "x") + "_" + distribution_name(config.distribution) +
         ".csv";
}

std::string tables_to_markdown(const std::vector<ExperimentTable>& tables) {
  std::string out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const ExperimentTable& table = tables[i];
    bool new_section =
        i == 0 || tables[i - 1].config.distribution != table.config.distribution;
    if (new_section) {
      if (i) out += "\n";
      out += "### " + distribution_name(table.config.distribution) + "\n\n";
      out += "| shape |";
      for (double t : table.config.thresholds) out += " ratio >= " + format_threshold(t) + " |";
      out += "\n|---|";
      for (std::size_t t = 0; t < table.config.thresholds.size(); ++t) out += "---|";
      out += "\n";
    } else if (table.config.thresholds != tables[i - 1].config.thresholds) {
      throw std::invalid_argument("tables in one section must share thresholds");
    }
    out += "| (" + shape_tag(table.config.shape, ",") + ") |";
    for (std::size_t t = 0; t < table.counts.size(); ++t) {
      out += " " + std::to_string(table.counts[t]) + " |";
    }
    out += "\n";
  }
  return out;
}

}  // namespace groupmms
