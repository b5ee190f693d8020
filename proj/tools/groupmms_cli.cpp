#include "groupmms/algorithms.hpp"
#include "groupmms/experiment.hpp"
#include "groupmms/hard_instances.hpp"
#include "groupmms/instance.hpp"
#include "groupmms/json_io.hpp"
#include "groupmms/maximin.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace groupmms;

// Exit codes: 0 success, 1 usage, 2 size guard, 3 verification failure.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string join_indices(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(xs[i]);
  }
  return out;
}

void print_report(const Instance& instance, const RatioReport& report) {
  for (const AgentRatio& row : report.per_agent) {
    std::cout << "agent (" << row.id.group << "," << row.id.agent << "): achieved "
              << to_string(row.achieved) << ", mms " << to_string(row.mms) << ", ratio "
              << to_string(row.ratio) << "\n";
  }
  (void)instance;
  std::cout << "min ratio: " << to_string(report.min_ratio) << "\n";
}

void print_allocation(const Instance& instance, const Allocation& allocation) {
  std::cout << "assignment: " << join_indices(allocation.assignment) << "\n";
  for (std::size_t i = 0; i < instance.group_count(); ++i) {
    std::cout << "group " << i << " bundle: " << join_indices(allocation.bundle(i)) << "\n";
  }
}

struct MmsOptions {
  std::string instance_path;
  std::size_t group = 0;
  std::size_t agent = 0;
  std::size_t k = 0;  // 0: default to the instance's group count
  bool json = false;
};

void run_mms(const MmsOptions& opt) {
  Instance instance = parse_instance(read_file(opt.instance_path));
  if (opt.group >= instance.group_count() || opt.agent >= instance.group_size(opt.group)) {
    throw std::invalid_argument("agent (" + std::to_string(opt.group) + "," +
                                std::to_string(opt.agent) + ") is out of range");
  }
  std::size_t k = opt.k == 0 ? instance.group_count() : opt.k;
  MmsResult result = mms(instance.utilities({opt.group, opt.agent}), k);
  if (opt.json) {
    std::cout << mms_result_to_json_value(result).dump() << "\n";
    return;
  }
  std::cout << "value: " << to_string(result.value) << "\n";
  std::vector<std::vector<std::size_t>> bundles = result.bundles();
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    std::cout << "bundle " << b << ": " << join_indices(bundles[b]) << "\n";
  }
}

struct SolveOptions {
  std::string instance_path;
  std::string algorithm = "auto";
  std::string trace_path;
  bool json = false;
};

void run_solve(const SolveOptions& opt) {
  Instance instance = parse_instance(read_file(opt.instance_path));

  AlgorithmKind kind;
  if (opt.algorithm == "auto") {
    std::optional<AlgorithmChoice> choice = select_algorithm(instance);
    if (!choice) {
      throw std::invalid_argument(
          "no allocation procedure carries a guarantee for this group shape; the catalog "
          "entries prop1_fourtwo, prop2_threethree, and thm7_multigroup witness why (see "
          "the verify subcommand)");
    }
    kind = choice->kind;
  } else {
    std::optional<AlgorithmKind> named = algorithm_from_name(opt.algorithm);
    if (!named) {
      throw std::invalid_argument("unknown algorithm \"" + opt.algorithm +
                                  "\" (auto, single-group, cut-and-choose, two-one, many-one, "
                                  "two-two, three-two, singletons)");
    }
    kind = *named;
  }

  SolveTrace trace;
  Allocation allocation = run_algorithm(kind, instance, &trace);
  Rational guarantee = algorithm_guarantee(kind, instance);
  std::vector<std::vector<Rational>> shares = mms_values(instance);
  RatioReport report = ratio_report(instance, allocation, shares);

  bool guarantee_ok = true;
  for (const AgentRatio& row : report.per_agent) {
    if (row.mms == 0) continue;
    if (row.achieved < guarantee * row.mms) guarantee_ok = false;
  }

  if (!opt.trace_path.empty()) {
    write_file(opt.trace_path, solve_trace_to_json_value(trace).dump() + "\n");
  }

  if (opt.json) {
    nlohmann::json j;
    j["algorithm"] = algorithm_name(kind);
    j["guarantee"] = rational_to_json(guarantee);
    j["allocation"] = allocation_to_json_value(allocation);
    j["report"] = ratio_report_to_json_value(report);
    j["guarantee_satisfied"] = guarantee_ok;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "algorithm: " << algorithm_name(kind) << "\n";
    std::cout << "guarantee: " << to_string(guarantee) << " of each agent's maximin share\n";
    print_allocation(instance, allocation);
    print_report(instance, report);
    std::cout << "guarantee satisfied: " << (guarantee_ok ? "yes" : "no") << "\n";
  }

  if (!guarantee_ok) {
    throw VerificationFailure("allocation misses the guarantee of " + to_string(guarantee));
  }
}

struct BestRatioOptions {
  std::string instance_path;
  bool serial = false;
  bool json = false;
};

void run_best_ratio(const BestRatioOptions& opt) {
  Instance instance = parse_instance(read_file(opt.instance_path));
  BestRatioResult result =
      opt.serial ? best_egalitarian_ratio_serial(instance) : best_egalitarian_ratio(instance);
  if (opt.json) {
    std::cout << best_ratio_to_json_value(result).dump() << "\n";
    return;
  }
  std::cout << "best ratio: " << to_string(result.best_ratio) << "\n";
  print_allocation(instance, result.allocation);
  print_report(instance, ratio_report(instance, result.allocation, result.mms_values));
}

struct HardOptions {
  std::string name;
  std::size_t param = 0;
  std::string out_path;
};

HardInstanceSpec parse_hard_spec(const std::string& name, std::size_t param) {
  std::optional<HardInstanceName> parsed = hard_instance_from_name(name);
  if (!parsed) {
    std::string known;
    for (const std::string& n : hard_instance_names()) known += " " + n;
    throw std::invalid_argument("unknown hard instance \"" + name + "\"; known:" + known);
  }
  HardInstanceSpec spec;
  spec.name = *parsed;
  spec.param = param;
  if (hard_instance_needs_param(spec.name) && param < 2) {
    throw std::invalid_argument(name + " needs --param >= 2");
  }
  return spec;
}

void run_hard(const HardOptions& opt) {
  HardInstanceSpec spec = parse_hard_spec(opt.name, opt.param);
  std::string text = instance_to_json(generate(spec)) + "\n";
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    write_file(opt.out_path, text);
    std::cout << "wrote " << opt.out_path << "\n";
  }
}

struct VerifyOptions {
  std::string name;
  std::size_t param = 0;
  bool json = false;
};

void run_verify(const VerifyOptions& opt) {
  HardInstanceSpec spec = parse_hard_spec(opt.name, opt.param);
  VerifyReport report = verify_claim(spec);
  if (opt.json) {
    std::cout << verify_report_to_json_value(report).dump() << "\n";
  } else {
    std::cout << report.spec.label() << ": best ratio " << to_string(report.computed)
              << (report.expected.is_exact ? " (expected " : " (expected <= ")
              << to_string(report.expected.ratio) << ") "
              << (report.pass ? "confirmed" : "MISMATCH") << "\n";
  }
  if (!report.pass) {
    throw VerificationFailure(report.spec.label() + ": computed best ratio " +
                              to_string(report.computed) + " violates the claim");
  }
}

struct ExperimentOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::string markdown_path;
  bool serial = false;
  bool json = false;
  bool csv_stdout = false;
};

void run_experiment_cmd(const ExperimentOptions& opt) {
  ExperimentConfig config = parse_experiment_config(read_file(opt.config_path));
  ExperimentTable table = opt.serial ? run_experiment_serial(config) : run_experiment(config);
  std::string csv = table_to_csv(table);

  std::filesystem::create_directories(opt.out_dir);
  std::string path = (std::filesystem::path(opt.out_dir) / table_csv_filename(config)).string();
  write_file(path, csv);

  if (!opt.markdown_path.empty()) {
    write_file(opt.markdown_path, tables_to_markdown({table}));
  }

  if (opt.json) {
    std::cout << experiment_table_to_json_value(table).dump() << "\n";
  } else if (opt.csv_stdout) {
    std::cout << csv;
  } else {
    std::cout << "wrote " << path << "\n";
    for (std::size_t t = 0; t < table.counts.size(); ++t) {
      std::cout << "ratio >= " << table.config.thresholds[t] << ": " << table.counts[t] << " / "
                << table.config.trials << "\n";
    }
  }
  std::cerr << "wall seconds: " << table.wall_seconds << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximin share computations for groups of agents sharing bundles"};
  app.require_subcommand(1);

  MmsOptions mms_opt;
  CLI::App* mms_cmd = app.add_subcommand("mms", "exact maximin share of one agent, with witness");
  mms_cmd->add_option("--instance", mms_opt.instance_path, "instance JSON file")->required();
  mms_cmd->add_option("--group", mms_opt.group, "agent's group index")->required();
  mms_cmd->add_option("--agent", mms_opt.agent, "agent's index within the group")->required();
  mms_cmd->add_option("--k", mms_opt.k, "bundle count (default: the instance's group count)");
  mms_cmd->add_flag("--json", mms_opt.json, "machine-readable output");
  mms_cmd->callback([&] { run_mms(mms_opt); });

  SolveOptions solve_opt;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "run the guaranteed allocation procedure for the shape");
  solve_cmd->add_option("--instance", solve_opt.instance_path, "instance JSON file")->required();
  solve_cmd->add_option("--algorithm", solve_opt.algorithm,
                        "auto (default) or a named procedure");
  solve_cmd->add_option("--trace", solve_opt.trace_path, "write a JSON audit trail here");
  solve_cmd->add_flag("--json", solve_opt.json, "machine-readable output");
  solve_cmd->callback([&] { run_solve(solve_opt); });

  BestRatioOptions best_opt;
  CLI::App* best_cmd =
      app.add_subcommand("best-ratio", "exhaustive best egalitarian ratio over all allocations");
  best_cmd->add_option("--instance", best_opt.instance_path, "instance JSON file")->required();
  best_cmd->add_flag("--serial", best_opt.serial, "single-worker reference scan");
  best_cmd->add_flag("--json", best_opt.json, "machine-readable output");
  best_cmd->callback([&] { run_best_ratio(best_opt); });

  HardOptions hard_opt;
  CLI::App* hard_cmd = app.add_subcommand("hard", "emit a catalog hard instance as JSON");
  hard_cmd->add_option("--name", hard_opt.name, "catalog entry name")->required();
  hard_cmd->add_option("--param", hard_opt.param, "n1 or group count, where required");
  hard_cmd->add_option("--out", hard_opt.out_path, "write to file instead of stdout");
  hard_cmd->callback([&] { run_hard(hard_opt); });

  VerifyOptions verify_opt;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "recompute a catalog claim by exhaustive search");
  verify_cmd->add_option("--name", verify_opt.name, "catalog entry name")->required();
  verify_cmd->add_option("--param", verify_opt.param, "n1 or group count, where required");
  verify_cmd->add_flag("--json", verify_opt.json, "machine-readable output");
  verify_cmd->callback([&] { run_verify(verify_opt); });

  ExperimentOptions exp_opt;
  CLI::App* exp_cmd =
      app.add_subcommand("experiment", "Monte Carlo best-ratio experiment, writes CSV");
  exp_cmd->add_option("--config", exp_opt.config_path, "experiment config JSON file")->required();
  exp_cmd->add_option("--out", exp_opt.out_dir, "output directory (default .)");
  exp_cmd->add_option("--markdown", exp_opt.markdown_path, "also write a markdown table here");
  exp_cmd->add_flag("--serial", exp_opt.serial, "single-worker reference loop");
  exp_cmd->add_flag("--json", exp_opt.json, "machine-readable output");
  exp_cmd->add_flag("--csv", exp_opt.csv_stdout, "print the CSV to stdout");
  exp_cmd->callback([&] { run_experiment_cmd(exp_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
