#include "groupmms/json_io.hpp"

namespace groupmms {

using nlohmann::json;

json rational_to_json(const Rational& value) {
  return json(to_string(value));
}

json ext_rational_to_json(const ExtRational& value) {
  return json(to_string(value));
}

json instance_to_json_value(const Instance& instance) {
  return json::parse(instance_to_json(instance));
}

json allocation_to_json_value(const Allocation& allocation) {
  json j;
  j["assignment"] = allocation.assignment;
  return j;
}

json mms_result_to_json_value(const MmsResult& result) {
  json j;
  j["value"] = rational_to_json(result.value);
  j["bundle_count"] = result.bundle_count;
  j["assignment"] = result.assignment;
  j["bundles"] = result.bundles();
  return j;
}

namespace {

json agent_to_json(AgentId id) {
  json j;
  j["group"] = id.group;
  j["agent"] = id.agent;
  return j;
}

}  // namespace

json ratio_report_to_json_value(const RatioReport& report) {
  json rows = json::array();
  for (const AgentRatio& row : report.per_agent) {
    json r;
    r["id"] = agent_to_json(row.id);
    r["achieved"] = rational_to_json(row.achieved);
    r["mms"] = rational_to_json(row.mms);
    r["ratio"] = ext_rational_to_json(row.ratio);
    rows.push_back(std::move(r));
  }
  json j;
  j["per_agent"] = std::move(rows);
  j["min_ratio"] = ext_rational_to_json(report.min_ratio);
  return j;
}

json best_ratio_to_json_value(const BestRatioResult& result) {
  json mms = json::array();
  for (const auto& group : result.mms_values) {
    json g = json::array();
    for (const Rational& v : group) g.push_back(rational_to_json(v));
    mms.push_back(std::move(g));
  }
  json j;
  j["best_ratio"] = ext_rational_to_json(result.best_ratio);
  j["allocation"] = allocation_to_json_value(result.allocation);
  j["mms_values"] = std::move(mms);
  return j;
}

json solve_trace_to_json_value(const SolveTrace& trace) {
  json j;
  j["branch"] = trace.branch;

  json takes = json::array();
  for (const SolveTrace::Take& take : trace.takes) {
    json t;
    t["id"] = agent_to_json(take.id);
    t["good"] = take.good;
    takes.push_back(std::move(t));
  }
  j["takes"] = std::move(takes);

  json reductions = json::array();
  for (const SolveTrace::Reduction& red : trace.reductions) {
    json r;
    r["id"] = agent_to_json(red.id);
    r["good"] = red.good;
    r["groups_left"] = red.groups_left;
    reductions.push_back(std::move(r));
  }
  j["reductions"] = std::move(reductions);

  json runs = json::array();
  for (const SolveTrace::RoundRobinRun& run : trace.round_robins) {
    json r;
    json ids = json::array();
    for (AgentId id : run.participants) ids.push_back(agent_to_json(id));
    r["participants"] = std::move(ids);
    json picks = json::array();
    for (const auto& [p, g] : run.trace.picks) {
      picks.push_back(json::array({p, g}));
    }
    r["picks"] = std::move(picks);
    r["bundles"] = run.trace.bundles;
    runs.push_back(std::move(r));
  }
  j["round_robins"] = std::move(runs);

  if (trace.cells) {
    json c;
    c["cell_count"] = trace.cells->cell_count;
    c["cells"] = trace.cells->cells;
    json important = json::array();
    for (const auto& pair : trace.cells->important) {
      important.push_back(json::array({pair.side0_cell, pair.side1_cell}));
    }
    c["important"] = std::move(important);
    j["cells"] = std::move(c);
  }
  return j;
}

json verify_report_to_json_value(const VerifyReport& report) {
  json j;
  j["name"] = report.spec.label();
  j["expected"] = ext_rational_to_json(report.expected.ratio);
  j["expected_is_exact"] = report.expected.is_exact;
  j["computed"] = ext_rational_to_json(report.computed);
  j["best_allocation"] = allocation_to_json_value(report.best_allocation);
  j["pass"] = report.pass;
  return j;
}

json experiment_table_to_json_value(const ExperimentTable& table) {
  json j;
  j["config"] = json::parse(experiment_config_to_json(table.config));
  j["counts"] = table.counts;
  json proportions = json::array();
  for (std::size_t t = 0; t < table.counts.size(); ++t) {
    proportions.push_back(static_cast<double>(table.counts[t]) /
                          static_cast<double>(table.config.trials));
  }
  j["proportions"] = std::move(proportions);
  return j;
}

}  // namespace groupmms
