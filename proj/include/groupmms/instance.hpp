#pragma once

#include "groupmms/rational.hpp"

#include <cstddef>
#include <vector>

namespace groupmms {

using UtilityVector = std::vector<Rational>;

// (group, agent-within-group) address. Flat agent order is group-major.
struct AgentId {
  std::size_t group = 0;
  std::size_t agent = 0;
  friend bool operator==(const AgentId&, const AgentId&) = default;
};

// A fair-division instance: m goods, k groups of agents. The groups share
// bundles (one bundle per group) but every agent keeps her own additive
// utility vector over the goods. Utilities are exact nonnegative rationals.
// Goods, groups, and agents are all 0-indexed.
class Instance {
 public:
  Instance(std::size_t good_count, std::vector<std::vector<UtilityVector>> groups);

  std::size_t good_count() const { return good_count_; }
  std::size_t group_count() const { return groups_.size(); }
  std::size_t group_size(std::size_t group) const { return groups_[group].size(); }
  std::size_t agent_count() const;
  std::vector<std::size_t> shape() const;

  const UtilityVector& utilities(AgentId id) const { return groups_[id.group][id.agent]; }
  const Rational& utility(AgentId id, std::size_t good) const {
    return groups_[id.group][id.agent][good];
  }
  Rational total_utility(AgentId id) const;

  // Group-major flat enumeration. Fixes per-agent ordering everywhere:
  // reports, RNG streams, tie-breaking.
  std::vector<AgentId> agents() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.good_count_ == b.good_count_ && a.groups_ == b.groups_;
  }

 private:
  std::size_t good_count_;
  std::vector<std::vector<UtilityVector>> groups_;
};

// Complete assignment of goods to groups: assignment[good] = group index.
struct Allocation {
  std::vector<std::size_t> assignment;

  // Goods given to `group`, ascending.
  std::vector<std::size_t> bundle(std::size_t group) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Throws std::invalid_argument if the allocation does not cover exactly the
// instance's goods or names a group out of range.
void validate_allocation(const Instance& instance, const Allocation& allocation);

Rational bundle_utility(const Instance& instance, AgentId id,
                        const std::vector<std::size_t>& bundle);

struct AgentRatio {
  AgentId id;
  Rational achieved;   // utility of the agent's group bundle
  Rational mms;        // her maximin share
  ExtRational ratio;   // achieved / mms, +inf when mms == 0
};

struct RatioReport {
  std::vector<AgentRatio> per_agent;  // Instance::agents() order
  ExtRational min_ratio;              // +inf iff every agent has mms == 0
};

// mms_values must be shaped like the instance's groups.
RatioReport ratio_report(const Instance& instance, const Allocation& allocation,
                         const std::vector<std::vector<Rational>>& mms_values);

// JSON form: {"m": <int>, "groups": [[[u, ...], ...], ...]} where each
// utility is a JSON integer, a decimal string, or a "p/q" string. Errors
// carry the JSON path of the offending element.
Instance parse_instance(const std::string& json_text);
std::string instance_to_json(const Instance& instance);

// JSON form: {"assignment": [group_of_good0, group_of_good1, ...]}.
Allocation parse_allocation(const std::string& json_text, const Instance& instance);
std::string allocation_to_json(const Allocation& allocation);

}  // namespace groupmms
