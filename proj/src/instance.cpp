#include "groupmms/instance.hpp"

#include "json.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace groupmms {

using nlohmann::json;

Instance::Instance(std::size_t good_count, std::vector<std::vector<UtilityVector>> groups)
    : good_count_(good_count), groups_(std::move(groups)) {
  if (groups_.empty()) throw std::invalid_argument("instance needs at least one group");
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    if (groups_[i].empty()) {
      throw std::invalid_argument("group " + std::to_string(i) + " has no agents");
    }
    for (std::size_t j = 0; j < groups_[i].size(); ++j) {
      const UtilityVector& u = groups_[i][j];
      if (u.size() != good_count_) {
        throw std::invalid_argument("agent (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") has " + std::to_string(u.size()) + " utilities, expected " +
                                    std::to_string(good_count_));
      }
      for (std::size_t g = 0; g < u.size(); ++g) {
        if (u[g] < 0) {
          throw std::invalid_argument("agent (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") has negative utility for good " + std::to_string(g));
        }
      }
    }
  }
}

std::size_t Instance::agent_count() const {
  std::size_t n = 0;
  for (const auto& g : groups_) n += g.size();
  return n;
}

std::vector<std::size_t> Instance::shape() const {
  std::vector<std::size_t> s;
  s.reserve(groups_.size());
  for (const auto& g : groups_) s.push_back(g.size());
  return s;
}

Rational Instance::total_utility(AgentId id) const {
  Rational total = 0;
  for (const Rational& u : utilities(id)) total += u;
  return total;
}

std::vector<AgentId> Instance::agents() const {
  std::vector<AgentId> out;
  out.reserve(agent_count());
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    for (std::size_t j = 0; j < groups_[i].size(); ++j) out.push_back({i, j});
  }
  return out;
}

std::vector<std::size_t> Allocation::bundle(std::size_t group) const {
  std::vector<std::size_t> goods;
  for (std::size_t g = 0; g < assignment.size(); ++g) {
    if (assignment[g] == group) goods.push_back(g);
  }
  return goods;
}

void validate_allocation(const Instance& instance, const Allocation& allocation) {
  if (allocation.assignment.size() != instance.good_count()) {
    throw std::invalid_argument("allocation covers " +
                                std::to_string(allocation.assignment.size()) +
                                " goods, instance has " + std::to_string(instance.good_count()));
  }
  for (std::size_t g = 0; g < allocation.assignment.size(); ++g) {
    if (allocation.assignment[g] >= instance.group_count()) {
      throw std::invalid_argument("good " + std::to_string(g) + " assigned to group " +
                                  std::to_string(allocation.assignment[g]) + ", instance has " +
                                  std::to_string(instance.group_count()) + " groups");
    }
  }
}

Rational bundle_utility(const Instance& instance, AgentId id,
                        const std::vector<std::size_t>& bundle) {
  Rational total = 0;
  for (std::size_t g : bundle) {
    if (g >= instance.good_count()) {
      throw std::invalid_argument("bundle contains good " + std::to_string(g) +
                                  ", instance has " + std::to_string(instance.good_count()));
    }
    total += instance.utility(id, g);
  }
  return total;
}

RatioReport ratio_report(const Instance& instance, const Allocation& allocation,
                         const std::vector<std::vector<Rational>>& mms_values) {
  validate_allocation(instance, allocation);
  if (mms_values.size() != instance.group_count()) {
    throw std::invalid_argument("mms_values shape mismatch");
  }
  for (std::size_t i = 0; i < mms_values.size(); ++i) {
    if (mms_values[i].size() != instance.group_size(i)) {
      throw std::invalid_argument("mms_values shape mismatch");
    }
  }

  RatioReport report;
  report.min_ratio = ExtRational::infinity();
  for (AgentId id : instance.agents()) {
    AgentRatio row;
    row.id = id;
    row.achieved = bundle_utility(instance, id, allocation.bundle(id.group));
    row.mms = mms_values[id.group][id.agent];
    if (row.mms == 0) {
      row.ratio = ExtRational::infinity();
    } else {
      row.ratio = ExtRational(row.achieved / row.mms);
    }
    if (row.ratio < report.min_ratio) report.min_ratio = row.ratio;
    report.per_agent.push_back(std::move(row));
  }
  return report;
}

namespace {

Rational utility_from_json(const json& value, const std::string& path) {
  if (value.is_number_integer()) {
    mpz_class z;
    if (value.is_number_unsigned()) {
      mpz_set_ui(z.get_mpz_t(), value.get<std::uint64_t>());
    } else {
      mpz_set_si(z.get_mpz_t(), value.get<std::int64_t>());
    }
    return Rational(z);
  }
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  if (value.is_number_float()) {
    throw ParseError(path + ": non-integer JSON numbers lose precision; write the value "
                     "as a string (\"p/q\" or decimal)");
  }
  throw ParseError(path + ": utility must be an integer or a string");
}

std::size_t size_from_json(const json& value, const std::string& path) {
  if (!value.is_number_integer()) {
    throw ParseError(path + ": expected a nonnegative integer");
  }
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  std::int64_t v = value.get<std::int64_t>();
  if (v < 0) throw ParseError(path + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("$: instance must be a JSON object");
  if (!j.contains("m")) throw ParseError("$: missing \"m\"");
  if (!j.contains("groups")) throw ParseError("$: missing \"groups\"");

  std::size_t m = size_from_json(j["m"], "$.m");
  const json& groups_json = j["groups"];
  if (!groups_json.is_array() || groups_json.empty()) {
    throw ParseError("$.groups: expected a non-empty array of groups");
  }

  std::vector<std::vector<UtilityVector>> groups;
  groups.reserve(groups_json.size());
  for (std::size_t i = 0; i < groups_json.size(); ++i) {
    const json& group_json = groups_json[i];
    std::string gpath = "$.groups[" + std::to_string(i) + "]";
    if (!group_json.is_array() || group_json.empty()) {
      throw ParseError(gpath + ": expected a non-empty array of agents");
    }
    std::vector<UtilityVector> agents;
    agents.reserve(group_json.size());
    for (std::size_t a = 0; a < group_json.size(); ++a) {
      const json& agent_json = group_json[a];
      std::string apath = gpath + "[" + std::to_string(a) + "]";
      if (!agent_json.is_array()) {
        throw ParseError(apath + ": expected an array of " + std::to_string(m) + " utilities");
      }
      if (agent_json.size() != m) {
        throw ParseError(apath + ": has " + std::to_string(agent_json.size()) +
                         " utilities, expected m = " + std::to_string(m));
      }
      UtilityVector u;
      u.reserve(m);
      for (std::size_t g = 0; g < agent_json.size(); ++g) {
        std::string upath = apath + "[" + std::to_string(g) + "]";
        Rational value = utility_from_json(agent_json[g], upath);
        if (value < 0) throw ParseError(upath + ": utilities must be nonnegative");
        u.push_back(std::move(value));
      }
      agents.push_back(std::move(u));
    }
    groups.push_back(std::move(agents));
  }
  return Instance(m, std::move(groups));
}

namespace {

// Integers small enough for a JSON number stay numbers; everything else is a
// canonical string. Keeps files readable without losing exactness.
json utility_to_json(const Rational& value) {
  if (value.get_den() == 1) {
    const mpz_class& num = value.get_num();
    if (num.fits_slong_p()) return json(static_cast<std::int64_t>(num.get_si()));
  }
  return json(to_string(value));
}

}  // namespace

std::string instance_to_json(const Instance& instance) {
  json groups = json::array();
  for (std::size_t i = 0; i < instance.group_count(); ++i) {
    json group = json::array();
    for (std::size_t a = 0; a < instance.group_size(i); ++a) {
      json agent = json::array();
      for (const Rational& u : instance.utilities({i, a})) agent.push_back(utility_to_json(u));
      group.push_back(std::move(agent));
    }
    groups.push_back(std::move(group));
  }
  json j;
  j["m"] = instance.good_count();
  j["groups"] = std::move(groups);
  return j.dump();
}

Allocation parse_allocation(const std::string& json_text, const Instance& instance) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("assignment")) {
    throw ParseError("$: expected an object with \"assignment\"");
  }
  const json& arr = j["assignment"];
  if (!arr.is_array()) throw ParseError("$.assignment: expected an array");
  Allocation allocation;
  allocation.assignment.reserve(arr.size());
  for (std::size_t g = 0; g < arr.size(); ++g) {
    allocation.assignment.push_back(
        size_from_json(arr[g], "$.assignment[" + std::to_string(g) + "]"));
  }
  try {
    validate_allocation(instance, allocation);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("$.assignment: ") + e.what());
  }
  return allocation;
}

std::string allocation_to_json(const Allocation& allocation) {
  json j;
  j["assignment"] = allocation.assignment;
  return j.dump();
}

}  // namespace groupmms
