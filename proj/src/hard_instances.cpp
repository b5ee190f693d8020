#include "groupmms/hard_instances.hpp"

#include "groupmms/algorithms.hpp"

#include <stdexcept>

namespace groupmms {

namespace {

UtilityVector from_ints(std::initializer_list<int> values) {
  UtilityVector u;
  u.reserve(values.size());
  for (int v : values) u.push_back(Rational(v));
  return u;
}

std::vector<UtilityVector> group_from_ints(
    std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<UtilityVector> g;
  g.reserve(rows.size());
  for (const auto& row : rows) g.push_back(from_ints(row));
  return g;
}

void append_run(UtilityVector& u, int value, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) u.push_back(Rational(value));
}

UtilityVector runs(std::initializer_list<std::pair<int, std::size_t>> blocks) {
  UtilityVector u;
  for (const auto& [value, count] : blocks) append_run(u, value, count);
  return u;
}

Instance make_thm2(std::size_t n1) {
  if (n1 < 2) throw std::invalid_argument("thm2_manyone requires n1 >= 2");
  std::size_t l = f_value(n1);
  // One agent per unordered pair of goods, then all-ones padding up to n1.
  std::vector<UtilityVector> group0;
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = a + 1; b < l; ++b) {
      UtilityVector u(l, Rational(0));
      u[a] = 1;
      u[b] = 1;
      group0.push_back(std::move(u));
    }
  }
  while (group0.size() < n1) group0.push_back(UtilityVector(l, Rational(1)));
  std::vector<UtilityVector> group1 = {UtilityVector(l, Rational(1))};
  return Instance(l, {std::move(group0), std::move(group1)});
}

Instance make_thm7(std::size_t k) {
  if (k < 2) throw std::invalid_argument("thm7_multigroup requires k >= 2");
  std::size_t m = 2 * k;
  std::vector<UtilityVector> group0;
  if (k % 2 == 0) {
    std::size_t h = k / 2;
    group0.push_back(runs({{1, h}, {0, h}, {1, h}, {0, h}}));
    group0.push_back(runs({{1, h}, {0, h}, {0, h}, {1, h}}));
    group0.push_back(runs({{0, h}, {1, h}, {1, h}, {0, h}}));
    group0.push_back(runs({{0, h}, {1, h}, {0, h}, {1, h}}));
  } else {
    std::size_t lo = (k - 1) / 2;
    std::size_t hi = (k + 1) / 2;
    group0.push_back(runs({{1, lo}, {0, hi}, {1, hi}, {0, lo}}));
    group0.push_back(runs({{1, hi}, {0, lo}, {0, hi}, {1, lo}}));
    group0.push_back(runs({{0, hi}, {1, lo}, {0, lo}, {1, hi}}));
    group0.push_back(runs({{0, lo}, {1, hi}, {1, lo}, {0, hi}}));
    group0.push_back(runs({{1, lo}, {0, 1}, {1, k - 1}, {0, 1}, {1, lo}}));
  }

  std::vector<std::vector<UtilityVector>> groups;
  groups.push_back(std::move(group0));
  for (std::size_t i = 1; i < k; ++i) {
    groups.push_back({runs({{1, k}, {0, k}}), runs({{0, k}, {1, k}})});
  }
  return Instance(m, std::move(groups));
}

ExtRational exact(unsigned long num, unsigned long den) {
  Rational r(num, den);
  r.canonicalize();
  return ExtRational(std::move(r));
}

}  // namespace

std::string HardInstanceSpec::label() const {
  switch (name) {
    case HardInstanceName::prop1_fourtwo: return "prop1_fourtwo";
    case HardInstanceName::prop2_threethree: return "prop2_threethree";
    case HardInstanceName::thm1_twoone: return "thm1_twoone";
    case HardInstanceName::thm2_manyone: return "thm2_manyone(n1=" + std::to_string(param) + ")";
    case HardInstanceName::thm3_twotwo: return "thm3_twotwo";
    case HardInstanceName::thm7_multigroup:
      return "thm7_multigroup(k=" + std::to_string(param) + ")";
  }
  throw std::logic_error("unknown hard instance");
}

std::optional<HardInstanceName> hard_instance_from_name(const std::string& name) {
  if (name == "prop1_fourtwo") return HardInstanceName::prop1_fourtwo;
  if (name == "prop2_threethree") return HardInstanceName::prop2_threethree;
  if (name == "thm1_twoone") return HardInstanceName::thm1_twoone;
  if (name == "thm2_manyone") return HardInstanceName::thm2_manyone;
  if (name == "thm3_twotwo") return HardInstanceName::thm3_twotwo;
  if (name == "thm7_multigroup") return HardInstanceName::thm7_multigroup;
  return std::nullopt;
}

std::vector<std::string> hard_instance_names() {
  return {"prop1_fourtwo", "prop2_threethree", "thm1_twoone",
          "thm2_manyone", "thm3_twotwo",       "thm7_multigroup"};
}

bool hard_instance_needs_param(HardInstanceName name) {
  return name == HardInstanceName::thm2_manyone || name == HardInstanceName::thm7_multigroup;
}

Instance generate(const HardInstanceSpec& spec) {
  switch (spec.name) {
    case HardInstanceName::prop1_fourtwo:
      return Instance(4, {group_from_ints({{0, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 0, 1, 0}}),
                          group_from_ints({{1, 1, 0, 0}, {0, 0, 1, 1}})});
    case HardInstanceName::prop2_threethree:
      return Instance(4, {group_from_ints({{0, 1, 0, 1}, {1, 0, 0, 1}, {1, 0, 1, 0}}),
                          group_from_ints({{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}})});
    case HardInstanceName::thm1_twoone:
      return Instance(4, {group_from_ints({{3, 1, 2, 2}, {2, 3, 2, 1}}),
                          group_from_ints({{3, 2, 2, 1}})});
    case HardInstanceName::thm2_manyone:
      return make_thm2(spec.param);
    case HardInstanceName::thm3_twotwo:
      return Instance(4, {group_from_ints({{0, 2, 1, 1}, {2, 0, 1, 1}}),
                          group_from_ints({{1, 1, 0, 0}, {0, 0, 1, 1}})});
    case HardInstanceName::thm7_multigroup:
      return make_thm7(spec.param);
  }
  throw std::logic_error("unknown hard instance");
}

ExpectedBestRatio expected_best_ratio(const HardInstanceSpec& spec) {
  switch (spec.name) {
    case HardInstanceName::prop1_fourtwo: return {ExtRational(Rational(0)), true};
    case HardInstanceName::prop2_threethree: return {ExtRational(Rational(0)), true};
    case HardInstanceName::thm1_twoone: return {exact(3, 4), true};
    case HardInstanceName::thm2_manyone: {
      if (spec.param < 2) throw std::invalid_argument("thm2_manyone requires n1 >= 2");
      std::size_t half = f_value(spec.param) / 2;
      return {exact(1, half), false};
    }
    case HardInstanceName::thm3_twotwo: return {exact(1, 2), true};
    case HardInstanceName::thm7_multigroup: {
      if (spec.param < 2) throw std::invalid_argument("thm7_multigroup requires k >= 2");
      return {ExtRational(Rational(0)), true};
    }
  }
  throw std::logic_error("unknown hard instance");
}

VerifyReport verify_claim(const HardInstanceSpec& spec) {
  VerifyReport report;
  report.spec = spec;
  report.expected = expected_best_ratio(spec);
  Instance instance = generate(spec);
  BestRatioResult search = best_egalitarian_ratio(instance);
  report.computed = search.best_ratio;
  report.best_allocation = search.allocation;
  report.pass = report.expected.is_exact ? report.computed == report.expected.ratio
                                         : !(report.expected.ratio < report.computed);
  return report;
}

}  // namespace groupmms
