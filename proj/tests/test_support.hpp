#pragma once

#include "groupmms/instance.hpp"
#include "groupmms/maximin.hpp"

#include <cstddef>
#include <random>
#include <vector>

namespace test_support {

// Integer utilities in [lo, hi].
inline groupmms::UtilityVector random_integer_utilities(std::mt19937_64& rng,
                                                        std::size_t goods,
                                                        int lo = 0, int hi = 10) {
  std::uniform_int_distribution<int> dist(lo, hi);
  groupmms::UtilityVector u;
  u.reserve(goods);
  for (std::size_t g = 0; g < goods; ++g) u.emplace_back(dist(rng));
  return u;
}

// Small exact fractions p/q, p in [0,12], q in [1,4].
inline groupmms::UtilityVector random_rational_utilities(std::mt19937_64& rng,
                                                         std::size_t goods) {
  std::uniform_int_distribution<int> num(0, 12);
  std::uniform_int_distribution<int> den(1, 4);
  groupmms::UtilityVector u;
  u.reserve(goods);
  for (std::size_t g = 0; g < goods; ++g) {
    groupmms::Rational r(num(rng), den(rng));
    r.canonicalize();
    u.push_back(r);
  }
  return u;
}

inline groupmms::Instance random_instance(std::mt19937_64& rng,
                                          const std::vector<std::size_t>& shape,
                                          std::size_t goods,
                                          bool fractions = false) {
  std::vector<std::vector<groupmms::UtilityVector>> groups;
  groups.reserve(shape.size());
  for (std::size_t n : shape) {
    std::vector<groupmms::UtilityVector> grp;
    grp.reserve(n);
    for (std::size_t a = 0; a < n; ++a) {
      grp.push_back(fractions ? random_rational_utilities(rng, goods)
                              : random_integer_utilities(rng, goods));
    }
    groups.push_back(std::move(grp));
  }
  return groupmms::Instance(goods, std::move(groups));
}

// Every agent with a positive maximin share receives at least frac times it.
inline bool guarantee_holds(const groupmms::Instance& inst,
                            const groupmms::Allocation& alloc,
                            const groupmms::Rational& frac) {
  for (const groupmms::AgentId& id : inst.agents()) {
    groupmms::Rational share =
        groupmms::mms_value(inst.utilities(id), inst.group_count());
    if (share == 0) continue;
    groupmms::Rational got =
        groupmms::bundle_utility(inst, id, alloc.bundle(id.group));
    if (got < frac * share) return false;
  }
  return true;
}

}  // namespace test_support
