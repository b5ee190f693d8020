#pragma once

#include "groupmms/instance.hpp"

#include <cstddef>
#include <vector>

namespace groupmms {

// Enumeration budget for the brute-force paths: k^m <= 10^7, else SizeGuardError.
constexpr std::size_t kEnumerationLimit = 10'000'000;

// Returns k^m, or throws SizeGuardError when it exceeds kEnumerationLimit.
std::size_t checked_power(std::size_t k, std::size_t m);

// A maximin share with a witness partition. The witness is canonical: the
// lexicographically smallest good -> bundle assignment among all optimal
// partitions (so good 0 always lands in bundle 0).
struct MmsResult {
  Rational value;
  std::size_t bundle_count = 0;
  std::vector<std::size_t> assignment;  // good -> bundle

  // Goods per bundle, ascending within each bundle.
  std::vector<std::vector<std::size_t>> bundles() const;
};

// Exact maximin share of one agent splitting the goods into k bundles:
// the best achievable minimum bundle value. Branch-and-bound; exact.
MmsResult mms(const UtilityVector& utilities, std::size_t k);

// Value-only variant, skips the witness construction.
Rational mms_value(const UtilityVector& utilities, std::size_t k);

// Same contract as mms() by plain enumeration of all k^m assignments.
// Test oracle; subject to the enumeration guard.
MmsResult mms_oracle(const UtilityVector& utilities, std::size_t k);

// Per-agent maximin shares for the whole instance (k = group count),
// shaped like the instance's groups.
std::vector<std::vector<Rational>> mms_values(const Instance& instance);

struct BestRatioResult {
  ExtRational best_ratio;  // +inf iff every agent's maximin share is 0
  Allocation allocation;   // lexicographically smallest argmax assignment
  std::vector<std::vector<Rational>> mms_values;
};

// Exhausts all k^m allocations of goods to groups and maximizes the minimum
// per-agent ratio (bundle utility / maximin share). Exact rational answer.
// Subject to the enumeration guard. The parallel version splits the code
// range across OpenMP threads; results are identical for every thread count.
BestRatioResult best_egalitarian_ratio(const Instance& instance);
BestRatioResult best_egalitarian_ratio_serial(const Instance& instance);

}  // namespace groupmms
