#pragma once

#include "groupmms/instance.hpp"

#include <cstdint>
#include <vector>

namespace groupmms::detail {

// A utility vector brought to a common denominator so that all partition
// arithmetic runs on int64: u[i] == weights[i] / scale.
struct ScaledWeights {
  std::vector<std::int64_t> weights;
  mpz_class scale;
};

// Throws SizeGuardError when the scaled total would exceed 2^60 (headroom for
// the cross-multiplied ratio comparisons downstream).
ScaledWeights scale_to_integers(const UtilityVector& utilities);

// Exact max over k-way partitions of the minimum part sum. Branch and bound;
// weights need not be sorted. k >= 1.
std::int64_t maximin_value(const std::vector<std::int64_t>& weights, std::size_t k);

// Lexicographically smallest assignment (good -> part, in the given good
// order) whose minimum part sum reaches `target`. Requires target to be
// feasible, i.e. at most maximin_value(weights, k).
std::vector<std::size_t> lex_smallest_witness(const std::vector<std::int64_t>& weights,
                                              std::size_t k, std::int64_t target);

}  // namespace groupmms::detail
