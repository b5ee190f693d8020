#include "partition_search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace groupmms::detail {

namespace {

constexpr std::int64_t kSumLimit = std::int64_t{1} << 60;

// Positive weights sorted descending, with suffix sums.
struct SortedWeights {
  std::vector<std::int64_t> w;
  std::vector<std::int64_t> suffix;  // suffix[i] = w[i] + ... + w[n-1]

  explicit SortedWeights(const std::vector<std::int64_t>& weights) {
    for (std::int64_t x : weights) {
      if (x > 0) w.push_back(x);
    }
    std::sort(w.begin(), w.end(), std::greater<>());
    suffix.assign(w.size() + 1, 0);
    for (std::size_t i = w.size(); i-- > 0;) suffix[i] = suffix[i + 1] + w[i];
  }
};

struct ValueSearch {
  const SortedWeights& sw;
  std::size_t k;
  std::vector<std::int64_t> load;
  std::int64_t best = 0;

  ValueSearch(const SortedWeights& sorted, std::size_t parts)
      : sw(sorted), k(parts), load(parts, 0) {}

  std::int64_t run() {
    best = greedy_seed();
    if (best * static_cast<std::int64_t>(k) == sw.suffix[0]) return best;  // perfect split
    dfs(0);
    return best;
  }

  // Longest-processing-time greedy gives the incumbent.
  std::int64_t greedy_seed() const {
    std::vector<std::int64_t> l(k, 0);
    for (std::int64_t x : sw.w) {
      *std::min_element(l.begin(), l.end()) += x;
    }
    return *std::min_element(l.begin(), l.end());
  }

  void dfs(std::size_t pos) {
    if (pos == sw.w.size()) {
      std::int64_t lo = *std::min_element(load.begin(), load.end());
      if (lo > best) best = lo;
      return;
    }
    // To beat the incumbent every part must reach best + 1.
    std::int64_t needed = 0;
    for (std::int64_t l : load) {
      if (l <= best) needed += best + 1 - l;
    }
    if (needed > sw.suffix[pos]) return;

    // Feed the emptiest part first; equal loads are interchangeable, try one.
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return load[a] != load[b] ? load[a] < load[b] : a < b;
    });
    for (std::size_t idx = 0; idx < k; ++idx) {
      std::size_t b = order[idx];
      if (idx > 0 && load[order[idx - 1]] == load[b]) continue;
      load[b] += sw.w[pos];
      dfs(pos + 1);
      load[b] -= sw.w[pos];
    }
  }
};

// Can the remaining weights (descending, from index pos) top every part up to
// target? rest must equal the sum of those weights.
bool completable(std::vector<std::int64_t>& load, const std::vector<std::int64_t>& rem,
                 std::size_t pos, std::int64_t target, std::int64_t rest) {
  std::int64_t deficit = 0;
  for (std::int64_t l : load) {
    if (l < target) deficit += target - l;
  }
  if (deficit == 0) return true;
  if (deficit > rest) return false;
  // deficit > 0 and deficit <= rest imply pos < rem.size()
  std::size_t k = load.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return load[a] != load[b] ? load[a] < load[b] : a < b;
  });
  for (std::size_t idx = 0; idx < k; ++idx) {
    std::size_t b = order[idx];
    if (idx > 0 && load[order[idx - 1]] == load[b]) continue;
    load[b] += rem[pos];
    bool ok = completable(load, rem, pos + 1, target, rest - rem[pos]);
    load[b] -= rem[pos];
    if (ok) return true;
  }
  return false;
}

}  // namespace

ScaledWeights scale_to_integers(const UtilityVector& utilities) {
  mpz_class common_den = 1;
  for (const Rational& u : utilities) {
    if (u < 0) throw std::invalid_argument("negative utility");
    mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(), u.get_den().get_mpz_t());
  }
  std::vector<mpz_class> scaled;
  scaled.reserve(utilities.size());
  mpz_class total = 0;
  for (const Rational& u : utilities) {
    mpz_class w = u.get_num() * (common_den / u.get_den());
    total += w;
    scaled.push_back(std::move(w));
  }
  if (total > kSumLimit) {
    throw SizeGuardError("scaled utilities exceed the exact int64 search limit (2^60); "
                         "reduce the magnitudes or denominators");
  }
  ScaledWeights out;
  out.scale = common_den;
  out.weights.reserve(scaled.size());
  for (const mpz_class& w : scaled) out.weights.push_back(w.get_si());
  return out;
}

std::int64_t maximin_value(const std::vector<std::int64_t>& weights, std::size_t k) {
  if (k == 0) throw std::invalid_argument("need at least one part");
  SortedWeights sw(weights);
  if (k == 1) return sw.suffix[0];
  if (sw.w.size() < k) return 0;  // some part must stay empty
  ValueSearch search(sw, k);
  return search.run();
}

std::vector<std::size_t> lex_smallest_witness(const std::vector<std::int64_t>& weights,
                                              std::size_t k, std::int64_t target) {
  if (k == 0) throw std::invalid_argument("need at least one part");
  std::size_t m = weights.size();
  std::vector<std::size_t> assignment(m, 0);
  if (target <= 0) return assignment;  // everything to part 0 is already optimal

  // Positive remaining weights after each position, sorted descending.
  std::vector<std::vector<std::int64_t>> rem_after(m + 1);
  std::vector<std::int64_t> rest_after(m + 1, 0);
  for (std::size_t i = m; i-- > 0;) {
    rem_after[i] = rem_after[i + 1];
    rest_after[i] = rest_after[i + 1];
    if (weights[i] > 0) {
      rem_after[i].insert(
          std::upper_bound(rem_after[i].begin(), rem_after[i].end(), weights[i], std::greater<>()),
          weights[i]);
      rest_after[i] += weights[i];
    }
  }

  std::vector<std::int64_t> load(k, 0);
  for (std::size_t i = 0; i < m; ++i) {
    bool placed = false;
    for (std::size_t b = 0; b < k; ++b) {
      load[b] += weights[i];
      if (completable(load, rem_after[i + 1], 0, target, rest_after[i + 1])) {
        assignment[i] = b;
        placed = true;
        break;
      }
      load[b] -= weights[i];
    }
    if (!placed) throw std::logic_error("witness target is not feasible");
  }
  return assignment;
}

}  // namespace groupmms::detail
