#include "groupmms/maximin.hpp"

#include "partition_search.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace groupmms {

std::size_t checked_power(std::size_t k, std::size_t m) {
  if (k == 0) throw std::invalid_argument("need at least one bundle");
  std::size_t p = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (p > kEnumerationLimit / k) {
      throw SizeGuardError("enumeration size " + std::to_string(k) + "^" + std::to_string(m) +
                           " exceeds the guard of " + std::to_string(kEnumerationLimit));
    }
    p *= k;
  }
  return p;
}

std::vector<std::vector<std::size_t>> MmsResult::bundles() const {
  std::vector<std::vector<std::size_t>> out(bundle_count);
  for (std::size_t g = 0; g < assignment.size(); ++g) out[assignment[g]].push_back(g);
  return out;
}

namespace {

Rational int_over_mpz(std::int64_t num, const mpz_class& den) {
  return Rational(mpz_class(static_cast<long>(num))) / Rational(den);
}

Rational int_over_int(std::int64_t num, std::int64_t den) {
  return Rational(mpz_class(static_cast<long>(num))) / Rational(mpz_class(static_cast<long>(den)));
}

// pow[g] = k^(m-1-g): good 0 is the most significant digit, so ascending
// codes enumerate assignments in lexicographic order.
std::vector<std::size_t> digit_weights(std::size_t k, std::size_t m) {
  std::vector<std::size_t> pow(m, 1);
  for (std::size_t g = m; g-- > 0;) {
    if (g + 1 < m) pow[g] = pow[g + 1] * k;
  }
  return pow;
}

}  // namespace

MmsResult mms(const UtilityVector& utilities, std::size_t k) {
  if (k == 0) throw std::invalid_argument("need at least one bundle");
  detail::ScaledWeights scaled = detail::scale_to_integers(utilities);
  std::int64_t value = detail::maximin_value(scaled.weights, k);
  MmsResult result;
  result.value = int_over_mpz(value, scaled.scale);
  result.bundle_count = k;
  result.assignment = detail::lex_smallest_witness(scaled.weights, k, value);
  return result;
}

Rational mms_value(const UtilityVector& utilities, std::size_t k) {
  if (k == 0) throw std::invalid_argument("need at least one bundle");
  detail::ScaledWeights scaled = detail::scale_to_integers(utilities);
  return int_over_mpz(detail::maximin_value(scaled.weights, k), scaled.scale);
}

MmsResult mms_oracle(const UtilityVector& utilities, std::size_t k) {
  if (k == 0) throw std::invalid_argument("need at least one bundle");
  detail::ScaledWeights scaled = detail::scale_to_integers(utilities);
  std::size_t m = utilities.size();
  std::size_t total = checked_power(k, m);
  std::vector<std::size_t> pow = digit_weights(k, m);

  std::int64_t best = -1;
  std::size_t best_code = 0;
  std::vector<std::int64_t> loads(k);
  for (std::size_t code = 0; code < total; ++code) {
    std::fill(loads.begin(), loads.end(), 0);
    for (std::size_t g = 0; g < m; ++g) {
      loads[(code / pow[g]) % k] += scaled.weights[g];
    }
    std::int64_t lo = *std::min_element(loads.begin(), loads.end());
    if (lo > best) {
      best = lo;
      best_code = code;
    }
  }

  MmsResult result;
  result.value = int_over_mpz(best, scaled.scale);
  result.bundle_count = k;
  result.assignment.resize(m);
  for (std::size_t g = 0; g < m; ++g) result.assignment[g] = (best_code / pow[g]) % k;
  return result;
}

std::vector<std::vector<Rational>> mms_values(const Instance& instance) {
  std::size_t k = instance.group_count();
  std::vector<std::vector<Rational>> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i].reserve(instance.group_size(i));
    for (std::size_t a = 0; a < instance.group_size(i); ++a) {
      out[i].push_back(mms_value(instance.utilities({i, a}), k));
    }
  }
  return out;
}

namespace {

struct AgentData {
  std::size_t group = 0;
  std::vector<std::int64_t> weights;
  std::int64_t mms_scaled = 0;  // same scale as weights; the scale cancels in ratios
};

// bundle/mms ratio, or +inf for agents whose maximin share is zero.
struct Frac {
  bool inf = false;
  std::int64_t num = 0;
  std::int64_t den = 1;
};

bool frac_less(const Frac& a, const Frac& b) {
  if (b.inf) return !a.inf;
  if (a.inf) return false;
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

struct Prepared {
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t total = 0;
  std::vector<std::size_t> pow;
  std::vector<AgentData> agents;
  std::vector<std::vector<Rational>> mms;
};

Prepared prepare(const Instance& instance) {
  Prepared p;
  p.k = instance.group_count();
  p.m = instance.good_count();
  p.total = checked_power(p.k, p.m);
  p.pow = digit_weights(p.k, p.m);
  p.mms.resize(p.k);
  for (AgentId id : instance.agents()) {
    detail::ScaledWeights scaled = detail::scale_to_integers(instance.utilities(id));
    AgentData data;
    data.group = id.group;
    data.mms_scaled = detail::maximin_value(scaled.weights, p.k);
    data.weights = std::move(scaled.weights);
    p.mms[id.group].push_back(int_over_mpz(data.mms_scaled, scaled.scale));
    p.agents.push_back(std::move(data));
  }
  return p;
}

struct ScanResult {
  bool found = false;
  Frac ratio;
  std::size_t code = 0;
};

// Best (max) minimum ratio over allocation codes in [begin, end); on ties the
// lowest code wins, so stitched ranges reproduce the full-range scan exactly.
ScanResult scan_codes(const Prepared& p, std::size_t begin, std::size_t end) {
  ScanResult out;
  std::vector<std::size_t> digit(p.m);
  for (std::size_t code = begin; code < end; ++code) {
    for (std::size_t g = 0; g < p.m; ++g) digit[g] = (code / p.pow[g]) % p.k;
    Frac lo;
    lo.inf = true;
    for (const AgentData& a : p.agents) {
      if (a.mms_scaled == 0) continue;  // her ratio is +inf, never the minimum here
      std::int64_t bundle = 0;
      for (std::size_t g = 0; g < p.m; ++g) {
        if (digit[g] == a.group) bundle += a.weights[g];
      }
      Frac r{false, bundle, a.mms_scaled};
      if (frac_less(r, lo)) lo = r;
    }
    if (!out.found || frac_less(out.ratio, lo)) {
      out.found = true;
      out.ratio = lo;
      out.code = code;
    }
  }
  return out;
}

BestRatioResult assemble(const Instance& instance, Prepared& p, const ScanResult& best) {
  BestRatioResult result;
  result.best_ratio = best.ratio.inf ? ExtRational::infinity()
                                     : ExtRational(int_over_int(best.ratio.num, best.ratio.den));
  result.allocation.assignment.resize(p.m);
  for (std::size_t g = 0; g < p.m; ++g) {
    result.allocation.assignment[g] = (best.code / p.pow[g]) % p.k;
  }
  result.mms_values = std::move(p.mms);
  (void)instance;
  return result;
}

}  // namespace

BestRatioResult best_egalitarian_ratio_serial(const Instance& instance) {
  Prepared p = prepare(instance);
  ScanResult best = scan_codes(p, 0, p.total);
  return assemble(instance, p, best);
}

BestRatioResult best_egalitarian_ratio(const Instance& instance) {
  Prepared p = prepare(instance);
  int threads = omp_get_max_threads();
  if (threads < 1) threads = 1;
  std::vector<ScanResult> partial(threads);

#pragma omp parallel num_threads(threads)
  {
    int t = omp_get_thread_num();
    std::size_t chunk = p.total / threads;
    std::size_t extra = p.total % threads;
    std::size_t begin = t * chunk + std::min<std::size_t>(t, extra);
    std::size_t end = begin + chunk + (static_cast<std::size_t>(t) < extra ? 1 : 0);
    partial[t] = scan_codes(p, begin, end);
  }

  ScanResult best;
  for (const ScanResult& r : partial) {
    if (!r.found) continue;
    if (!best.found || frac_less(best.ratio, r.ratio)) best = r;
  }
  return assemble(instance, p, best);
}

}  // namespace groupmms
