#include "groupmms/algorithms.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace groupmms {

namespace {

std::string shape_text(const std::vector<std::size_t>& sizes) {
  std::string out = "(";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sizes[i]);
  }
  return out + ")";
}

void require_shape(const Instance& instance, const std::vector<std::size_t>& sizes,
                   const char* procedure) {
  if (instance.shape() != sizes) {
    throw std::invalid_argument(std::string(procedure) + " expects group sizes " +
                                shape_text(sizes) + ", got " + shape_text(instance.shape()));
  }
}

// Highest-utility good among `goods` (assumed ascending), ties to the lowest
// index. nullopt when goods is empty.
std::optional<std::size_t> favorite_good(const UtilityVector& u,
                                         const std::vector<std::size_t>& goods) {
  std::optional<std::size_t> best;
  for (std::size_t g : goods) {
    if (!best || u[g] > u[*best]) best = g;
  }
  return best;
}

Rational fraction(unsigned long num, unsigned long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

void remove_good(std::vector<std::size_t>& goods, std::size_t g) {
  goods.erase(std::find(goods.begin(), goods.end(), g));
}

Rational total_over(const UtilityVector& u, const std::vector<std::size_t>& goods) {
  Rational total = 0;
  for (std::size_t g : goods) total += u[g];
  return total;
}

}  // namespace

RoundRobinTrace round_robin(const std::vector<UtilityVector>& participants,
                            const std::vector<std::size_t>& goods) {
  if (participants.empty()) {
    throw std::invalid_argument("round robin needs at least one participant");
  }
  std::vector<std::size_t> remaining = goods;
  std::sort(remaining.begin(), remaining.end());
  if (std::adjacent_find(remaining.begin(), remaining.end()) != remaining.end()) {
    throw std::invalid_argument("round robin goods must be distinct");
  }
  if (!remaining.empty()) {
    for (const UtilityVector& u : participants) {
      if (remaining.back() >= u.size()) {
        throw std::invalid_argument("round robin good index out of range");
      }
    }
  }

  RoundRobinTrace trace;
  trace.participant_count = participants.size();
  trace.bundles.assign(participants.size(), {});
  std::size_t turn = 0;
  while (!remaining.empty()) {
    std::size_t p = turn % participants.size();
    std::size_t g = *favorite_good(participants[p], remaining);
    trace.picks.emplace_back(p, g);
    trace.bundles[p].push_back(g);
    remove_good(remaining, g);
    ++turn;
  }
  for (auto& bundle : trace.bundles) std::sort(bundle.begin(), bundle.end());
  return trace;
}

SubsetDecomposition important_cells(const Instance& instance,
                                    const std::vector<AgentId>& reference_agents,
                                    std::size_t split_exponent) {
  std::size_t a = reference_agents.size();
  if (a == 0) throw std::invalid_argument("need at least one reference agent");
  if (split_exponent != a) {
    throw std::invalid_argument("split_exponent must equal the number of reference agents");
  }
  if (a > 20) throw std::invalid_argument("too many reference agents");
  for (AgentId id : reference_agents) {
    if (id.group >= instance.group_count() || id.agent >= instance.group_size(id.group)) {
      throw std::invalid_argument("reference agent out of range");
    }
  }

  std::size_t m = instance.good_count();
  std::vector<std::size_t> label(m, 0);
  for (std::size_t r = 0; r < a; ++r) {
    MmsResult witness = mms(instance.utilities(reference_agents[r]), 2);
    for (std::size_t g = 0; g < m; ++g) label[g] |= witness.assignment[g] << r;
  }

  SubsetDecomposition dec;
  dec.cell_count = std::size_t{1} << a;
  dec.cells.assign(dec.cell_count, {});
  for (std::size_t g = 0; g < m; ++g) dec.cells[label[g]].push_back(g);

  for (std::size_t r = 0; r < a; ++r) {
    const UtilityVector& u = instance.utilities(reference_agents[r]);
    std::vector<Rational> cell_value(dec.cell_count, Rational(0));
    for (std::size_t g = 0; g < m; ++g) cell_value[label[g]] += u[g];

    SubsetDecomposition::DesignatedPair pair;
    for (std::size_t side = 0; side < 2; ++side) {
      std::optional<std::size_t> best;
      for (std::size_t c = 0; c < dec.cell_count; ++c) {
        if (((c >> r) & 1) != side) continue;
        if (!best || cell_value[c] > cell_value[*best]) best = c;
      }
      (side == 0 ? pair.side0_cell : pair.side1_cell) = *best;
    }
    dec.important.push_back(pair);
  }
  return dec;
}

Allocation cut_and_choose(const Instance& instance, SolveTrace* trace) {
  require_shape(instance, {1, 1}, "cut_and_choose");
  std::size_t m = instance.good_count();
  MmsResult cut = mms(instance.utilities({0, 0}), 2);
  std::vector<std::vector<std::size_t>> sides = cut.bundles();
  Rational v0 = bundle_utility(instance, {1, 0}, sides[0]);
  Rational v1 = bundle_utility(instance, {1, 0}, sides[1]);
  std::size_t chosen = v1 > v0 ? 1 : 0;  // ties go to side 0, which holds good 0

  Allocation alloc{std::vector<std::size_t>(m, 0)};
  for (std::size_t g : sides[chosen]) alloc.assignment[g] = 1;
  if (trace) {
    trace->branch = "chooser takes witness side " + std::to_string(chosen);
  }
  return alloc;
}

namespace {

// Shared core of the (n1,1) procedures: one dominant-good exit for the
// singleton, a threshold take per group-0 agent, round robin for the rest
// (singleton first). Thresholds are 1/denominator of each agent's value for
// the goods still in play when her stage begins.
Allocation many_one_core(const Instance& instance, std::size_t denominator, SolveTrace* trace) {
  std::size_t m = instance.good_count();
  std::size_t n1 = instance.group_size(0);
  Allocation alloc{std::vector<std::size_t>(m, 0)};
  std::vector<std::size_t> remaining(m);
  std::iota(remaining.begin(), remaining.end(), 0);

  AgentId single{1, 0};
  const UtilityVector& u2 = instance.utilities(single);
  Rational single_total = instance.total_utility(single);
  if (single_total > 0 && !remaining.empty()) {
    std::size_t g = *favorite_good(u2, remaining);
    if (u2[g] * static_cast<unsigned long>(denominator) >= single_total) {
      alloc.assignment[g] = 1;
      if (trace) {
        trace->branch = "singleton takes one dominant good";
        trace->takes.push_back({single, g});
      }
      return alloc;
    }
  }

  std::vector<Rational> totals(n1);
  for (std::size_t j = 0; j < n1; ++j) {
    totals[j] = instance.total_utility({0, j});
  }
  std::vector<bool> took(n1, false);
  for (std::size_t j = 0; j < n1; ++j) {
    if (remaining.empty()) break;
    if (totals[j] == 0) continue;  // guarantee vacuous; she joins the round robin
    AgentId id{0, j};
    const UtilityVector& u = instance.utilities(id);
    std::size_t g = *favorite_good(u, remaining);
    if (u[g] * static_cast<unsigned long>(denominator) >= totals[j]) {
      took[j] = true;
      remove_good(remaining, g);
      if (trace) trace->takes.push_back({id, g});
    }
  }

  std::vector<AgentId> order;
  order.push_back(single);
  for (std::size_t j = 0; j < n1; ++j) {
    if (!took[j]) order.push_back({0, j});
  }
  std::vector<UtilityVector> participants;
  participants.reserve(order.size());
  for (AgentId id : order) participants.push_back(instance.utilities(id));
  RoundRobinTrace rr = round_robin(participants, remaining);
  for (const auto& [p, g] : rr.picks) alloc.assignment[g] = order[p].group;

  if (trace) {
    if (trace->branch.empty()) trace->branch = "threshold takes then round robin";
    trace->round_robins.push_back({order, std::move(rr)});
  }
  return alloc;
}

}  // namespace

Allocation allocate_two_one(const Instance& instance, SolveTrace* trace) {
  require_shape(instance, {2, 1}, "allocate_two_one");
  return many_one_core(instance, 3, trace);
}

Allocation allocate_many_one(const Instance& instance, SolveTrace* trace) {
  if (instance.group_count() != 2 || instance.group_size(1) != 1 || instance.group_size(0) < 2) {
    throw std::invalid_argument("allocate_many_one expects group sizes (n1,1) with n1 >= 2, got " +
                                shape_text(instance.shape()));
  }
  return many_one_core(instance, instance.group_size(0) + 1, trace);
}

std::size_t f_value(std::size_t n1) {
  if (n1 == 0) throw std::invalid_argument("f_value requires n1 >= 1");
  std::size_t l = 1;
  while ((l + 1) * l / 2 <= n1) ++l;  // (l+1 choose 2) still fits
  return l;
}

namespace {

// The receiving side gets either a cell designated by both owners (lowest
// label) or the first owner pair, in the fixed scan order, that is not
// exactly some blocker's designated pair. Pigeonhole: the owners designate
// four distinct pairs when there is no shared cell, and there are fewer
// blockers than pairs.
std::vector<std::size_t> pick_receiving_cells(const SubsetDecomposition& dec,
                                              std::size_t owner_a, std::size_t owner_b,
                                              const std::vector<std::size_t>& blockers,
                                              std::string* branch) {
  auto pair_of = [&](std::size_t r) {
    return std::array<std::size_t, 2>{dec.important[r].side0_cell, dec.important[r].side1_cell};
  };
  std::array<std::size_t, 2> a = pair_of(owner_a);
  std::array<std::size_t, 2> b = pair_of(owner_b);

  std::optional<std::size_t> shared;
  for (std::size_t x : a) {
    for (std::size_t y : b) {
      if (x == y && (!shared || x < *shared)) shared = x;
    }
  }
  if (shared) {
    if (branch) *branch = "shared important cell " + std::to_string(*shared);
    return {*shared};
  }

  std::array<std::pair<std::size_t, std::size_t>, 4> pairs = {
      {{a[0], b[0]}, {a[0], b[1]}, {a[1], b[0]}, {a[1], b[1]}}};
  for (const auto& [x, y] : pairs) {
    bool blocked = false;
    for (std::size_t r : blockers) {
      std::array<std::size_t, 2> c = pair_of(r);
      if ((c[0] == x && c[1] == y) || (c[0] == y && c[1] == x)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) {
      if (branch) {
        *branch = "important pair (" + std::to_string(x) + "," + std::to_string(y) + ")";
      }
      return {x, y};
    }
  }
  throw std::logic_error("every designated pair is blocked");
}

}  // namespace

Allocation allocate_two_two(const Instance& instance, SolveTrace* trace) {
  require_shape(instance, {2, 2}, "allocate_two_two");
  std::vector<AgentId> refs = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  SubsetDecomposition dec = important_cells(instance, refs, 4);

  std::string branch;
  // Group 0's agents own the scan; group 1 keeps the complement, where each
  // of its agents still holds at least one designated cell.
  std::vector<std::size_t> cells = pick_receiving_cells(dec, 0, 1, {2, 3}, &branch);

  Allocation alloc{std::vector<std::size_t>(instance.good_count(), 1)};
  for (std::size_t c : cells) {
    for (std::size_t g : dec.cells[c]) alloc.assignment[g] = 0;
  }
  if (trace) {
    trace->branch = branch + " to group 0";
    trace->cells = std::move(dec);
  }
  return alloc;
}

Allocation allocate_three_two(const Instance& instance, SolveTrace* trace) {
  require_shape(instance, {3, 2}, "allocate_three_two");
  std::vector<AgentId> refs = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}};
  SubsetDecomposition dec = important_cells(instance, refs, 5);

  std::string branch;
  // Here the pair group receives; the three group-0 agents are the blockers.
  std::vector<std::size_t> cells = pick_receiving_cells(dec, 3, 4, {0, 1, 2}, &branch);

  Allocation alloc{std::vector<std::size_t>(instance.good_count(), 0)};
  for (std::size_t c : cells) {
    for (std::size_t g : dec.cells[c]) alloc.assignment[g] = 1;
  }
  if (trace) {
    trace->branch = branch + " to group 1";
    trace->cells = std::move(dec);
  }
  return alloc;
}

namespace {

Allocation singletons_core(const Instance& instance, SingletonThreshold policy,
                           SolveTrace* trace) {
  std::size_t k = instance.group_count();
  std::size_t n1 = instance.group_size(0);
  if (k < 2 || n1 < 2) {
    throw std::invalid_argument(
        "allocate_singletons expects group sizes (n1,1,...,1) with n1 >= 2 and k >= 2, got " +
        shape_text(instance.shape()));
  }
  for (std::size_t i = 1; i < k; ++i) {
    if (instance.group_size(i) != 1) {
      throw std::invalid_argument(
          "allocate_singletons expects singleton groups after group 0, got " +
          shape_text(instance.shape()));
    }
  }

  std::size_t m = instance.good_count();
  Allocation alloc{std::vector<std::size_t>(m, 0)};
  std::vector<std::size_t> remaining(m);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<bool> active(k, true);
  std::size_t k_cur = k;

  auto denominator = [&]() {
    std::size_t groups = policy == SingletonThreshold::recompute_per_reduction ? k_cur : k;
    return static_cast<unsigned long>(n1 + 2 * groups - 3);
  };

  // A singleton whose favorite remaining good reaches 1/denominator of her
  // remaining total leaves with that good; totals, group count, and the
  // threshold are refreshed after every departure.
  bool reduced = true;
  while (reduced) {
    reduced = false;
    for (std::size_t i = 1; i < k; ++i) {
      if (!active[i] || remaining.empty()) continue;
      AgentId id{i, 0};
      const UtilityVector& u = instance.utilities(id);
      Rational total = total_over(u, remaining);
      if (total == 0) continue;
      std::size_t g = *favorite_good(u, remaining);
      if (u[g] * denominator() >= total) {
        alloc.assignment[g] = i;
        remove_good(remaining, g);
        active[i] = false;
        --k_cur;
        if (trace) trace->reductions.push_back({id, g, k_cur});
        reduced = true;
        break;
      }
    }
  }

  // Group-0 takes, against totals frozen at the end of the reductions.
  unsigned long denom = denominator();
  std::vector<Rational> totals(n1);
  for (std::size_t j = 0; j < n1; ++j) {
    totals[j] = total_over(instance.utilities({0, j}), remaining);
  }
  std::vector<bool> took(n1, false);
  for (std::size_t j = 0; j < n1; ++j) {
    if (remaining.empty()) break;
    if (totals[j] == 0) continue;
    AgentId id{0, j};
    const UtilityVector& u = instance.utilities(id);
    std::size_t g = *favorite_good(u, remaining);
    if (u[g] * denom >= totals[j]) {
      took[j] = true;
      remove_good(remaining, g);
      if (trace) trace->takes.push_back({id, g});
    }
  }

  std::vector<AgentId> order;
  for (std::size_t i = 1; i < k; ++i) {
    if (active[i]) order.push_back({i, 0});
  }
  for (std::size_t j = 0; j < n1; ++j) {
    if (!took[j]) order.push_back({0, j});
  }
  if (!order.empty()) {
    std::vector<UtilityVector> participants;
    participants.reserve(order.size());
    for (AgentId id : order) participants.push_back(instance.utilities(id));
    RoundRobinTrace rr = round_robin(participants, remaining);
    for (const auto& [p, g] : rr.picks) alloc.assignment[g] = order[p].group;
    if (trace) trace->round_robins.push_back({order, std::move(rr)});
  }
  // With no round-robin participants, leftovers stay with group 0.

  if (trace) {
    trace->branch = std::to_string(trace->reductions.size()) + " reductions, " +
                    std::to_string(trace->takes.size()) + " takes";
  }
  return alloc;
}

}  // namespace

Allocation allocate_singletons(const Instance& instance, SolveTrace* trace) {
  return singletons_core(instance, SingletonThreshold::recompute_per_reduction, trace);
}

Allocation allocate_singletons(const Instance& instance, SingletonThreshold policy,
                               SolveTrace* trace) {
  return singletons_core(instance, policy, trace);
}

std::string algorithm_name(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::single_group: return "single-group";
    case AlgorithmKind::cut_and_choose: return "cut-and-choose";
    case AlgorithmKind::two_one: return "two-one";
    case AlgorithmKind::many_one: return "many-one";
    case AlgorithmKind::two_two: return "two-two";
    case AlgorithmKind::three_two: return "three-two";
    case AlgorithmKind::singletons: return "singletons";
  }
  throw std::logic_error("unknown algorithm kind");
}

std::optional<AlgorithmKind> algorithm_from_name(const std::string& name) {
  if (name == "single-group") return AlgorithmKind::single_group;
  if (name == "cut-and-choose") return AlgorithmKind::cut_and_choose;
  if (name == "two-one") return AlgorithmKind::two_one;
  if (name == "many-one") return AlgorithmKind::many_one;
  if (name == "two-two") return AlgorithmKind::two_two;
  if (name == "three-two") return AlgorithmKind::three_two;
  if (name == "singletons") return AlgorithmKind::singletons;
  return std::nullopt;
}

Rational algorithm_guarantee(AlgorithmKind kind, const Instance& instance) {
  std::size_t n1 = instance.group_size(0);
  std::size_t k = instance.group_count();
  switch (kind) {
    case AlgorithmKind::single_group: return 1;
    case AlgorithmKind::cut_and_choose: return 1;
    case AlgorithmKind::two_one: return fraction(2, 3);
    case AlgorithmKind::many_one: return fraction(2, n1 + 1);
    case AlgorithmKind::two_two: return fraction(1, 8);
    case AlgorithmKind::three_two: return fraction(1, 16);
    case AlgorithmKind::singletons: return fraction(2, n1 + 2 * k - 3);
  }
  throw std::logic_error("unknown algorithm kind");
}

std::optional<AlgorithmChoice> select_algorithm(const Instance& instance) {
  std::vector<std::size_t> sizes = instance.shape();
  std::size_t k = sizes.size();
  auto choice = [&](AlgorithmKind kind) {
    return AlgorithmChoice{kind, algorithm_guarantee(kind, instance)};
  };
  if (k == 1) return choice(AlgorithmKind::single_group);
  if (k == 2) {
    std::size_t n1 = sizes[0], n2 = sizes[1];
    if (n1 == 1 && n2 == 1) return choice(AlgorithmKind::cut_and_choose);
    if (n2 == 1 && n1 == 2) return choice(AlgorithmKind::two_one);
    if (n2 == 1 && n1 >= 3) return choice(AlgorithmKind::many_one);
    if (n1 == 2 && n2 == 2) return choice(AlgorithmKind::two_two);
    if (n1 == 3 && n2 == 2) return choice(AlgorithmKind::three_two);
    return std::nullopt;
  }
  if (sizes[0] >= 2 &&
      std::all_of(sizes.begin() + 1, sizes.end(), [](std::size_t s) { return s == 1; })) {
    return choice(AlgorithmKind::singletons);
  }
  return std::nullopt;
}

Allocation run_algorithm(AlgorithmKind kind, const Instance& instance, SolveTrace* trace) {
  switch (kind) {
    case AlgorithmKind::single_group:
      if (instance.group_count() != 1) {
        throw std::invalid_argument("single-group expects exactly one group, got " +
                                    shape_text(instance.shape()));
      }
      if (trace) trace->branch = "single group takes everything";
      return Allocation{std::vector<std::size_t>(instance.good_count(), 0)};
    case AlgorithmKind::cut_and_choose: return cut_and_choose(instance, trace);
    case AlgorithmKind::two_one: return allocate_two_one(instance, trace);
    case AlgorithmKind::many_one: return allocate_many_one(instance, trace);
    case AlgorithmKind::two_two: return allocate_two_two(instance, trace);
    case AlgorithmKind::three_two: return allocate_three_two(instance, trace);
    case AlgorithmKind::singletons: return allocate_singletons(instance, trace);
  }
  throw std::logic_error("unknown algorithm kind");
}

}  // namespace groupmms
