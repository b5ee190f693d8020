#pragma once

#include "groupmms/instance.hpp"
#include "groupmms/maximin.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace groupmms {

// One run of the round-robin protocol: participants pick in cyclic order,
// each taking her highest-utility remaining good (ties to the lowest good
// index) until no goods remain.
struct RoundRobinTrace {
  std::size_t participant_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> picks;  // (participant, good), pick order
  std::vector<std::vector<std::size_t>> bundles;           // per participant, ascending
};

// goods: distinct indices into the participants' utility vectors.
RoundRobinTrace round_robin(const std::vector<UtilityVector>& participants,
                            const std::vector<std::size_t>& goods);

// Overlay of the reference agents' maximin bipartitions (k = 2): cell label
// bit r says which side of agent r's bipartition a good lies on. For each
// reference agent, the most valuable cell inside each of her two sides is
// designated (ties to the lowest label); pigeonhole puts at least
// mms / 2^(refs-1) of her value in each designated cell.
struct SubsetDecomposition {
  std::size_t cell_count = 0;
  std::vector<std::vector<std::size_t>> cells;  // label -> goods, ascending

  struct DesignatedPair {
    std::size_t side0_cell = 0;  // best cell inside her bundle-0 side
    std::size_t side1_cell = 0;  // best cell inside her bundle-1 side
  };
  std::vector<DesignatedPair> important;  // one per reference agent
};

// split_exponent must equal the number of reference agents.
SubsetDecomposition important_cells(const Instance& instance,
                                    const std::vector<AgentId>& reference_agents,
                                    std::size_t split_exponent);

// Optional audit trail filled by the allocation procedures.
struct SolveTrace {
  struct Take {
    AgentId id;
    std::size_t good;
  };
  struct Reduction {
    AgentId id;          // singleton agent leaving with `good`
    std::size_t good;
    std::size_t groups_left;
  };
  struct RoundRobinRun {
    std::vector<AgentId> participants;  // picking order
    RoundRobinTrace trace;
  };

  std::string branch;  // which case of the procedure fired
  std::vector<Take> takes;
  std::vector<Reduction> reductions;
  std::vector<RoundRobinRun> round_robins;
  std::optional<SubsetDecomposition> cells;
};

// Shapes are written (|group 0|, |group 1|, ...). Every procedure throws
// std::invalid_argument when the instance does not match its shape.

// (1,1): agent 0 cuts via her witness partition, agent 1 takes the side she
// values more (ties to the side containing good 0). Both reach their full
// maximin share.
Allocation cut_and_choose(const Instance& instance, SolveTrace* trace = nullptr);

// (2,1): acceptance threshold 1/3 of an agent's remaining total; guarantees
// every agent at least 2/3 of her maximin share.
Allocation allocate_two_one(const Instance& instance, SolveTrace* trace = nullptr);

// (n1,1) with n1 >= 2: threshold 1/(n1+1); guarantees 2/(n1+1).
Allocation allocate_many_one(const Instance& instance, SolveTrace* trace = nullptr);

// Largest l with l*(l-1)/2 <= n1. Controls the tight-instance family for the
// (n1,1) shape; the best ratio there is at most 1 / floor(f_value(n1)/2).
std::size_t f_value(std::size_t n1);

// (2,2): 16-cell decomposition from the four agents' bipartitions; group 0
// receives a shared designated cell, or a designated pair no group-1 agent
// designates; guarantees 1/8.
Allocation allocate_two_two(const Instance& instance, SolveTrace* trace = nullptr);

// (3,2): 32-cell variant, group 1 receives; guarantees 1/16.
Allocation allocate_three_two(const Instance& instance, SolveTrace* trace = nullptr);

// Threshold policy for the singleton-tail procedure. The guarantee holds for
// the recomputed variant; the frozen variant is kept for comparison.
enum class SingletonThreshold {
  recompute_per_reduction,  // denominator tracks the shrinking group count
  freeze_original,          // denominator fixed by the original group count
};

// (n1, 1, 1, ..., 1) with n1 >= 2 and k >= 2 groups: singleton groups that
// value one good at >= total/(n1+2k'-3) (k' = current group count) leave with
// that good; then group-0 members may take one dominant good each; round
// robin settles the rest. Guarantees 2/(n1+2k-3) for the original k.
Allocation allocate_singletons(const Instance& instance, SolveTrace* trace = nullptr);
Allocation allocate_singletons(const Instance& instance, SingletonThreshold policy,
                               SolveTrace* trace = nullptr);

enum class AlgorithmKind {
  single_group,
  cut_and_choose,
  two_one,
  many_one,
  two_two,
  three_two,
  singletons,
};

std::string algorithm_name(AlgorithmKind kind);
std::optional<AlgorithmKind> algorithm_from_name(const std::string& name);

struct AlgorithmChoice {
  AlgorithmKind kind;
  Rational guarantee;  // fraction of her maximin share each agent is promised
};

// Shape dispatch. nullopt when no procedure with a positive guarantee covers
// the shape (e.g. two groups of >= 2 and >= 4 members, or several non-
// singleton groups; see the hard-instance catalog for the witnesses).
std::optional<AlgorithmChoice> select_algorithm(const Instance& instance);

// The guarantee select_algorithm would attach to `kind` on this instance.
Rational algorithm_guarantee(AlgorithmKind kind, const Instance& instance);

Allocation run_algorithm(AlgorithmKind kind, const Instance& instance,
                         SolveTrace* trace = nullptr);

}  // namespace groupmms
