#ifndef POPPROTO_CHECKER_HPP
#define POPPROTO_CHECKER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "popproto/predicate.hpp"
#include "popproto/protocol.hpp"

namespace popproto {

inline constexpr std::size_t kDefaultNodeBudget = 2'000'000;

// Configurations reachable from a start configuration, with the strongly
// connected components of the transition relation and the bottom (no exit
// edge) components marked. In the finite setting the possible
// infinitely-often sets of fair executions are exactly the bottom SCCs, so
// verdicts read off this graph are fairness-exact.
struct ReachabilityGraph {
  std::vector<Config> nodes;
  std::vector<std::vector<int>> edges;
  std::vector<int> scc_of;       // node -> component id
  int scc_count = 0;
  std::vector<char> bottom;      // component id -> has no outgoing edge
  std::unordered_map<Config, int, ConfigHash> index;

  int node_of(const Config& c) const {
    auto it = index.find(c);
    return it == index.end() ? -1 : it->second;
  }
  bool in_bottom_scc(const Config& c) const {
    int v = node_of(c);
    return v >= 0 && bottom[scc_of[v]];
  }
};

// Breadth-first closure of `successors` from c0. Throws BudgetExceeded once
// more than node_budget configurations have been discovered.
ReachabilityGraph explore(const Protocol& p, const Config& c0,
                          std::size_t node_budget = kDefaultNodeBudget);

struct StableVerdict {
  bool computes = true;
  std::optional<InputMultiset> input;  // failing input (predicate checks)
  std::optional<Config> initial;       // failing start (property checks)
  std::optional<Config> offending;     // bottom-SCC configuration at fault
  int observed = -2;                   // output there; -1 = undefined
  int expected = -2;
  std::string detail;
};

// Exhaustive check that the protocol stably computes `pred` for every input
// multiset of size n: each bottom-SCC configuration reachable from the
// input's initial configuration must have uniform output pred(I). Inputs
// are scanned in lexicographic count order; the first counterexample wins.
StableVerdict check_stable(const Protocol& p, const Predicate& pred, int n,
                           std::size_t node_budget = kDefaultNodeBudget);

// Same bottom-SCC criterion for an arbitrary configuration property over an
// explicit set of start configurations.
StableVerdict check_eventual_property(
    const Protocol& p, const std::vector<Config>& initial_set,
    const std::function<bool(const Config&)>& prop,
    std::size_t node_budget = kDefaultNodeBudget);

// All size-n configurations over the image of the input map holding at
// least one agent in `leader_states`.
std::vector<Config> leader_initial_set(const Protocol& p,
                                       const std::vector<int>& leader_states,
                                       int n);

// check_eventual_property specialized to "exactly one agent is in a leader
// state", over leader_initial_set(p, leader_states, n).
StableVerdict check_leader(const Protocol& p,
                           const std::vector<int>& leader_states, int n,
                           std::size_t node_budget = kDefaultNodeBudget);

struct SimTrace {
  std::uint64_t steps = 0;
  Config final;
  int entered_bottom = -1;  // 1/0, or -1 when no certified graph was given
  std::uint64_t first_entry_step = 0;
};

// Random scheduler: each step draws an ordered pair of distinct agents
// uniformly, then one applicable effective rule uniformly. Deterministic
// given the seed. When `certified` is provided, reports whether and when
// the walk entered one of its bottom SCCs.
SimTrace simulate(const Protocol& p, const Config& c0, std::uint64_t max_steps,
                  std::uint64_t seed,
                  const ReachabilityGraph* certified = nullptr);

// Undirected interaction topology with the current state of each vertex.
struct InteractionGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> vertex_state;
};

InteractionGraph ring_graph(int n);
InteractionGraph complete_graph(int n);

struct AbsorptionReport {
  bool absorbed = false;
  std::uint64_t steps = 0;
  std::vector<int> final_states;
};

// Edge-draw dynamics: each step picks an edge uniformly, assigns the two
// roles by a fair coin (irrelevant for symmetric protocols), and applies a
// uniformly chosen effective rule. Stops when the vertex-state vector
// equals `absorbing` (checked before each step) or after max_steps.
// Throws std::invalid_argument when the graph has no edges.
AbsorptionReport simulate_on_graph(
    const Protocol& p, const InteractionGraph& g, std::uint64_t max_steps,
    std::uint64_t seed,
    const std::optional<std::vector<int>>& absorbing = std::nullopt);

// All multisets with `slots` nonnegative entries summing to n, in
// lexicographic order. Shared by the checker and the search harness.
std::vector<std::vector<int>> enumerate_count_vectors(int slots, int n);

}  // namespace popproto

#endif
