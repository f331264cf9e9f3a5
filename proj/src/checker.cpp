#include "popproto/checker.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>

#include "popproto/errors.hpp"

namespace popproto {

namespace {

// Strongly connected components, iterative so deep graphs cannot blow the
// call stack. Components are numbered in reverse topological order of the
// condensation (successors before predecessors).
std::vector<int> tarjan_scc(const std::vector<std::vector<int>>& adj,
                            int& scc_count) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> order(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  struct Frame {
    int v;
    std::size_t next_edge;
  };
  std::vector<Frame> frames;
  int counter = 0;
  scc_count = 0;

  for (int root = 0; root < n; ++root) {
    if (order[root] != -1) continue;
    frames.push_back({root, 0});
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < adj[f.v].size()) {
        int w = adj[f.v][f.next_edge++];
        if (order[w] == -1) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], order[w]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == order[v]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = scc_count;
            if (w == v) break;
          }
          ++scc_count;
        }
      }
    }
  }
  return comp;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling keeps the draw exactly uniform and the stream
  // reproducible independent of the standard library.
  std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

ReachabilityGraph explore(const Protocol& p, const Config& c0,
                          std::size_t node_budget) {
  ReachabilityGraph g;
  g.nodes.push_back(c0);
  g.index.emplace(c0, 0);
  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop_front();
    Config current = g.nodes[v];  // copy: g.nodes may reallocate below
    std::vector<int> out;
    for (Config& next : successors(p, current)) {
      auto [it, inserted] = g.index.emplace(next, g.nodes.size());
      if (inserted) {
        if (g.nodes.size() >= node_budget)
          throw BudgetExceeded(g.nodes.size(),
                               "exploration exceeded the node budget of " +
                                   std::to_string(node_budget));
        g.nodes.push_back(std::move(next));
        frontier.push_back(it->second);
      }
      out.push_back(it->second);
    }
    g.edges.resize(g.nodes.size());
    g.edges[v] = std::move(out);
  }
  g.edges.resize(g.nodes.size());

  g.scc_of = tarjan_scc(g.edges, g.scc_count);
  g.bottom.assign(g.scc_count, 1);
  for (std::size_t v = 0; v < g.edges.size(); ++v)
    for (int w : g.edges[v])
      if (g.scc_of[v] != g.scc_of[w]) g.bottom[g.scc_of[v]] = 0;
  return g;
}

std::vector<std::vector<int>> enumerate_count_vectors(int slots, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(slots, 0);
  // Lexicographic: first slot varies slowest.
  auto rec = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == slots - 1) {
      cur[slot] = remaining;
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      cur[slot] = k;
      self(self, slot + 1, remaining - k);
    }
  };
  if (slots > 0) rec(rec, 0, n);
  return out;
}

namespace {

// Shared core of the two stability checks: every configuration of every
// bottom SCC reachable from `start` must satisfy `good`.
template <typename GoodFn>
bool bottom_sccs_satisfy(const Protocol& p, const Config& start,
                         std::size_t budget, GoodFn&& good,
                         Config* offender) {
  ReachabilityGraph g = explore(p, start, budget);
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    if (!g.bottom[g.scc_of[v]]) continue;
    if (!good(g.nodes[v])) {
      if (offender) *offender = g.nodes[v];
      return false;
    }
  }
  return true;
}

}  // namespace

StableVerdict check_stable(const Protocol& p, const Predicate& pred, int n,
                           std::size_t node_budget) {
  if (n < 2) throw std::invalid_argument("population size must be >= 2");
  StableVerdict verdict;
  for (auto& counts : enumerate_count_vectors(p.num_symbols(), n)) {
    InputMultiset input{counts};
    int expected = pred.eval(input) ? 1 : 0;
    Config start = initial_configuration(p, input);
    Config offender;
    bool ok;
    try {
      ok = bottom_sccs_satisfy(
          p, start, node_budget,
          [&](const Config& c) {
            return output_of_configuration(p, c) == expected;
          },
          &offender);
    } catch (const BudgetExceeded& e) {
      std::string which;
      for (int s = 0; s < p.num_symbols(); ++s) {
        if (input.counts[s] == 0) continue;
        which += (which.empty() ? "" : ",") + p.symbol_name(s) + ":" +
                 std::to_string(input.counts[s]);
      }
      throw BudgetExceeded(e.explored(), std::string(e.what()) +
                                             " (while checking input " +
                                             which + ")");
    }
    if (!ok) {
      verdict.computes = false;
      verdict.input = input;
      verdict.offending = offender;
      auto out = output_of_configuration(p, offender);
      verdict.observed = out ? *out : -1;
      verdict.expected = expected;
      verdict.detail = "a fair execution can settle on output " +
                       (out ? std::to_string(*out) : std::string("undefined")) +
                       " but the predicate value is " +
                       std::to_string(expected);
      return verdict;
    }
  }
  return verdict;
}

StableVerdict check_eventual_property(
    const Protocol& p, const std::vector<Config>& initial_set,
    const std::function<bool(const Config&)>& prop, std::size_t node_budget) {
  StableVerdict verdict;
  for (const Config& start : initial_set) {
    Config offender;
    if (!bottom_sccs_satisfy(p, start, node_budget, prop, &offender)) {
      verdict.computes = false;
      verdict.initial = start;
      verdict.offending = offender;
      verdict.detail =
          "a fair execution eventually stays among configurations violating "
          "the property";
      return verdict;
    }
  }
  return verdict;
}

std::vector<Config> leader_initial_set(const Protocol& p,
                                       const std::vector<int>& leader_states,
                                       int n) {
  // Start states are the image of the input map; other states cannot occur
  // initially.
  std::vector<int> start_states = p.input_map();
  std::sort(start_states.begin(), start_states.end());
  start_states.erase(std::unique(start_states.begin(), start_states.end()),
                     start_states.end());

  std::vector<Config> out;
  for (auto& counts :
       enumerate_count_vectors(static_cast<int>(start_states.size()), n)) {
    Config c;
    c.counts.assign(p.num_states(), 0);
    for (std::size_t i = 0; i < start_states.size(); ++i)
      c.counts[start_states[i]] = counts[i];
    long long leaders = 0;
    for (int q : leader_states) leaders += c.counts[q];
    if (leaders >= 1) out.push_back(std::move(c));
  }
  return out;
}

StableVerdict check_leader(const Protocol& p,
                           const std::vector<int>& leader_states, int n,
                           std::size_t node_budget) {
  if (n < 2) throw std::invalid_argument("population size must be >= 2");
  for (int q : leader_states)
    if (q < 0 || q >= p.num_states())
      throw std::invalid_argument("leader state out of range");
  auto exactly_one_leader = [&](const Config& c) {
    long long leaders = 0;
    for (int q : leader_states) leaders += c.counts[q];
    return leaders == 1;
  };
  StableVerdict verdict = check_eventual_property(
      p, leader_initial_set(p, leader_states, n), exactly_one_leader,
      node_budget);
  if (!verdict.computes) {
    long long leaders = 0;
    for (int q : leader_states) leaders += verdict.offending->counts[q];
    verdict.observed = static_cast<int>(leaders);
    verdict.expected = 1;
    verdict.detail = "a fair execution keeps revisiting a configuration with " +
                     std::to_string(leaders) + " leaders";
  }
  return verdict;
}

SimTrace simulate(const Protocol& p, const Config& c0, std::uint64_t max_steps,
                  std::uint64_t seed, const ReachabilityGraph* certified) {
  const long long population = c0.size();
  if (population < 2)
    throw std::invalid_argument("simulation needs at least two agents");
  std::mt19937_64 rng(seed);
  SimTrace trace;
  trace.final = c0;
  trace.entered_bottom = certified ? 0 : -1;

  auto note_position = [&]() {
    if (certified && trace.entered_bottom == 0 &&
        certified->in_bottom_scc(trace.final)) {
      trace.entered_bottom = 1;
      trace.first_entry_step = trace.steps;
    }
  };
  note_position();

  for (std::uint64_t step = 0; step < max_steps; ++step) {
    // First agent uniform over the population, second over the rest.
    long long pick1 = static_cast<long long>(
        uniform_below(rng, static_cast<std::uint64_t>(population)));
    int q1 = 0;
    while (pick1 >= trace.final.counts[q1]) pick1 -= trace.final.counts[q1++];
    long long pick2 = static_cast<long long>(
        uniform_below(rng, static_cast<std::uint64_t>(population - 1)));
    int q2 = 0;
    for (;;) {
      long long avail = trace.final.counts[q2] - (q2 == q1 ? 1 : 0);
      if (pick2 < avail) break;
      pick2 -= avail;
      ++q2;
    }

    auto rules = p.effective(q1, q2);
    const auto& [a, b] =
        rules[uniform_below(rng, static_cast<std::uint64_t>(rules.size()))];
    --trace.final.counts[q1];
    --trace.final.counts[q2];
    ++trace.final.counts[a];
    ++trace.final.counts[b];
    ++trace.steps;
    note_position();
  }
  return trace;
}

InteractionGraph ring_graph(int n) {
  if (n < 2) throw std::invalid_argument("ring needs at least two vertices");
  InteractionGraph g;
  g.vertices = n;
  if (n == 2) {
    g.edges = {{0, 1}};
  } else {
    for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
  }
  g.vertex_state.assign(n, 0);
  return g;
}

InteractionGraph complete_graph(int n) {
  if (n < 2)
    throw std::invalid_argument("complete graph needs at least two vertices");
  InteractionGraph g;
  g.vertices = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j});
  g.vertex_state.assign(n, 0);
  return g;
}

AbsorptionReport simulate_on_graph(
    const Protocol& p, const InteractionGraph& g, std::uint64_t max_steps,
    std::uint64_t seed, const std::optional<std::vector<int>>& absorbing) {
  if (g.edges.empty())
    throw std::invalid_argument("interaction graph has no edges");
  if (static_cast<int>(g.vertex_state.size()) != g.vertices)
    throw std::invalid_argument("graph is missing its vertex states");
  for (const auto& [u, v] : g.edges)
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices || u == v)
      throw std::invalid_argument("bad edge in interaction graph");

  std::mt19937_64 rng(seed);
  AbsorptionReport report;
  report.final_states = g.vertex_state;

  for (std::uint64_t step = 0; step <= max_steps; ++step) {
    if (absorbing && report.final_states == *absorbing) {
      report.absorbed = true;
      report.steps = step;
      return report;
    }
    if (step == max_steps) break;
    const auto& [u, v] =
        g.edges[uniform_below(rng, static_cast<std::uint64_t>(g.edges.size()))];
    int first = u, second = v;
    if (uniform_below(rng, 2) == 1) std::swap(first, second);
    auto rules = p.effective(report.final_states[first],
                             report.final_states[second]);
    const auto& [a, b] =
        rules[uniform_below(rng, static_cast<std::uint64_t>(rules.size()))];
    report.final_states[first] = a;
    report.final_states[second] = b;
  }
  report.absorbed = false;
  report.steps = max_steps;
  return report;
}

}  // namespace popproto
