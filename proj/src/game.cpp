#include "popproto/game.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>

namespace popproto {

GameMatrix::GameMatrix(std::vector<std::string> states_in,
                       std::vector<Rat> entries_in)
    : states(std::move(states_in)), entries(std::move(entries_in)) {
  if (entries.size() != states.size() * states.size())
    throw std::invalid_argument("matrix must be square over its state list");
  std::set<std::string> seen(states.begin(), states.end());
  if (seen.size() != states.size())
    throw std::invalid_argument("duplicate state name in matrix");
}

IoDressing identity_dressing(const GameMatrix& m) {
  IoDressing io;
  io.symbols = m.states;
  io.input_map.resize(m.dim());
  for (int i = 0; i < m.dim(); ++i) io.input_map[i] = i;
  io.output_map.assign(m.dim(), 0);
  return io;
}

std::vector<int> best_response(const GameMatrix& m, int opponent,
                               std::optional<int> excluded) {
  if (opponent < 0 || opponent >= m.dim())
    throw std::invalid_argument("opponent state out of range");
  std::vector<int> out;
  bool have_best = false;
  Rat best;
  for (int x = 0; x < m.dim(); ++x) {
    if (excluded && x == *excluded) continue;
    const Rat& v = m.at(x, opponent);
    if (!have_best || v > best) {
      best = v;
      have_best = true;
      out.clear();
    }
    if (v == best) out.push_back(x);
  }
  return out;
}

Protocol derive_protocol(const GameMatrix& m, const IoDressing& io) {
  const int n = m.dim();
  if (static_cast<int>(io.output_map.size()) != n)
    throw std::invalid_argument("dressing output map must cover the states");

  // Successor choices of an agent in q facing c, per the win-stay /
  // lose-shift reading of the matrix.
  auto choices = [&](int q, int c) -> std::vector<int> {
    if (m.at(q, c) >= 0) return {q};
    return best_response(m, c, q);
  };

  std::vector<Rule> rules;
  for (int q1 = 0; q1 < n; ++q1) {
    for (int q2 = 0; q2 < n; ++q2) {
      for (int a : choices(q1, q2))
        for (int b : choices(q2, q1)) rules.push_back(Rule{q1, q2, a, b});
    }
  }
  return Protocol(m.states, io.symbols, io.input_map, io.output_map,
                  std::move(rules));
}

std::string Constraint::render(
    const std::vector<std::string>& state_names) const {
  auto entry = [&](int row) {
    return "M[" + state_names[row] + "," + state_names[column] + "]";
  };
  std::string cond;
  switch (kind) {
    case Kind::NonNegative:
      cond = entry(a) + " >= 0";
      break;
    case Kind::AtMostMinusOne:
      cond = entry(a) + " < 0";
      break;
    case Kind::DiffGeOne:
      cond = entry(a) + " > " + entry(b);
      break;
    case Kind::Equal:
      cond = entry(a) + " = " + entry(b);
      break;
  }
  std::string rule_text = state_names[provenance.a] + " " +
                          state_names[provenance.b] + " -> " +
                          state_names[provenance.a_next] + " " +
                          state_names[provenance.b_next];
  return cond + "   (from rule " + rule_text + ")";
}

ConstraintSystem build_constraints(const Protocol& p) {
  const int n = p.num_states();
  ConstraintSystem sys;
  for (int col = 0; col < n; ++col) {
    for (int q = 0; q < n; ++q) {
      auto listed = p.effective(q, col);
      std::vector<int> succ;
      for (const auto& [a, b] : listed) succ.push_back(a);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());

      bool stays = std::binary_search(succ.begin(), succ.end(), q);
      // Provenance: the first listed rule exhibiting the given successor.
      auto rule_with = [&](int target) {
        for (const auto& [a, b] : listed)
          if (a == target) return Rule{q, col, a, b};
        return Rule{q, col, q, col};
      };

      if (stays) {
        sys.constraints.push_back(Constraint{Constraint::Kind::NonNegative,
                                             col, q, 0, rule_with(q)});
        if (succ.size() == 1) continue;
        // Staying and switching in the same situation cannot both be
        // payoff-induced; emitting both conditions makes the conflict a
        // two-constraint cycle for the solver to report.
      }
      std::vector<int> switches;
      for (int s : succ)
        if (s != q) switches.push_back(s);
      sys.constraints.push_back(Constraint{Constraint::Kind::AtMostMinusOne,
                                           col, q, 0,
                                           rule_with(switches.front())});
      for (std::size_t i = 1; i < switches.size(); ++i)
        sys.constraints.push_back(Constraint{Constraint::Kind::Equal, col,
                                             switches[0], switches[i],
                                             rule_with(switches[i])});
      for (int s : switches) {
        for (int z = 0; z < n; ++z) {
          if (z == q || std::binary_search(succ.begin(), succ.end(), z))
            continue;
          sys.constraints.push_back(Constraint{Constraint::Kind::DiffGeOne,
                                               col, s, z, rule_with(s)});
        }
      }
    }
  }
  return sys;
}

namespace {

// Difference-constraint feasibility via Bellman-Ford. Variables are the
// entries of one column plus a zero anchor; each constraint becomes an
// edge u -> v with weight w meaning x_v <= x_u + w. A negative cycle is
// exactly a contradictory chain of constraints.
struct ColumnSolver {
  int vars;  // column entries; the anchor is node `vars`
  struct Edge {
    int from, to;
    long long weight;
    int constraint;  // index into the originating constraint list, -1 = none
  };
  std::vector<Edge> edges;

  void add(const Constraint& c, int index) {
    switch (c.kind) {
      case Constraint::Kind::NonNegative:  // x_a >= 0: anchor - x_a <= 0
        edges.push_back({c.a, vars, 0, index});
        break;
      case Constraint::Kind::AtMostMinusOne:  // x_a - anchor <= -1
        edges.push_back({vars, c.a, -1, index});
        break;
      case Constraint::Kind::DiffGeOne:  // x_b - x_a <= -1
        edges.push_back({c.a, c.b, -1, index});
        break;
      case Constraint::Kind::Equal:
        edges.push_back({c.a, c.b, 0, index});
        edges.push_back({c.b, c.a, 0, index});
        break;
    }
  }

  // On success fills `solution` (anchored to zero) and returns true; on a
  // negative cycle returns false and fills `cycle` with the constraint
  // indices around it, deduplicated in traversal order.
  bool solve(std::vector<long long>& solution, std::vector<int>& cycle) {
    const int n = vars + 1;
    std::vector<long long> dist(n, 0);  // implicit super-source at 0
    std::vector<int> pred_edge(n, -1);
    int last_relaxed = -1;
    for (int round = 0; round < n; ++round) {
      last_relaxed = -1;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const Edge& ed = edges[e];
        if (dist[ed.from] + ed.weight < dist[ed.to]) {
          dist[ed.to] = dist[ed.from] + ed.weight;
          pred_edge[ed.to] = static_cast<int>(e);
          last_relaxed = ed.to;
        }
      }
      if (last_relaxed == -1) break;
    }
    if (last_relaxed == -1) {
      solution.resize(vars);
      for (int i = 0; i < vars; ++i) solution[i] = dist[i] - dist[vars];
      return true;
    }
    // Walk predecessors n times to land inside the cycle, then collect it.
    int v = last_relaxed;
    for (int i = 0; i < n; ++i) v = edges[pred_edge[v]].from;
    cycle.clear();
    int u = v;
    do {
      const Edge& ed = edges[pred_edge[u]];
      if (ed.constraint >= 0 &&
          (cycle.empty() || cycle.back() != ed.constraint))
        cycle.push_back(ed.constraint);
      u = ed.from;
    } while (u != v);
    std::reverse(cycle.begin(), cycle.end());
    return false;
  }
};

}  // namespace

RecognitionVerdict recognize(const Protocol& p) {
  const int n = p.num_states();
  RecognitionVerdict verdict;

  // A payoff matrix always induces a symmetric relation, so that check
  // comes first and yields the sharper verdict.
  for (int q1 = 0; q1 < n; ++q1) {
    for (int q2 = 0; q2 < n; ++q2) {
      auto fwd = p.effective(q1, q2);
      auto rev = p.effective(q2, q1);
      for (const auto& [a, b] : fwd) {
        bool mirrored = false;
        for (const auto& [c, d] : rev)
          if (c == b && d == a) mirrored = true;
        if (!mirrored) {
          verdict.kind = RecognitionVerdict::Kind::NotSymmetric;
          verdict.present_rule = Rule{q1, q2, a, b};
          verdict.missing_rule = Rule{q2, q1, b, a};
          verdict.reason =
              "rule " + p.state_name(q1) + " " + p.state_name(q2) + " -> " +
              p.state_name(a) + " " + p.state_name(b) +
              " has no mirrored counterpart";
          return verdict;
        }
      }
    }
  }

  // The matrix induces all successor combinations of the two agents'
  // individual choices, so a successor set that is not such a product has
  // no matrix regardless of payoffs.
  for (int q1 = 0; q1 < n; ++q1) {
    for (int q2 = 0; q2 < n; ++q2) {
      auto listed = p.effective(q1, q2);
      std::set<int> first, second;
      for (const auto& [a, b] : listed) {
        first.insert(a);
        second.insert(b);
      }
      if (first.size() * second.size() != listed.size()) {
        verdict.kind = RecognitionVerdict::Kind::Infeasible;
        verdict.reason = "successors of (" + p.state_name(q1) + ", " +
                         p.state_name(q2) +
                         ") are not all combinations of the agents' choices";
        return verdict;
      }
    }
  }

  ConstraintSystem sys = build_constraints(p);
  GameMatrix witness(p.state_names(),
                     std::vector<Rat>(static_cast<std::size_t>(n) * n, Rat(0)));
  for (int col = 0; col < n; ++col) {
    ColumnSolver solver;
    solver.vars = n;
    for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
      if (sys.constraints[i].column != col) continue;
      solver.add(sys.constraints[i], static_cast<int>(i));
    }
    std::vector<long long> solution;
    std::vector<int> cycle;
    if (!solver.solve(solution, cycle)) {
      verdict.kind = RecognitionVerdict::Kind::Infeasible;
      for (int idx : cycle) verdict.certificate.push_back(sys.constraints[idx]);
      verdict.reason = "no payoff assignment for column " + p.state_name(col);
      return verdict;
    }
    for (int q = 0; q < n; ++q) witness.at(q, col) = Rat(solution[q]);
  }

  // The witness is only valid if it reproduces the protocol exactly.
  Protocol rebuilt = derive_protocol(
      witness, IoDressing{p.symbol_names(), p.input_map(), p.output_map()});
  if (rebuilt.effective_relation() != p.effective_relation())
    throw std::logic_error("recognition witness failed the round trip");

  verdict.kind = RecognitionVerdict::Kind::Pavlovian;
  verdict.witness = std::move(witness);
  return verdict;
}

GameMatrix two_state_matrix(const Protocol& p) {
  if (p.num_states() != 2 || !p.deterministic() || !p.symmetric())
    throw std::invalid_argument(
        "two-state witness requires a symmetric deterministic 2-state "
        "protocol");
  std::vector<Rat> entries(4);
  for (int q1 = 0; q1 < 2; ++q1) {
    for (int q2 = 0; q2 < 2; ++q2) {
      auto succ = p.effective(q1, q2);
      entries[q1 * 2 + q2] = succ[0].first == q1 ? Rat(1) : Rat(-1);
    }
  }
  return GameMatrix(p.state_names(), std::move(entries));
}

}  // namespace popproto
