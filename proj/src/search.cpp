#include "popproto/search.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <thread>
#include <tuple>

#include "popproto/checker.hpp"
#include "popproto/errors.hpp"
#include "popproto/text_io.hpp"

namespace popproto {

std::vector<ColumnResponse> enumerate_column_responses(int num_states,
                                                       int radius) {
  const int n = num_states;
  std::vector<ColumnResponse> out;
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<int> column(n, -radius);
  for (;;) {
    ColumnResponse resp;
    resp.succ_of.assign(n, 0);
    for (int q = 0; q < n; ++q) {
      if (column[q] >= 0) {
        resp.succ_of[q] = 1u << q;
        continue;
      }
      int best = std::numeric_limits<int>::min();
      for (int z = 0; z < n; ++z)
        if (z != q) best = std::max(best, column[z]);
      for (int z = 0; z < n; ++z)
        if (z != q && column[z] == best) resp.succ_of[q] |= 1u << z;
    }
    if (seen.insert(resp.succ_of).second) {
      resp.sample_column = column;
      out.push_back(std::move(resp));
    }
    int i = 0;
    while (i < n && column[i] == radius) column[i++] = -radius;
    if (i == n) break;
    ++column[i];
  }
  return out;
}

std::vector<Protocol> enumerate_pavlovian(int num_states) {
  if (num_states < 1 || num_states > 3)
    throw BudgetExceeded(0, "enumeration is limited to at most 3 states");
  const int n = num_states;
  auto responses = enumerate_column_responses(n);
  const std::size_t r = responses.size();

  std::vector<std::string> names;
  std::vector<int> identity;
  for (int q = 0; q < n; ++q) {
    names.push_back("s" + std::to_string(q));
    identity.push_back(q);
  }

  std::vector<Protocol> out;
  std::vector<std::size_t> pick(n, 0);  // response per column
  for (;;) {
    std::vector<Rule> rules;
    for (int q1 = 0; q1 < n; ++q1) {
      for (int q2 = 0; q2 < n; ++q2) {
        std::uint32_t first = responses[pick[q2]].succ_of[q1];
        std::uint32_t second = responses[pick[q1]].succ_of[q2];
        for (int a = 0; a < n; ++a) {
          if (!(first & (1u << a))) continue;
          for (int b = 0; b < n; ++b)
            if (second & (1u << b)) rules.push_back(Rule{q1, q2, a, b});
        }
      }
    }
    out.emplace_back(names, names, identity, std::vector<int>(n, 0),
                     std::move(rules));
    int i = 0;
    while (i < n && pick[i] == r - 1) pick[i++] = 0;
    if (i == n) break;
    ++pick[i];
  }
  return out;
}

namespace {

Protocol dress(const Protocol& bare, const std::array<int, 2>& input_map,
               std::uint8_t omega_mask) {
  std::vector<int> outputs(bare.num_states());
  for (int q = 0; q < bare.num_states(); ++q)
    outputs[q] = (omega_mask >> q) & 1;
  return Protocol(bare.state_names(), {"sigma", "zero"},
                  {input_map[0], input_map[1]}, std::move(outputs),
                  bare.rules());
}

// All bottom-SCC configurations for one input, shared across output maps
// (reachability does not depend on the outputs).
std::vector<Config> bottom_configs(const Protocol& p, const InputMultiset& x) {
  ReachabilityGraph g = explore(p, initial_configuration(p, x));
  std::vector<Config> out;
  for (std::size_t v = 0; v < g.nodes.size(); ++v)
    if (g.bottom[g.scc_of[v]]) out.push_back(g.nodes[v]);
  return out;
}

bool uniform_output_matches(const Protocol& p, const std::vector<Config>& cs,
                            int expected) {
  for (const Config& c : cs)
    if (output_of_configuration(p, c) != expected) return false;
  return true;
}

struct SizedInputs {
  int n;
  std::vector<InputMultiset> inputs;
};

}  // namespace

FalsifyReport falsify(const Predicate& target, std::string predicate_text,
                      int n_max, int threads) {
  if (n_max < 3)
    throw std::invalid_argument("n_max must be at least 3");
  FalsifyReport report;
  report.predicate_text = std::move(predicate_text);
  report.n_max = n_max;

  const std::vector<Protocol> protocols = enumerate_pavlovian(3);
  report.protocols = protocols.size();

  // Size 3 goes first: it kills almost every candidate immediately.
  std::vector<SizedInputs> sizes;
  {
    std::vector<int> order;
    order.push_back(3);
    for (int n = 2; n <= n_max; ++n)
      if (n != 3) order.push_back(n);
    for (int n : order) {
      SizedInputs si{n, {}};
      for (auto& counts : enumerate_count_vectors(2, n))
        si.inputs.push_back(InputMultiset{counts});
      sizes.push_back(std::move(si));
    }
  }

  const std::array<std::array<int, 2>, 6> iotas = {
      {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};

  if (threads < 1) threads = 1;
  threads = std::min<int>(threads, static_cast<int>(protocols.size()));
  std::vector<std::vector<FalsifySurvivor>> found(threads);
  std::vector<std::uint64_t> counted(threads, 0);

  auto worker = [&](int tid) {
    for (std::size_t pi = tid; pi < protocols.size();
         pi += static_cast<std::size_t>(threads)) {
      const Protocol& bare = protocols[pi];
      for (const auto& iota : iotas) {
        // expected[s][i] and bottoms[s][i] for size block s, input i.
        std::vector<std::vector<std::vector<Config>>> bottoms(sizes.size());
        std::vector<std::vector<int>> expected(sizes.size());
        Protocol probe = dress(bare, iota, 0);

        for (std::uint8_t omega = 0; omega < 8; ++omega) {
          counted[tid] += 1;
          Protocol candidate = dress(bare, iota, omega);
          bool alive = true;
          for (std::size_t s = 0; s < sizes.size() && alive; ++s) {
            if (bottoms[s].empty()) {
              for (const InputMultiset& x : sizes[s].inputs) {
                bottoms[s].push_back(bottom_configs(probe, x));
                expected[s].push_back(target.eval(x) ? 1 : 0);
              }
            }
            for (std::size_t i = 0; i < sizes[s].inputs.size() && alive; ++i)
              alive = uniform_output_matches(candidate, bottoms[s][i],
                                             expected[s][i]);
          }
          if (alive) {
            FalsifySurvivor sv;
            sv.protocol_index = pi;
            sv.input_map = iota;
            sv.omega_mask = omega;
            sv.rendered = "sigma->" + candidate.state_name(iota[0]) +
                          " zero->" + candidate.state_name(iota[1]) +
                          " outputs " + std::to_string(omega & 1) +
                          std::to_string((omega >> 1) & 1) +
                          std::to_string((omega >> 2) & 1) + " | " +
                          format_protocol(candidate);
            found[tid].push_back(std::move(sv));
          }
        }
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  for (std::uint64_t c : counted) report.candidates += c;
  // Stitch the per-thread results back into protocol-index order.
  std::vector<FalsifySurvivor> all;
  for (auto& part : found)
    for (auto& sv : part) all.push_back(std::move(sv));
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    return std::tie(x.protocol_index, x.input_map, x.omega_mask) <
           std::tie(y.protocol_index, y.input_map, y.omega_mask);
  });
  report.survivors = std::move(all);
  return report;
}

}  // namespace popproto
