#include "popproto/transform.hpp"

#include <set>
#include <string>
#include <vector>

namespace popproto {

Protocol symmetrize(const Protocol& p) {
  const int n = p.num_states();
  const int prime = n;  // primed copy of q lives at q + prime

  std::vector<std::string> names = p.state_names();
  for (int q = 0; q < n; ++q) {
    std::string candidate = p.state_name(q) + "_p";
    while (std::find(names.begin(), names.end(), candidate) != names.end())
      candidate += "_p";
    names.push_back(candidate);
  }

  std::vector<int> outputs(2 * n);
  for (int q = 0; q < n; ++q)
    outputs[q] = outputs[q + prime] = p.output_bit(q);

  std::set<Rule> rules;

  // Same-state interactions qq -> ab simulate through a mixed
  // primed/unprimed pair; the parity flips qq <-> q'q' plus the toggles
  // against any third state make that pair reachable under fairness.
  for (int q = 0; q < n; ++q) {
    for (const auto& [a, b] : p.effective(q, q)) {
      rules.insert(Rule{q, q + prime, a, b});
      rules.insert(Rule{q + prime, q, b, a});
      rules.insert(Rule{q, q, q + prime, q + prime});
      rules.insert(Rule{q + prime, q + prime, q, q});
    }
    for (int g = 0; g < 2 * n; ++g) {
      if (g == q || g == q + prime) continue;
      rules.insert(Rule{q, g, q + prime, g});
      rules.insert(Rule{q + prime, g, q, g});
      rules.insert(Rule{g, q, g, q + prime});
      rules.insert(Rule{g, q + prime, g, q});
    }
  }

  // Distinct-state interactions: the rule for qr and the rule for rq are
  // carried by the pairs where exactly one side is primed.
  for (int q = 0; q < n; ++q) {
    for (int r = 0; r < n; ++r) {
      if (q == r) continue;
      for (const auto& [a, b] : p.effective(q, r)) {
        rules.insert(Rule{q, r + prime, a, b});
        rules.insert(Rule{r + prime, q, b, a});
      }
      for (const auto& [d, e] : p.effective(r, q)) {
        rules.insert(Rule{r, q + prime, d, e});
        rules.insert(Rule{q + prime, r, e, d});
      }
    }
  }

  return Protocol(std::move(names), p.symbol_names(), p.input_map(),
                  std::move(outputs),
                  std::vector<Rule>(rules.begin(), rules.end()));
}

}  // namespace popproto
