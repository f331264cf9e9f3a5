#ifndef POPPROTO_PROTOCOL_HPP
#define POPPROTO_PROTOCOL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace popproto {

// One interaction: an ordered pair of agents in states (a, b) moves to
// (a_next, b_next). States are dense indices into Protocol::state_names().
struct Rule {
  int a = 0;
  int b = 0;
  int a_next = 0;
  int b_next = 0;

  bool is_identity() const { return a == a_next && b == b_next; }
  Rule mirrored() const { return Rule{b, a, b_next, a_next}; }
  auto operator<=>(const Rule&) const = default;
};

// Population snapshot: counts[q] agents currently in state q. Agents are
// anonymous, so two configurations are equal iff their count vectors are.
struct Config {
  std::vector<int> counts;

  long long size() const {
    long long n = 0;
    for (int c : counts) n += c;
    return n;
  }
  bool operator==(const Config&) const = default;
  auto operator<=>(const Config&) const = default;
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : c.counts) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Input: counts[s] occurrences of input symbol s.
struct InputMultiset {
  std::vector<int> counts;

  long long size() const {
    long long n = 0;
    for (int c : counts) n += c;
    return n;
  }
  bool operator==(const InputMultiset&) const = default;
  auto operator<=>(const InputMultiset&) const = default;
};

// A population protocol (states, input alphabet, input map, output map,
// interaction relation). The relation may be nondeterministic and
// non-symmetric. Pairs with no listed rule implicitly keep both agents
// unchanged; effective(q1, q2) resolves that fallback.
//
// Immutable after construction; all queries are const and thread-safe.
class Protocol {
 public:
  Protocol(std::vector<std::string> state_names,
           std::vector<std::string> symbol_names,
           std::vector<int> input_map,   // symbol index -> state index
           std::vector<int> output_map,  // state index -> 0/1
           std::vector<Rule> rules);

  int num_states() const { return static_cast<int>(state_names_.size()); }
  int num_symbols() const { return static_cast<int>(symbol_names_.size()); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& symbol_names() const { return symbol_names_; }
  const std::string& state_name(int q) const { return state_names_[q]; }
  const std::string& symbol_name(int s) const { return symbol_names_[s]; }
  int state_index(std::string_view name) const;   // -1 if unknown
  int symbol_index(std::string_view name) const;  // -1 if unknown
  int input_state(int symbol) const { return input_map_[symbol]; }
  int output_bit(int state) const { return output_map_[state]; }
  const std::vector<int>& input_map() const { return input_map_; }
  const std::vector<int>& output_map() const { return output_map_; }

  // Listed rules, canonicalized: sorted, deduplicated, and with pairs whose
  // listing is exactly the identity dropped (they equal the fallback).
  const std::vector<Rule>& rules() const { return rules_; }

  // Successor state pairs for an ordered left pair, identity fallback
  // included. Never empty.
  std::span<const std::pair<int, int>> effective(int q1, int q2) const;

  // The full relation with the identity fallback materialized.
  std::vector<Rule> effective_relation() const;

  // Every left pair has exactly one effective successor pair.
  bool deterministic() const { return deterministic_; }

  // (q1,q2)->(a,b) effective iff (q2,q1)->(b,a) effective.
  bool symmetric() const { return symmetric_; }

  bool operator==(const Protocol& other) const;

 private:
  std::vector<std::string> state_names_;
  std::vector<std::string> symbol_names_;
  std::vector<int> input_map_;
  std::vector<int> output_map_;
  std::vector<Rule> rules_;
  std::vector<std::vector<std::pair<int, int>>> by_pair_;  // q1 * n + q2
  bool deterministic_ = false;
  bool symmetric_ = false;
};

// Uniform output of a configuration: 0 or 1 when every populated state
// agrees, nullopt when outputs are mixed.
std::optional<int> output_of_configuration(const Protocol& p, const Config& c);

// Applies the input map; requires at least two agents.
Config initial_configuration(const Protocol& p, const InputMultiset& x);

// All configurations reachable in one interaction, deduplicated. A
// configuration equal to `c` appears only if some effective rule produces it.
std::vector<Config> successors(const Protocol& p, const Config& c);

}  // namespace popproto

#endif
