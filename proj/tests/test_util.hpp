#ifndef POPPROTO_TEST_UTIL_HPP
#define POPPROTO_TEST_UTIL_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "popproto/game.hpp"
#include "popproto/protocol.hpp"

namespace test_util {

inline const char* kPavlovText =
    "states: C D\n"
    "inputs: C->C D->D\n"
    "outputs: C=1 D=0\n"
    "rule: C D -> D D\n"
    "rule: D C -> D D\n"
    "rule: D D -> C C\n";

inline const char* kOrText =
    "states: zero one\n"
    "inputs: zero->zero one->one\n"
    "outputs: zero=0 one=1\n"
    "rule: zero one -> one one\n"
    "rule: one zero -> one one\n";

// The 16 symmetric deterministic 2-state protocols: one per choice of the
// four next-states (a_pp, a_pm, a_mp, a_mm), encoded as rules
//   ++ -> a_pp a_pp, +- -> a_pm a_mp, -+ -> a_mp a_pm, -- -> a_mm a_mm.
inline std::vector<popproto::Protocol> all_two_state_protocols() {
  using popproto::Protocol;
  using popproto::Rule;
  std::vector<Protocol> out;
  for (int mask = 0; mask < 16; ++mask) {
    int a_pp = mask & 1, a_pm = (mask >> 1) & 1;
    int a_mp = (mask >> 2) & 1, a_mm = (mask >> 3) & 1;
    std::vector<Rule> rules = {
        Rule{0, 0, a_pp, a_pp},
        Rule{0, 1, a_pm, a_mp},
        Rule{1, 0, a_mp, a_pm},
        Rule{1, 1, a_mm, a_mm},
    };
    out.emplace_back(std::vector<std::string>{"plus", "minus"},
                     std::vector<std::string>{"plus", "minus"},
                     std::vector<int>{0, 1}, std::vector<int>{1, 0}, rules);
  }
  return out;
}

inline popproto::Protocol random_protocol(std::mt19937_64& rng,
                                          bool force_symmetric = false) {
  using popproto::Protocol;
  using popproto::Rule;
  int n = 2 + static_cast<int>(rng() % 3);
  std::vector<std::string> names;
  for (int q = 0; q < n; ++q) names.push_back("q" + std::to_string(q));
  std::vector<int> iota, omega;
  for (int q = 0; q < n; ++q) {
    iota.push_back(q);
    omega.push_back(static_cast<int>(rng() % 2));
  }
  std::set<Rule> rules;
  int count = 1 + static_cast<int>(rng() % (2 * n));
  for (int i = 0; i < count; ++i) {
    Rule r{static_cast<int>(rng() % n), static_cast<int>(rng() % n),
           static_cast<int>(rng() % n), static_cast<int>(rng() % n)};
    rules.insert(r);
    if (force_symmetric) rules.insert(r.mirrored());
  }
  return Protocol(names, names, iota, omega,
                  std::vector<Rule>(rules.begin(), rules.end()));
}

inline popproto::GameMatrix random_matrix(std::mt19937_64& rng, int min_dim = 2,
                                          int max_dim = 4, int radius = 5) {
  int n = min_dim + static_cast<int>(rng() % (max_dim - min_dim + 1));
  std::vector<std::string> names;
  for (int q = 0; q < n; ++q) names.push_back("q" + std::to_string(q));
  std::vector<popproto::Rat> entries;
  for (int i = 0; i < n * n; ++i)
    entries.emplace_back(static_cast<long long>(rng() % (2 * radius + 1)) -
                         radius);
  return popproto::GameMatrix(names, entries);
}

inline std::set<popproto::Rule> relation_set(const popproto::Protocol& p) {
  auto rel = p.effective_relation();
  return {rel.begin(), rel.end()};
}

}  // namespace test_util

#endif
