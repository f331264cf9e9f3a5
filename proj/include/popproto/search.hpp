#ifndef POPPROTO_SEARCH_HPP
#define POPPROTO_SEARCH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "popproto/predicate.hpp"
#include "popproto/protocol.hpp"

namespace popproto {

// What one matrix column does to each state: succ_of[q] is the successor
// set (bitmask) of an agent in q facing the column's state. sample_column
// is one integer column realizing the response.
struct ColumnResponse {
  std::vector<std::uint32_t> succ_of;
  std::vector<int> sample_column;
};

// Every response realizable by an integer column in [-radius, radius]^n,
// deduplicated. Radius 3 already realizes every sign pattern and every
// weak ordering of up to three entries, so for n <= 3 the result covers
// all rational columns.
std::vector<ColumnResponse> enumerate_column_responses(int num_states,
                                                       int radius = 3);

// Every protocol over num_states states induced by some payoff matrix, up
// to state renaming: one column response per column, assembled into the
// (symmetric) rule relation. States are named s0, s1, ...; the alphabet is
// the state set with the identity input map and all-zero outputs, to be
// re-dressed by callers. Distinct emitted protocols have distinct
// effective relations. Throws BudgetExceeded for num_states > 3.
std::vector<Protocol> enumerate_pavlovian(int num_states);

struct FalsifySurvivor {
  std::size_t protocol_index = 0;
  std::array<int, 2> input_map{};  // sigma -> state, zero -> state
  std::uint8_t omega_mask = 0;     // bit q = output of state q
  std::string rendered;
};

struct FalsifyReport {
  std::string predicate_text;
  int n_max = 0;
  std::uint64_t protocols = 0;
  std::uint64_t candidates = 0;  // (protocol, input map, output map) triples
  std::vector<FalsifySurvivor> survivors;
};

// Exhaustive falsification harness over all 3-state protocols induced by
// games: dresses each with every injective assignment of {sigma, zero}
// into the states and every output map, and keeps the candidates that
// stably compute `target` for every population size in 2..n_max.
// Candidates are screened on n = 3 first. `target` must be over the
// two-symbol alphabet (sigma, zero), in that order. Deterministic
// regardless of `threads`.
FalsifyReport falsify(const Predicate& target, std::string predicate_text,
                      int n_max, int threads = 1);

}  // namespace popproto

#endif
