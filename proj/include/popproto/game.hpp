#ifndef POPPROTO_GAME_HPP
#define POPPROTO_GAME_HPP

#include <optional>
#include <string>
#include <vector>

#include "popproto/protocol.hpp"
#include "popproto/rational.hpp"

namespace popproto {

// Payoff matrix of a symmetric two-player game, rows = the player's state,
// columns = the opponent's. Entries are stored with the win/lose threshold
// already normalized to zero.
struct GameMatrix {
  std::vector<std::string> states;
  std::vector<Rat> entries;  // row-major, dim x dim

  GameMatrix() = default;
  GameMatrix(std::vector<std::string> states, std::vector<Rat> entries);

  int dim() const { return static_cast<int>(states.size()); }
  const Rat& at(int row, int col) const { return entries[row * dim() + col]; }
  Rat& at(int row, int col) { return entries[row * dim() + col]; }
  bool operator==(const GameMatrix&) const = default;
};

// Input/output dressing attached to a matrix when turning it into a
// protocol: alphabet, input map into the matrix states, and output bits.
struct IoDressing {
  std::vector<std::string> symbols;
  std::vector<int> input_map;   // symbol -> state
  std::vector<int> output_map;  // state -> 0/1
};

// Alphabet = states with the identity input map, all outputs 0.
IoDressing identity_dressing(const GameMatrix& m);

// States maximizing the row payoff against `opponent`, optionally among
// rows different from `excluded`. Sorted ascending; ties all returned.
std::vector<int> best_response(const GameMatrix& m, int opponent,
                               std::optional<int> excluded = std::nullopt);

// Win-stay / lose-shift dynamics of the game as a protocol: facing q2, an
// agent in q1 keeps its state when its payoff is >= 0 and otherwise moves
// to a best response among the other states. Argmax ties make the result
// nondeterministic; the output is symmetric by construction.
Protocol derive_protocol(const GameMatrix& m, const IoDressing& io);

// One linear condition on the entries of a single matrix column, tagged
// with the rule that forced it.
struct Constraint {
  enum class Kind {
    NonNegative,     // M[a,col] >= 0
    AtMostMinusOne,  // M[a,col] <= -1
    DiffGeOne,       // M[a,col] - M[b,col] >= 1
    Equal,           // M[a,col] = M[b,col]
  };

  Kind kind = Kind::NonNegative;
  int column = 0;
  int a = 0;
  int b = 0;  // only for DiffGeOne / Equal
  Rule provenance;

  std::string render(const std::vector<std::string>& state_names) const;
};

// The feasibility conditions a payoff matrix must satisfy to induce the
// protocol's effective relation. Constraints never couple two columns.
// Strictness is encoded with unit slack, which is equivalent over the
// rationals because the conditions are invariant under positive scaling.
struct ConstraintSystem {
  std::vector<Constraint> constraints;
};

ConstraintSystem build_constraints(const Protocol& p);

struct RecognitionVerdict {
  enum class Kind { Pavlovian, NotSymmetric, Infeasible };

  Kind kind = Kind::Pavlovian;
  std::optional<GameMatrix> witness;     // Pavlovian
  std::optional<Rule> present_rule;      // NotSymmetric: effective rule...
  std::optional<Rule> missing_rule;      // ...whose mirror is not effective
  std::vector<Constraint> certificate;   // Infeasible: contradictory cycle
  std::string reason;                    // one-line human summary
};

// Decides whether some payoff matrix induces the protocol, i.e. whether
// derive_protocol(m) has exactly p's effective relation for some m. On
// success the witness is integer-valued and verified by the round trip.
RecognitionVerdict recognize(const Protocol& p);

// The +-1 witness matrix of a symmetric deterministic 2-state protocol:
// entry (q1,q2) is +1 when the rule keeps q1 facing q2, -1 otherwise.
// Throws std::invalid_argument when the protocol is not of that form.
GameMatrix two_state_matrix(const Protocol& p);

}  // namespace popproto

#endif
