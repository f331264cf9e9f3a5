#ifndef POPPROTO_CATALOG_HPP
#define POPPROTO_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "popproto/game.hpp"
#include "popproto/predicate.hpp"
#include "popproto/protocol.hpp"

namespace popproto {

// A built-in protocol, optionally with a payoff matrix that induces it and
// the predicate or leader property it is meant for.
struct NamedArtifact {
  std::string name;
  Protocol protocol;
  std::optional<GameMatrix> matrix;
  std::optional<std::string> predicate_text;
  std::optional<Predicate> predicate;
  std::vector<std::string> leader_states;  // non-empty for election protocols
  std::string description;
  std::string notes;
};

const std::vector<std::string>& catalog_names();

// Throws NotFound for unknown names.
const NamedArtifact& catalog_get(const std::string& name);

}  // namespace popproto

#endif
