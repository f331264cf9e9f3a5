#ifndef POPPROTO_TRANSFORM_HPP
#define POPPROTO_TRANSFORM_HPP

#include "popproto/protocol.hpp"

namespace popproto {

// Compiles any protocol into a symmetric one over doubled states (a primed
// copy q' per original q, named with suffix "_p") that simulates it for
// populations of size >= 3. Outputs carry over to the primed copies and the
// input map is unchanged. The result is generally nondeterministic: the
// simulation rules fire on mixed primed/unprimed pairs, and toggle rules
// let any single agent flip its primed flag next to a third agent.
Protocol symmetrize(const Protocol& p);

}  // namespace popproto

#endif
