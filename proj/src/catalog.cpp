#include "popproto/catalog.hpp"

#include "popproto/errors.hpp"
#include "popproto/text_io.hpp"

namespace popproto {

namespace {

struct Source {
  const char* name;
  const char* protocol;
  const char* matrix;  // nullptr when no payoff matrix induces the protocol
  const char* predicate;
  const char* leaders;  // comma list of leader states, nullptr otherwise
  const char* description;
  const char* notes;
};

// Identity rules are omitted throughout; unlisted pairs keep both agents.
const Source kSources[] = {
    {"or",
     "states: zero one\n"
     "inputs: zero->zero one->one\n"
     "outputs: zero=0 one=1\n"
     "rule: zero one -> one one\n"
     "rule: one zero -> one one\n",
     "states: zero one\n"
     "1 -1\n"
     "1 1\n",
     "count(one) >= 1", nullptr,
     "one-bit disjunction: a set agent converts everyone it meets", ""},

    {"and",
     "states: zero one\n"
     "inputs: zero->zero one->one\n"
     "outputs: zero=0 one=1\n"
     "rule: zero one -> zero zero\n"
     "rule: one zero -> zero zero\n",
     "states: zero one\n"
     "1 1\n"
     "-1 1\n",
     "count(zero) == 0", nullptr,
     "one-bit conjunction: a cleared agent clears everyone it meets", ""},

    {"xor-weak",
     "states: zero one\n"
     "inputs: zero->zero one->one\n"
     "outputs: zero=0 one=1\n"
     "rule: one one -> zero zero\n",
     "states: zero one\n"
     "1 1\n"
     "1 -1\n",
     "count(one) mod 2 == 1", nullptr,
     "parity by pairwise cancellation of ones",
     "does not stably compute parity: a lone surviving one is never "
     "broadcast, so mixed-output configurations freeze; kept as the "
     "standard counterexample"},

    {"threshold2",
     "states: zero sigma two\n"
     "inputs: zero->zero sigma->sigma\n"
     "outputs: zero=0 sigma=0 two=1\n"
     "rule: zero two -> two two\n"
     "rule: two zero -> two two\n"
     "rule: sigma sigma -> two two\n"
     "rule: sigma two -> two two\n"
     "rule: two sigma -> two two\n",
     "states: zero sigma two\n"
     "0 0 -1\n"
     "0 -1 -1\n"
     "1 1 1\n",
     "count(sigma) >= 2", nullptr,
     "detects two occurrences of sigma: meeting sigmas fuse into a "
     "broadcasting witness state", ""},

    {"leader-pavlovian",
     "states: L1 L2 N\n"
     "inputs: L1->L1 L2->L2 N->N\n"
     "outputs: L1=1 L2=1 N=0\n"
     "rule: L1 L2 -> L1 N\n"
     "rule: L2 L1 -> N L1\n"
     "rule: L1 N -> N L2\n"
     "rule: N L1 -> L2 N\n"
     "rule: L2 N -> N L1\n"
     "rule: N L2 -> L1 N\n"
     "rule: L1 L1 -> L2 L2\n"
     "rule: L2 L2 -> L1 L1\n",
     "states: L1 L2 N\n"
     "-3 0 -3\n"
     "-1 -3 -3\n"
     "-2 -3 0\n",
     nullptr, "L1,L2",
     "symmetric leader election via two leader flavors that only merge "
     "when they differ; needs population size >= 3", ""},

    {"leader-classic",
     "states: L N\n"
     "inputs: L->L N->N\n"
     "outputs: L=1 N=0\n"
     "rule: L L -> L N\n",
     nullptr, nullptr, "L",
     "textbook leader election; non-symmetric because two equal leaders "
     "must break the tie", ""},

    {"majority",
     "states: N Y sigma tau\n"
     "inputs: sigma->sigma tau->tau\n"
     "outputs: N=0 Y=1 sigma=1 tau=0\n"
     "rule: N Y -> Y Y\n"
     "rule: Y N -> Y Y\n"
     "rule: N sigma -> Y sigma\n"
     "rule: sigma N -> sigma Y\n"
     "rule: Y tau -> N tau\n"
     "rule: tau Y -> tau N\n"
     "rule: sigma tau -> N Y\n"
     "rule: tau sigma -> Y N\n",
     "states: N Y sigma tau\n"
     "1 -1 -1 1\n"
     "0 1 1 -1\n"
     "0 0 0 -1\n"
     "0 0 -1 0\n",
     "count(sigma) >= count(tau)", nullptr,
     "majority with answer tokens: opposite inputs annihilate into a "
     "yes/no pair, survivors convert the answers; ties resolve to yes", ""},

    {"pavlov-pd",
     "states: C D\n"
     "inputs: C->C D->D\n"
     "outputs: C=1 D=0\n"
     "rule: C D -> D D\n"
     "rule: D C -> D D\n"
     "rule: D D -> C C\n",
     "states: C D\n"
     "1 -2\n"
     "2 -1\n",
     nullptr, nullptr,
     "win-stay lose-shift prisoner's dilemma; all-cooperate is the unique "
     "absorbing configuration on any graph without isolated vertices", ""},

    {"cycle3-counterexample",
     "states: q0 q1 q2\n"
     "inputs: q0->q0 q1->q1 q2->q2\n"
     "outputs: q0=0 q1=0 q2=0\n"
     "rule: q0 q0 -> q1 q1\n"
     "rule: q1 q0 -> q2 q0\n"
     "rule: q0 q1 -> q0 q2\n"
     "rule: q2 q0 -> q0 q0\n"
     "rule: q0 q2 -> q0 q0\n",
     nullptr, nullptr, nullptr,
     "symmetric deterministic three-cycle against q0; the column of q0 "
     "would need each response to strictly beat the next around the cycle, "
     "so no payoff matrix exists", ""},

    {"threshold3-classic",
     "states: c0 c1 c2 c3\n"
     "inputs: sigma->c1 zero->c0\n"
     "outputs: c0=0 c1=0 c2=0 c3=1\n"
     "rule: c0 c1 -> c1 c0\n"
     "rule: c0 c2 -> c2 c0\n"
     "rule: c0 c3 -> c3 c0\n"
     "rule: c1 c1 -> c2 c0\n"
     "rule: c1 c2 -> c3 c0\n"
     "rule: c1 c3 -> c3 c0\n"
     "rule: c2 c1 -> c3 c0\n"
     "rule: c2 c2 -> c3 c0\n"
     "rule: c2 c3 -> c3 c0\n"
     "rule: c3 c0 -> c3 c3\n"
     "rule: c3 c1 -> c3 c3\n"
     "rule: c3 c2 -> c3 c3\n",
     nullptr, "count(sigma) >= 3", nullptr,
     "counting to three by summing tokens into the first agent, capped at "
     "three; a full counter broadcasts; non-symmetric reference input for "
     "symmetrization", ""},
};

std::vector<NamedArtifact> build_catalog() {
  std::vector<NamedArtifact> out;
  for (const Source& s : kSources) {
    NamedArtifact a{.name = s.name,
                    .protocol = parse_protocol(s.protocol),
                    .matrix = std::nullopt,
                    .predicate_text = std::nullopt,
                    .predicate = std::nullopt,
                    .leader_states = {},
                    .description = s.description,
                    .notes = s.notes};
    if (s.matrix) a.matrix = parse_matrix(s.matrix);
    if (s.predicate) {
      a.predicate_text = s.predicate;
      a.predicate = parse_predicate(s.predicate, a.protocol.symbol_names());
    }
    if (s.leaders) {
      std::string list = s.leaders;
      std::size_t pos = 0;
      while (pos <= list.size()) {
        std::size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        a.leader_states.push_back(list.substr(pos, comma - pos));
        pos = comma + 1;
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

const std::vector<NamedArtifact>& catalog() {
  static const std::vector<NamedArtifact> artifacts = build_catalog();
  return artifacts;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const NamedArtifact& a : catalog()) out.push_back(a.name);
    return out;
  }();
  return names;
}

const NamedArtifact& catalog_get(const std::string& name) {
  for (const NamedArtifact& a : catalog())
    if (a.name == name) return a;
  throw NotFound("no catalog entry named '" + name + "'");
}

}  // namespace popproto
