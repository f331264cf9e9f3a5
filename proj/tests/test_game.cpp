#include <doctest.h>

#include <random>
#include <set>

#include "popproto/game.hpp"
#include "popproto/search.hpp"
#include "popproto/text_io.hpp"

#include "test_util.hpp"

using namespace popproto;
using test_util::relation_set;

namespace {

GameMatrix mat(std::vector<std::string> states, std::vector<long long> ints) {
  std::vector<Rat> entries(ints.begin(), ints.end());
  return GameMatrix(std::move(states), std::move(entries));
}

std::set<Rule> rules_of(std::initializer_list<Rule> rs) { return rs; }

// Independent feasibility oracle for certificates: a set of constraints is
// contradictory iff its difference graph (with a zero anchor) has a
// negative cycle. Floyd-Warshall keeps this free of the solver under test.
bool certificate_is_contradictory(const std::vector<Constraint>& cs, int n) {
  const int anchor = n;
  std::vector<std::vector<long long>> d(n + 1,
                                        std::vector<long long>(n + 1, 1 << 20));
  for (int i = 0; i <= n; ++i) d[i][i] = 0;
  auto edge = [&](int u, int v, long long w) {
    d[u][v] = std::min(d[u][v], w);
  };
  for (const Constraint& c : cs) {
    switch (c.kind) {
      case Constraint::Kind::NonNegative:
        edge(c.a, anchor, 0);
        break;
      case Constraint::Kind::AtMostMinusOne:
        edge(anchor, c.a, -1);
        break;
      case Constraint::Kind::DiffGeOne:
        edge(c.a, c.b, -1);
        break;
      case Constraint::Kind::Equal:
        edge(c.a, c.b, 0);
        edge(c.b, c.a, 0);
        break;
    }
  }
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (int i = 0; i <= n; ++i)
    if (d[i][i] < 0) return true;
  return false;
}

}  // namespace

TEST_CASE("best responses, with and without exclusion") {
  // Prisoner's dilemma with T > R > P > S, threshold at zero.
  GameMatrix pd = mat({"C", "D"}, {1, -2, 2, -1});
  CHECK(best_response(pd, 0) == std::vector<int>{1});
  CHECK(best_response(pd, 1) == std::vector<int>{1});

  GameMatrix th2 = mat({"zero", "sigma", "two"}, {0, 0, -1, 0, -1, -1, 1, 1, 1});
  CHECK(best_response(th2, 1, 1) == std::vector<int>{2});

  GameMatrix flat = mat({"a", "b", "c"}, {0, 5, 0, 0, 7, 0, 0, 9, 0});
  CHECK(best_response(flat, 0) == std::vector<int>{0, 1, 2});
  CHECK(best_response(flat, 2, 1) == std::vector<int>{0, 2});
}

TEST_CASE("deriving the threshold-2 protocol") {
  GameMatrix m = mat({"zero", "sigma", "two"}, {0, 0, -1, 0, -1, -1, 1, 1, 1});
  Protocol p = derive_protocol(m, identity_dressing(m));
  // States: zero=0, sigma=1, two=2.
  CHECK(relation_set(p) == rules_of({
                               {0, 0, 0, 0},
                               {0, 1, 0, 1},
                               {1, 0, 1, 0},
                               {0, 2, 2, 2},
                               {2, 0, 2, 2},
                               {1, 1, 2, 2},
                               {1, 2, 2, 2},
                               {2, 1, 2, 2},
                               {2, 2, 2, 2},
                           }));
}

TEST_CASE("deriving the two-flavor leader election protocol") {
  GameMatrix m = mat({"L1", "L2", "N"}, {-3, 0, -3, -1, -3, -3, -2, -3, 0});
  Protocol p = derive_protocol(m, identity_dressing(m));
  // States: L1=0, L2=1, N=2.
  CHECK(relation_set(p) == rules_of({
                               {0, 1, 0, 2},  // L1 L2 -> L1 N
                               {1, 0, 2, 0},  // L2 L1 -> N  L1
                               {0, 2, 2, 1},  // L1 N  -> N  L2
                               {2, 0, 1, 2},  // N  L1 -> L2 N
                               {1, 2, 2, 0},  // L2 N  -> N  L1
                               {2, 1, 0, 2},  // N  L2 -> L1 N
                               {0, 0, 1, 1},  // L1 L1 -> L2 L2
                               {1, 1, 0, 0},  // L2 L2 -> L1 L1
                               {2, 2, 2, 2},  // N  N  -> N  N
                           }));
}

TEST_CASE("deriving the majority protocol") {
  GameMatrix m = mat({"N", "Y", "sigma", "tau"},
                     {1, -1, -1, 1, 0, 1, 1, -1, 0, 0, 0, -1, 0, 0, -1, 0});
  Protocol p = derive_protocol(m, identity_dressing(m));
  // States: N=0, Y=1, sigma=2, tau=3.
  std::set<Rule> expected = {
      {0, 1, 1, 1},  // N Y -> Y Y
      {1, 0, 1, 1},  // Y N -> Y Y
      {0, 2, 1, 2},  // N sigma -> Y sigma
      {2, 0, 2, 1},  // sigma N -> sigma Y
      {1, 3, 0, 3},  // Y tau -> N tau
      {3, 1, 3, 0},  // tau Y -> tau N
      {2, 3, 0, 1},  // sigma tau -> N Y
      {3, 2, 1, 0},  // tau sigma -> Y N
  };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      bool listed = false;
      for (const Rule& r : expected)
        if (r.a == a && r.b == b) listed = true;
      if (!listed) expected.insert(Rule{a, b, a, b});
    }
  CHECK(relation_set(p) == expected);
}

TEST_CASE("an all-nonnegative matrix derives the identity protocol") {
  GameMatrix m = mat({"a", "b"}, {0, 3, 7, 0});
  Protocol p = derive_protocol(m, identity_dressing(m));
  CHECK(p.rules().empty());
  CHECK(relation_set(p) ==
        rules_of({{0, 0, 0, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {1, 1, 1, 1}}));
}

TEST_CASE("argmax ties derive a nondeterministic relation") {
  GameMatrix m = mat({"a", "b", "c"}, {-1, 0, 0, 1, 0, 0, 1, 0, 0});
  Protocol p = derive_protocol(m, identity_dressing(m));
  // Facing column a, state a switches; b and c tie at payoff 1.
  std::set<std::pair<int, int>> succ;
  for (auto [x, y] : p.effective(0, 0)) succ.insert({x, y});
  CHECK(succ == std::set<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  CHECK_FALSE(p.deterministic());
  CHECK(p.symmetric());
}

TEST_CASE("witness matrices for two-state protocols") {
  Protocol pavlov = parse_protocol(test_util::kPavlovText);
  CHECK(two_state_matrix(pavlov) == mat({"C", "D"}, {1, -1, 1, -1}));

  Protocol orp = parse_protocol(test_util::kOrText);
  CHECK(two_state_matrix(orp) == mat({"zero", "one"}, {1, -1, 1, 1}));

  Protocol ident = parse_protocol(
      "states: a b\ninputs: a->a b->b\noutputs: a=0 b=1\n");
  CHECK(two_state_matrix(ident) == mat({"a", "b"}, {1, 1, 1, 1}));

  SUBCASE("witnesses derive back to their protocols") {
    for (const Protocol& p : test_util::all_two_state_protocols()) {
      GameMatrix w = two_state_matrix(p);
      Protocol again = derive_protocol(
          w, IoDressing{p.symbol_names(), p.input_map(), p.output_map()});
      CHECK(relation_set(again) == relation_set(p));
    }
  }

  SUBCASE("preconditions enforced") {
    Protocol classic = parse_protocol(
        "states: L N\ninputs: L->L N->N\noutputs: L=1 N=0\nrule: L L -> L N\n");
    CHECK_THROWS_AS(two_state_matrix(classic), std::invalid_argument);
    GameMatrix m3 = mat({"a", "b", "c"}, {0, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(two_state_matrix(derive_protocol(m3, identity_dressing(m3))),
                    std::invalid_argument);
  }
}

TEST_CASE("recognize finds a witness for threshold-2") {
  GameMatrix th2 = mat({"zero", "sigma", "two"}, {0, 0, -1, 0, -1, -1, 1, 1, 1});
  Protocol p = derive_protocol(th2, identity_dressing(th2));
  RecognitionVerdict v = recognize(p);
  REQUIRE(v.kind == RecognitionVerdict::Kind::Pavlovian);
  REQUIRE(v.witness.has_value());
  Protocol again = derive_protocol(
      *v.witness, IoDressing{p.symbol_names(), p.input_map(), p.output_map()});
  CHECK(relation_set(again) == relation_set(p));
}

TEST_CASE("recognize accepts every symmetric deterministic 2-state protocol") {
  for (const Protocol& p : test_util::all_two_state_protocols()) {
    RecognitionVerdict v = recognize(p);
    CHECK(v.kind == RecognitionVerdict::Kind::Pavlovian);
  }
}

TEST_CASE("recognize rejects the classic leader election as non-symmetric") {
  Protocol classic = parse_protocol(
      "states: L N\ninputs: L->L N->N\noutputs: L=1 N=0\nrule: L L -> L N\n");
  RecognitionVerdict v = recognize(classic);
  REQUIRE(v.kind == RecognitionVerdict::Kind::NotSymmetric);
  CHECK(*v.present_rule == Rule{0, 0, 0, 1});  // L L -> L N
  CHECK(*v.missing_rule == Rule{0, 0, 1, 0});  // L L -> N L
}

TEST_CASE("recognize rejects the three-cycle with a strict-chain certificate") {
  Protocol cycle = parse_protocol(
      "states: q0 q1 q2\n"
      "inputs: q0->q0 q1->q1 q2->q2\n"
      "outputs: q0=0 q1=0 q2=0\n"
      "rule: q0 q0 -> q1 q1\n"
      "rule: q1 q0 -> q2 q0\n"
      "rule: q0 q1 -> q0 q2\n"
      "rule: q2 q0 -> q0 q0\n"
      "rule: q0 q2 -> q0 q0\n");
  RecognitionVerdict v = recognize(cycle);
  REQUIRE(v.kind == RecognitionVerdict::Kind::Infeasible);
  REQUIRE_FALSE(v.certificate.empty());
  auto relation = cycle.effective_relation();
  int strict = 0;
  for (const Constraint& c : v.certificate) {
    CHECK(c.column == 0);  // everything is about the column of q0
    if (c.kind == Constraint::Kind::DiffGeOne) ++strict;
    // Provenance names a real rule of the protocol.
    CHECK(std::find(relation.begin(), relation.end(), c.provenance) !=
          relation.end());
  }
  CHECK(strict == 3);
  CHECK(certificate_is_contradictory(v.certificate, cycle.num_states()));
}

TEST_CASE("recognize rejects mixed stay-and-switch listings") {
  // The full combination set, so only the stay/switch conflict remains.
  Protocol p = parse_protocol(
      "states: a b\n"
      "inputs: a->a b->b\n"
      "outputs: a=0 b=1\n"
      "rule: a a -> a a\n"
      "rule: a a -> a b\n"
      "rule: a a -> b a\n"
      "rule: a a -> b b\n");
  RecognitionVerdict v = recognize(p);
  REQUIRE(v.kind == RecognitionVerdict::Kind::Infeasible);
  REQUIRE_FALSE(v.certificate.empty());
  CHECK(certificate_is_contradictory(v.certificate, p.num_states()));
}

TEST_CASE("recognize rejects non-product successor sets") {
  // (a,a) may go to (b,b) or (c,c) but not (b,c): no matrix induces that.
  Protocol p = parse_protocol(
      "states: a b c\n"
      "inputs: a->a b->b c->c\n"
      "outputs: a=0 b=1 c=1\n"
      "rule: a a -> b b\n"
      "rule: a a -> c c\n");
  RecognitionVerdict v = recognize(p);
  CHECK(v.kind == RecognitionVerdict::Kind::Infeasible);
  CHECK_FALSE(v.reason.empty());
}

TEST_CASE("constraint systems never couple columns") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    Protocol p = test_util::random_protocol(rng, /*force_symmetric=*/true);
    for (const Constraint& c : build_constraints(p).constraints) {
      CHECK(c.column >= 0);
      CHECK(c.column < p.num_states());
      CHECK(c.provenance.b == c.column);
    }
  }
}

TEST_CASE("recognition agrees with an exhaustive column-table oracle") {
  // For up to three states the radius-3 column table realizes every
  // rational column, so a symmetric protocol has a payoff matrix iff each
  // column's successor map appears in the table and every successor set is
  // a full combination product. That re-derivation never touches the
  // constraint solver, making it an independent ground truth.
  auto table2 = enumerate_column_responses(2);
  auto table3 = enumerate_column_responses(3);

  auto oracle_says_derivable = [&](const Protocol& p) {
    const int n = p.num_states();
    const auto& table = n == 2 ? table2 : table3;
    for (int q1 = 0; q1 < n; ++q1) {
      for (int q2 = 0; q2 < n; ++q2) {
        auto listed = p.effective(q1, q2);
        std::set<int> first, second;
        for (auto [a, b] : listed) {
          first.insert(a);
          second.insert(b);
        }
        if (first.size() * second.size() != listed.size()) return false;
      }
    }
    for (int col = 0; col < n; ++col) {
      std::vector<std::uint32_t> response(n, 0);
      for (int q = 0; q < n; ++q)
        for (auto [a, b] : p.effective(q, col)) response[q] |= 1u << a;
      bool found = false;
      for (const ColumnResponse& r : table)
        if (r.succ_of == response) found = true;
      if (!found) return false;
    }
    return true;
  };

  std::mt19937_64 rng(2024);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Protocol p = test_util::random_protocol(rng, /*force_symmetric=*/true);
    if (p.num_states() > 3) continue;
    bool expected = oracle_says_derivable(p);
    RecognitionVerdict v = recognize(p);
    CHECK((v.kind == RecognitionVerdict::Kind::Pavlovian) == expected);
    (expected ? positives : negatives) += 1;
  }
  // The generator must exercise both outcomes for the check to mean much.
  CHECK(positives > 20);
  CHECK(negatives > 20);
}

TEST_CASE("random matrices round-trip through recognition") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    GameMatrix m = test_util::random_matrix(rng);
    Protocol p = derive_protocol(m, identity_dressing(m));
    CHECK(p.symmetric());
    RecognitionVerdict v = recognize(p);
    REQUIRE(v.kind == RecognitionVerdict::Kind::Pavlovian);
    Protocol again = derive_protocol(*v.witness, identity_dressing(*v.witness));
    CHECK(relation_set(again) == relation_set(p));
  }
}

TEST_CASE("derive is invariant under positive scaling") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    GameMatrix m = test_util::random_matrix(rng);
    GameMatrix scaled = m;
    Rat factor(1 + static_cast<long long>(rng() % 5),
               1 + static_cast<long long>(rng() % 7));
    for (Rat& e : scaled.entries) e *= factor;
    CHECK(relation_set(derive_protocol(m, identity_dressing(m))) ==
          relation_set(derive_protocol(scaled, identity_dressing(scaled))));
  }
}

TEST_CASE("a column only controls rules facing that column") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    GameMatrix m = test_util::random_matrix(rng, 3, 4);
    const int n = m.dim();
    int col = static_cast<int>(rng() % n);
    GameMatrix altered = m;
    for (int r = 0; r < n; ++r)
      altered.at(r, col) =
          Rat(static_cast<long long>(rng() % 11) - 5);
    Protocol before = derive_protocol(m, identity_dressing(m));
    Protocol after = derive_protocol(altered, identity_dressing(altered));
    for (int q1 = 0; q1 < n; ++q1) {
      for (int q2 = 0; q2 < n; ++q2) {
        if (q1 == col || q2 == col) continue;
        std::set<std::pair<int, int>> b, a;
        for (auto s : before.effective(q1, q2)) b.insert(s);
        for (auto s : after.effective(q1, q2)) a.insert(s);
        CHECK(b == a);
      }
    }
  }
}
