#include <doctest.h>

#include <random>
#include <set>

#include "popproto/protocol.hpp"
#include "popproto/text_io.hpp"

#include "test_util.hpp"

using namespace popproto;

namespace {

Config cfg(std::vector<int> counts) { return Config{std::move(counts)}; }

}  // namespace

TEST_CASE("uniform, mixed, and empty outputs") {
  Protocol p = parse_protocol(test_util::kOrText);
  CHECK(output_of_configuration(p, cfg({0, 3})) == 1);
  CHECK(output_of_configuration(p, cfg({2, 0})) == 0);
  CHECK(output_of_configuration(p, cfg({1, 1})) == std::nullopt);
  CHECK(output_of_configuration(p, cfg({0, 0})) == std::nullopt);
}

TEST_CASE("initial configuration applies the input map") {
  SUBCASE("identity mapping") {
    Protocol p = parse_protocol(test_util::kOrText);
    Config c = initial_configuration(p, InputMultiset{{1, 2}});
    CHECK(c == cfg({1, 2}));
  }
  SUBCASE("constant mapping") {
    Protocol p = parse_protocol(
        "states: q0 q1\n"
        "inputs: a->q0 b->q0\n"
        "outputs: q0=0 q1=1\n");
    CHECK(initial_configuration(p, InputMultiset{{1, 1}}) == cfg({2, 0}));
  }
  SUBCASE("alphabet inside a larger state set") {
    Protocol majority = parse_protocol(
        "states: N Y sigma tau\n"
        "inputs: sigma->sigma tau->tau\n"
        "outputs: N=0 Y=1 sigma=1 tau=0\n");
    Config c = initial_configuration(majority, InputMultiset{{3, 2}});
    CHECK(c == cfg({0, 0, 3, 2}));
  }
  SUBCASE("fewer than two agents is rejected") {
    Protocol p = parse_protocol(test_util::kOrText);
    CHECK_THROWS_AS(initial_configuration(p, InputMultiset{{1, 0}}),
                    std::invalid_argument);
  }
}

TEST_CASE("single-interaction successors") {
  Protocol pavlov = parse_protocol(test_util::kPavlovText);
  // State order is C, D.
  SUBCASE("mixed pair defects") {
    auto next = successors(pavlov, cfg({1, 1}));
    REQUIRE(next.size() == 1);
    CHECK(next[0] == cfg({0, 2}));
  }
  SUBCASE("two defectors flip to cooperation") {
    auto next = successors(pavlov, cfg({0, 2}));
    REQUIRE(next.size() == 1);
    CHECK(next[0] == cfg({2, 0}));
  }
  SUBCASE("a single agent has no interactions") {
    CHECK(successors(pavlov, cfg({1, 0})).empty());
  }
  SUBCASE("identity successor appears only via a rule") {
    // (C,C) falls back to the identity, so the configuration loops.
    auto loop = successors(pavlov, cfg({2, 0}));
    REQUIRE(loop.size() == 1);
    CHECK(loop[0] == cfg({2, 0}));
    // (D,D) has only the flip rule, so no self-successor.
    for (const Config& c : successors(pavlov, cfg({0, 2})))
      CHECK(c != cfg({0, 2}));
  }
}

TEST_CASE("derived flags") {
  Protocol pavlov = parse_protocol(test_util::kPavlovText);
  CHECK(pavlov.deterministic());
  CHECK(pavlov.symmetric());

  Protocol classic = parse_protocol(
      "states: L N\n"
      "inputs: L->L N->N\n"
      "outputs: L=1 N=0\n"
      "rule: L L -> L N\n");
  CHECK(classic.deterministic());
  CHECK_FALSE(classic.symmetric());

  Protocol nondet = parse_protocol(
      "states: a b\n"
      "inputs: a->a b->b\n"
      "outputs: a=0 b=1\n"
      "rule: a a -> a a\n"
      "rule: a a -> b b\n");
  CHECK_FALSE(nondet.deterministic());
  CHECK(nondet.symmetric());
}

TEST_CASE("explicit identity rules canonicalize away") {
  Protocol with = parse_protocol(
      "states: C D\n"
      "inputs: C->C D->D\n"
      "outputs: C=1 D=0\n"
      "rule: C C -> C C\n"
      "rule: C D -> D D\n"
      "rule: D C -> D D\n"
      "rule: D D -> C C\n");
  Protocol without = parse_protocol(test_util::kPavlovText);
  CHECK(with == without);
  CHECK(with.rules().size() == 3);
}

TEST_CASE("construction rejects malformed pieces") {
  using V = std::vector<int>;
  std::vector<std::string> qs{"a", "b"};
  CHECK_THROWS_AS(Protocol({"a", "a"}, qs, V{0, 1}, V{0, 0}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Protocol(qs, qs, V{0, 7}, V{0, 0}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Protocol(qs, qs, V{0, 1}, V{0, 2}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Protocol(qs, qs, V{0, 1}, V{0, 0}, {Rule{0, 5, 0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("population size is conserved and the relation is total") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Protocol p = test_util::random_protocol(rng);
    const int n = p.num_states();
    for (int q1 = 0; q1 < n; ++q1)
      for (int q2 = 0; q2 < n; ++q2)
        CHECK_FALSE(p.effective(q1, q2).empty());

    Config c;
    c.counts.assign(n, 0);
    long long size = 2 + static_cast<long long>(rng() % 7);
    for (long long i = 0; i < size; ++i) ++c.counts[rng() % n];
    for (const Config& next : successors(p, c)) CHECK(next.size() == size);
  }
}

TEST_CASE("symmetric protocols act the same from both sides of a pair") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Protocol p = test_util::random_protocol(rng, /*force_symmetric=*/true);
    REQUIRE(p.symmetric());
    const int n = p.num_states();
    for (int q1 = 0; q1 < n; ++q1) {
      for (int q2 = 0; q2 < n; ++q2) {
        std::multiset<std::pair<int, int>> fwd, rev;
        for (auto [a, b] : p.effective(q1, q2))
          fwd.insert(std::minmax(a, b));
        for (auto [a, b] : p.effective(q2, q1))
          rev.insert(std::minmax(a, b));
        CHECK(fwd == rev);
      }
    }
  }
}
