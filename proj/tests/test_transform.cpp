#include <doctest.h>

#include <set>

#include "popproto/catalog.hpp"
#include "popproto/checker.hpp"
#include "popproto/game.hpp"
#include "popproto/transform.hpp"

#include "test_util.hpp"

using namespace popproto;

namespace {

bool has_rule(const Protocol& p, const char* a, const char* b, const char* a2,
              const char* b2) {
  Rule r{p.state_index(a), p.state_index(b), p.state_index(a2),
         p.state_index(b2)};
  const auto& rules = p.rules();
  return std::find(rules.begin(), rules.end(), r) != rules.end();
}

}  // namespace

TEST_CASE("symmetrization doubles the state set and keeps outputs") {
  const Protocol& th3 = catalog_get("threshold3-classic").protocol;
  Protocol sym = symmetrize(th3);
  REQUIRE(sym.num_states() == 8);
  for (int q = 0; q < th3.num_states(); ++q) {
    int primed = sym.state_index(th3.state_name(q) + "_p");
    REQUIRE(primed >= 0);
    CHECK(sym.output_bit(q) == th3.output_bit(q));
    CHECK(sym.output_bit(primed) == th3.output_bit(q));
  }
  CHECK(sym.symbol_names() == th3.symbol_names());
  CHECK(sym.input_map() == th3.input_map());
}

TEST_CASE("symmetrized classic leader election carries the expected rules") {
  Protocol sym = symmetrize(catalog_get("leader-classic").protocol);
  CHECK(has_rule(sym, "L", "L_p", "L", "N"));
  CHECK(has_rule(sym, "L_p", "L", "N", "L"));
  CHECK(has_rule(sym, "L", "L", "L_p", "L_p"));
  CHECK(has_rule(sym, "L_p", "L_p", "L", "L"));
  // Toggles against the third-party states.
  CHECK(has_rule(sym, "L", "N", "L_p", "N"));
  CHECK(has_rule(sym, "L_p", "N", "L", "N"));
  CHECK(has_rule(sym, "N", "L", "N", "L_p"));
  CHECK(has_rule(sym, "N", "L_p", "N", "L"));
  CHECK(has_rule(sym, "L", "N_p", "L_p", "N_p"));
  CHECK(sym.symmetric());
}

TEST_CASE("every catalog protocol symmetrizes to a symmetric protocol") {
  for (const std::string& name : catalog_names()) {
    Protocol sym = symmetrize(catalog_get(name).protocol);
    CHECK(sym.symmetric());
    RecognitionVerdict v = recognize(sym);
    CHECK(v.kind != RecognitionVerdict::Kind::NotSymmetric);
  }
}

TEST_CASE("any agent can flip its primed flag next to a third state") {
  Protocol sym = symmetrize(catalog_get("majority").protocol);
  const int n = sym.num_states() / 2;
  auto flip = [&](int q) { return q < n ? q + n : q - n; };
  for (int q = 0; q < 2 * n; ++q) {
    for (int g = 0; g < 2 * n; ++g) {
      if (g == q || g == flip(q)) continue;
      Rule toggle{q, g, flip(q), g};
      auto rules = sym.effective(q, g);
      bool found = false;
      for (auto [a, b] : rules)
        if (a == toggle.a_next && b == toggle.b_next) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("symmetrization preserves desk-scale verdicts") {
  for (const char* name : {"or", "and", "xor-weak", "threshold2", "majority"}) {
    const NamedArtifact& a = catalog_get(name);
    Protocol sym = symmetrize(a.protocol);
    for (int n = 3; n <= 6; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      CHECK(check_stable(a.protocol, *a.predicate, n).computes ==
            check_stable(sym, *a.predicate, n).computes);
    }
  }
}

TEST_CASE("symmetrized counting-to-three still counts to three") {
  const NamedArtifact& a = catalog_get("threshold3-classic");
  Protocol sym = symmetrize(a.protocol);
  for (int n = 3; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(check_stable(sym, *a.predicate, n).computes);
  }
}

TEST_CASE("symmetrized classic election still elects one leader") {
  Protocol sym = symmetrize(catalog_get("leader-classic").protocol);
  std::vector<int> leaders{sym.state_index("L"), sym.state_index("L_p")};
  CHECK(check_leader(sym, leaders, 3).computes);
  CHECK(check_leader(sym, leaders, 4).computes);
}

TEST_CASE("primed-name collisions are resolved") {
  Protocol odd = Protocol({"x", "x_p"}, {"x", "x_p"}, {0, 1}, {0, 1},
                          {Rule{0, 1, 1, 1}, Rule{1, 0, 1, 1}});
  Protocol sym = symmetrize(odd);
  CHECK(sym.num_states() == 4);
  std::set<std::string> names(sym.state_names().begin(),
                              sym.state_names().end());
  CHECK(names.size() == 4);
}
