#include "popproto/protocol.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace popproto {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_unique_names(const std::vector<std::string>& names,
                        const char* what) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    require(!n.empty(), std::string(what) + " name must be non-empty");
    require(seen.insert(n).second, "duplicate " + std::string(what) +
                                       " name '" + n + "'");
  }
}

}  // namespace

Protocol::Protocol(std::vector<std::string> state_names,
                   std::vector<std::string> symbol_names,
                   std::vector<int> input_map, std::vector<int> output_map,
                   std::vector<Rule> rules)
    : state_names_(std::move(state_names)),
      symbol_names_(std::move(symbol_names)),
      input_map_(std::move(input_map)),
      output_map_(std::move(output_map)),
      rules_(std::move(rules)) {
  const int n = num_states();
  require(n >= 1, "protocol needs at least one state");
  check_unique_names(state_names_, "state");
  check_unique_names(symbol_names_, "symbol");
  require(static_cast<int>(input_map_.size()) == num_symbols(),
          "input map must cover every symbol");
  require(static_cast<int>(output_map_.size()) == n,
          "output map must cover every state");
  for (int q : input_map_)
    require(q >= 0 && q < n, "input map target out of range");
  for (int b : output_map_)
    require(b == 0 || b == 1, "output bits must be 0 or 1");
  for (const Rule& r : rules_) {
    for (int q : {r.a, r.b, r.a_next, r.b_next})
      require(q >= 0 && q < n, "rule mentions a state out of range");
  }

  std::sort(rules_.begin(), rules_.end());
  rules_.erase(std::unique(rules_.begin(), rules_.end()), rules_.end());

  // Drop listings that are exactly the identity fallback, so explicitly
  // listed no-op pairs and omitted ones canonicalize to the same value.
  by_pair_.assign(static_cast<std::size_t>(n) * n, {});
  for (const Rule& r : rules_)
    by_pair_[r.a * n + r.b].emplace_back(r.a_next, r.b_next);
  std::vector<Rule> canonical;
  canonical.reserve(rules_.size());
  for (const Rule& r : rules_) {
    const auto& listed = by_pair_[r.a * n + r.b];
    if (listed.size() == 1 && r.is_identity()) continue;
    canonical.push_back(r);
  }
  rules_ = std::move(canonical);

  for (int q1 = 0; q1 < n; ++q1)
    for (int q2 = 0; q2 < n; ++q2)
      if (by_pair_[q1 * n + q2].empty() ||
          (by_pair_[q1 * n + q2].size() == 1 &&
           by_pair_[q1 * n + q2][0] == std::make_pair(q1, q2)))
        by_pair_[q1 * n + q2] = {{q1, q2}};

  deterministic_ = true;
  symmetric_ = true;
  for (int q1 = 0; q1 < n && (deterministic_ || symmetric_); ++q1) {
    for (int q2 = 0; q2 < n; ++q2) {
      const auto& fwd = by_pair_[q1 * n + q2];
      if (fwd.size() != 1) deterministic_ = false;
      const auto& rev = by_pair_[q2 * n + q1];
      for (const auto& [a, b] : fwd) {
        if (std::find(rev.begin(), rev.end(), std::make_pair(b, a)) ==
            rev.end()) {
          symmetric_ = false;
          break;
        }
      }
    }
  }
}

int Protocol::state_index(std::string_view name) const {
  for (int i = 0; i < num_states(); ++i)
    if (state_names_[i] == name) return i;
  return -1;
}

int Protocol::symbol_index(std::string_view name) const {
  for (int i = 0; i < num_symbols(); ++i)
    if (symbol_names_[i] == name) return i;
  return -1;
}

std::span<const std::pair<int, int>> Protocol::effective(int q1,
                                                         int q2) const {
  return by_pair_[q1 * num_states() + q2];
}

std::vector<Rule> Protocol::effective_relation() const {
  std::vector<Rule> out;
  const int n = num_states();
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int q1 = 0; q1 < n; ++q1)
    for (int q2 = 0; q2 < n; ++q2)
      for (const auto& [a, b] : effective(q1, q2))
        out.push_back(Rule{q1, q2, a, b});
  std::sort(out.begin(), out.end());
  return out;
}

bool Protocol::operator==(const Protocol& other) const {
  return state_names_ == other.state_names_ &&
         symbol_names_ == other.symbol_names_ &&
         input_map_ == other.input_map_ && output_map_ == other.output_map_ &&
         rules_ == other.rules_;
}

std::optional<int> output_of_configuration(const Protocol& p,
                                           const Config& c) {
  if (static_cast<int>(c.counts.size()) != p.num_states())
    throw std::invalid_argument("configuration is over the wrong state set");
  int seen = -1;
  for (int q = 0; q < p.num_states(); ++q) {
    if (c.counts[q] <= 0) continue;
    int bit = p.output_bit(q);
    if (seen == -1) seen = bit;
    if (seen != bit) return std::nullopt;
  }
  if (seen == -1) return std::nullopt;  // empty population has no output
  return seen;
}

Config initial_configuration(const Protocol& p, const InputMultiset& x) {
  if (static_cast<int>(x.counts.size()) != p.num_symbols())
    throw std::invalid_argument("input is over the wrong alphabet");
  if (x.size() < 2)
    throw std::invalid_argument("population must have at least two agents");
  Config c;
  c.counts.assign(p.num_states(), 0);
  for (int s = 0; s < p.num_symbols(); ++s) {
    if (x.counts[s] < 0)
      throw std::invalid_argument("negative input multiplicity");
    c.counts[p.input_state(s)] += x.counts[s];
  }
  return c;
}

std::vector<Config> successors(const Protocol& p, const Config& c) {
  if (static_cast<int>(c.counts.size()) != p.num_states())
    throw std::invalid_argument("configuration is over the wrong state set");
  std::set<Config> out;
  const int n = p.num_states();
  for (int q1 = 0; q1 < n; ++q1) {
    if (c.counts[q1] <= 0) continue;
    for (int q2 = 0; q2 < n; ++q2) {
      if (c.counts[q2] < (q1 == q2 ? 2 : 1)) continue;
      for (const auto& [a, b] : p.effective(q1, q2)) {
        Config next = c;
        --next.counts[q1];
        --next.counts[q2];
        ++next.counts[a];
        ++next.counts[b];
        out.insert(std::move(next));
      }
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace popproto
