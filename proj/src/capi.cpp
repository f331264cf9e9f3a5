#include "popproto/popproto.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "popproto/catalog.hpp"
#include "popproto/checker.hpp"
#include "popproto/errors.hpp"
#include "popproto/game.hpp"
#include "popproto/predicate.hpp"
#include "popproto/protocol.hpp"
#include "popproto/search.hpp"
#include "popproto/text_io.hpp"
#include "popproto/transform.hpp"

using json = nlohmann::json;
namespace pp = popproto;

struct pp_protocol {
  pp::Protocol value;
};
struct pp_matrix {
  pp::GameMatrix value;
};
struct pp_predicate {
  pp::Predicate value;
  std::string text;
};
struct pp_graph {
  pp::InteractionGraph value;
};
struct pp_recognition {
  pp::RecognitionVerdict value;
  std::vector<std::string> state_names;
};
struct pp_verdict {
  pp::StableVerdict value;
  pp::Protocol protocol;
  std::string check;  // "stable" or "leader"
  int n = 0;
};
struct pp_sim_report {
  std::string mode;  // "population" or "graph"
  int reached = -1;
  std::uint64_t steps = 0;
  std::uint64_t first_entry = 0;
  std::string final_text;
};
struct pp_falsify_report {
  pp::FalsifyReport value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::operator new(s.size() + 1, std::nothrow));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pp_status fail(pp_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Builds a caller-freed string; failures surface as NULL, never as an
// exception crossing the C boundary.
template <typename Fn>
char* guarded_string(Fn&& body) {
  try {
    return dup_string(body());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

// Runs `body` and folds every failure into a status code.
template <typename Fn>
pp_status guarded(Fn&& body) {
  try {
    return body();
  } catch (const pp::ParseError& e) {
    return fail(PP_ERR_PARSE, e.what());
  } catch (const pp::BudgetExceeded& e) {
    return fail(PP_ERR_BUDGET_EXCEEDED, e.what());
  } catch (const pp::NotFound& e) {
    return fail(PP_ERR_NOT_FOUND, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PP_ERR_INTERNAL, e.what());
  }
}

pp_status require_handle(const void* h, const char* what) {
  if (h) return PP_OK;
  return fail(PP_ERR_INVALID_ARGUMENT, std::string(what) + " handle is NULL");
}

std::string verdict_term(const pp_verdict& v) {
  if (v.value.computes) return v.check == "leader" ? "holds" : "computes";
  return "fails";
}

std::string verdict_text(const pp_verdict& v) {
  std::string head = (v.check == "leader" ? "leader property " : "") +
                     verdict_term(v) + " at n=" + std::to_string(v.n);
  if (v.value.computes) return head;
  std::string out = head + ":";
  if (v.value.input)
    out += " input " + pp::format_multiset(*v.value.input, v.protocol);
  if (v.value.initial)
    out += " start " + pp::format_config(*v.value.initial, v.protocol);
  if (v.value.offending)
    out +=
        ", settles on " + pp::format_config(*v.value.offending, v.protocol);
  if (!v.value.detail.empty()) out += " (" + v.value.detail + ")";
  return out;
}

json verdict_to_json(const pp_verdict& v) {
  json j;
  j["verdict"] = verdict_term(v);
  j["n"] = v.n;
  j["check"] = v.check;
  if (!v.value.computes) {
    json cx;
    if (v.value.input)
      cx["input"] = pp::format_multiset(*v.value.input, v.protocol);
    if (v.value.initial)
      cx["initial"] = pp::format_config(*v.value.initial, v.protocol);
    if (v.value.offending)
      cx["configuration"] = pp::format_config(*v.value.offending, v.protocol);
    if (v.check == "stable") {
      cx["observed"] = v.value.observed == -1
                           ? json("undefined")
                           : json(v.value.observed);
      cx["expected"] = v.value.expected;
    } else {
      cx["leaders"] = v.value.observed;
    }
    j["counterexample"] = cx;
  }
  return j;
}

json matrix_to_json(const pp::GameMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c)
      row.push_back(pp::format_rational(m.at(r, c)));
    rows.push_back(row);
  }
  return json{{"states", m.states}, {"rows", rows}};
}

std::string rule_text(const pp::Rule& r, const std::vector<std::string>& names) {
  return names[r.a] + " " + names[r.b] + " -> " + names[r.a_next] + " " +
         names[r.b_next];
}

// Parses "sym->state ..." / "state=bit ..." fragments for pp_derive.
pp::IoDressing parse_dressing(const pp::GameMatrix& m, const char* inputs,
                              const char* outputs) {
  pp::IoDressing io;
  auto state_of = [&](const std::string& name) {
    for (int i = 0; i < m.dim(); ++i)
      if (m.states[i] == name) return i;
    throw pp::ParseError(1, "unknown state '" + name + "' in dressing");
  };
  if (inputs) {
    std::string text = inputs;
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == ','))
        ++pos;
      std::size_t end = text.find_first_of(" ,", pos);
      if (end == std::string::npos) end = text.size();
      if (end == pos) break;
      std::string tok = text.substr(pos, end - pos);
      pos = end;
      auto arrow = tok.find("->");
      if (arrow == std::string::npos)
        throw pp::ParseError(1, "expected 'symbol->state' in inputs");
      io.symbols.push_back(tok.substr(0, arrow));
      io.input_map.push_back(state_of(tok.substr(arrow + 2)));
    }
  } else {
    io.symbols = m.states;
    for (int i = 0; i < m.dim(); ++i) io.input_map.push_back(i);
  }
  io.output_map.assign(m.dim(), 0);
  if (outputs) {
    std::string text = outputs;
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == ','))
        ++pos;
      std::size_t end = text.find_first_of(" ,", pos);
      if (end == std::string::npos) end = text.size();
      if (end == pos) break;
      std::string tok = text.substr(pos, end - pos);
      pos = end;
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw pp::ParseError(1, "expected 'state=bit' in outputs");
      std::string bit = tok.substr(eq + 1);
      if (bit != "0" && bit != "1")
        throw pp::ParseError(1, "output bit must be 0 or 1");
      io.output_map[state_of(tok.substr(0, eq))] = bit == "1";
    }
  }
  return io;
}

std::vector<int> resolve_states_csv(const pp::Protocol& p, const char* csv) {
  std::vector<int> out;
  std::string text = csv ? csv : "";
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::size_t end = comma == std::string::npos ? text.size() : comma;
    std::string name = text.substr(pos, end - pos);
    pos = end + 1;
    if (name.empty()) continue;
    int q = p.state_index(name);
    if (q < 0) throw std::invalid_argument("unknown state '" + name + "'");
    out.push_back(q);
  }
  if (out.empty()) throw std::invalid_argument("no states listed");
  return out;
}

// Lays the input multiset onto graph vertices in symbol order.
std::vector<int> spread_input(const pp::Protocol& p, const pp::InputMultiset& x,
                              int vertices) {
  if (x.size() != static_cast<long long>(vertices))
    throw std::invalid_argument("input size " + std::to_string(x.size()) +
                                " does not match the " +
                                std::to_string(vertices) + " vertices");
  std::vector<int> states;
  states.reserve(vertices);
  for (int s = 0; s < p.num_symbols(); ++s)
    for (int k = 0; k < x.counts[s]; ++k)
      states.push_back(p.input_state(s));
  return states;
}

}  // namespace

extern "C" {

const char* pp_last_error(void) { return g_last_error.c_str(); }

void pp_string_free(char* s) { ::operator delete(s); }

/* ---- protocols ------------------------------------------------------- */

pp_status pp_protocol_parse(const char* text, pp_protocol** out) {
  if (auto st = require_handle(text, "text"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    *out = new pp_protocol{pp::parse_protocol(text)};
    return PP_OK;
  });
}

pp_status pp_protocol_load(const char* path, pp_protocol** out) {
  if (auto st = require_handle(path, "path"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    std::string text;
    try {
      text = pp::read_file(path);
    } catch (const std::exception& e) {
      return fail(PP_ERR_IO, e.what());
    }
    *out = new pp_protocol{pp::parse_protocol(text)};
    return PP_OK;
  });
}

char* pp_protocol_format(const pp_protocol* p) {
  if (!p) return nullptr;
  return guarded_string([&] { return pp::format_protocol(p->value); });
}

void pp_protocol_free(pp_protocol* p) { delete p; }

int pp_protocol_num_states(const pp_protocol* p) {
  return p ? p->value.num_states() : 0;
}

int pp_protocol_num_symbols(const pp_protocol* p) {
  return p ? p->value.num_symbols() : 0;
}

const char* pp_protocol_state_name(const pp_protocol* p, int state) {
  if (!p || state < 0 || state >= p->value.num_states()) return nullptr;
  return p->value.state_name(state).c_str();
}

const char* pp_protocol_symbol_name(const pp_protocol* p, int symbol) {
  if (!p || symbol < 0 || symbol >= p->value.num_symbols()) return nullptr;
  return p->value.symbol_name(symbol).c_str();
}

int pp_protocol_is_deterministic(const pp_protocol* p) {
  return p && p->value.deterministic() ? 1 : 0;
}

int pp_protocol_is_symmetric(const pp_protocol* p) {
  return p && p->value.symmetric() ? 1 : 0;
}

/* ---- matrices --------------------------------------------------------- */

pp_status pp_matrix_parse(const char* text, pp_matrix** out) {
  if (auto st = require_handle(text, "text"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    *out = new pp_matrix{pp::parse_matrix(text)};
    return PP_OK;
  });
}

pp_status pp_matrix_load(const char* path, pp_matrix** out) {
  if (auto st = require_handle(path, "path"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    std::string text;
    try {
      text = pp::read_file(path);
    } catch (const std::exception& e) {
      return fail(PP_ERR_IO, e.what());
    }
    *out = new pp_matrix{pp::parse_matrix(text)};
    return PP_OK;
  });
}

char* pp_matrix_format(const pp_matrix* m) {
  if (!m) return nullptr;
  return guarded_string([&] { return pp::format_matrix(m->value); });
}

void pp_matrix_free(pp_matrix* m) { delete m; }

int pp_matrix_dim(const pp_matrix* m) { return m ? m->value.dim() : 0; }

pp_status pp_derive(const pp_matrix* m, const char* inputs,
                    const char* outputs, pp_protocol** out) {
  if (auto st = require_handle(m, "matrix"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    pp::IoDressing io = parse_dressing(m->value, inputs, outputs);
    *out = new pp_protocol{pp::derive_protocol(m->value, io)};
    return PP_OK;
  });
}

pp_status pp_two_state_matrix(const pp_protocol* p, pp_matrix** out) {
  if (auto st = require_handle(p, "protocol"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    *out = new pp_matrix{pp::two_state_matrix(p->value)};
    return PP_OK;
  });
}

/* ---- recognition ------------------------------------------------------ */

pp_status pp_recognize(const pp_protocol* p, pp_recognition** out) {
  if (auto st = require_handle(p, "protocol"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    *out = new pp_recognition{pp::recognize(p->value),
                              p->value.state_names()};
    return PP_OK;
  });
}

int pp_recognition_kind(const pp_recognition* r) {
  if (!r) return -1;
  switch (r->value.kind) {
    case pp::RecognitionVerdict::Kind::Pavlovian:
      return PP_RECOGNITION_PAVLOVIAN;
    case pp::RecognitionVerdict::Kind::NotSymmetric:
      return PP_RECOGNITION_NOT_SYMMETRIC;
    case pp::RecognitionVerdict::Kind::Infeasible:
      return PP_RECOGNITION_INFEASIBLE;
  }
  return -1;
}

pp_status pp_recognition_witness(const pp_recognition* r, pp_matrix** out) {
  if (auto st = require_handle(r, "recognition"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  if (!r->value.witness)
    return fail(PP_ERR_NOT_FOUND, "verdict carries no witness matrix");
  return guarded([&] {
    *out = new pp_matrix{*r->value.witness};
    return PP_OK;
  });
}

char* pp_recognition_text(const pp_recognition* r) {
  if (!r) return nullptr;
  return guarded_string([&] {
    const auto& v = r->value;
    std::string out;
    switch (v.kind) {
      case pp::RecognitionVerdict::Kind::Pavlovian:
        out = "pavlovian\n" + pp::format_matrix(*v.witness);
        break;
      case pp::RecognitionVerdict::Kind::NotSymmetric:
        out = "not symmetric: " + v.reason + "\n  present: " +
              rule_text(*v.present_rule, r->state_names) + "\n  missing: " +
              rule_text(*v.missing_rule, r->state_names) + "\n";
        break;
      case pp::RecognitionVerdict::Kind::Infeasible:
        out = "infeasible: " + v.reason + "\n";
        for (const auto& c : v.certificate)
          out += "  " + c.render(r->state_names) + "\n";
        break;
    }
    return out;
  });
}

char* pp_recognition_json(const pp_recognition* r) {
  if (!r) return nullptr;
  return guarded_string([&] {
    const auto& v = r->value;
    json j;
    switch (v.kind) {
      case pp::RecognitionVerdict::Kind::Pavlovian:
        j["verdict"] = "pavlovian";
        j["witness"] = matrix_to_json(*v.witness);
        break;
      case pp::RecognitionVerdict::Kind::NotSymmetric: {
        j["verdict"] = "not_symmetric";
        j["rule"] = rule_text(*v.present_rule, r->state_names);
        j["missing"] = rule_text(*v.missing_rule, r->state_names);
        break;
      }
      case pp::RecognitionVerdict::Kind::Infeasible: {
        j["verdict"] = "infeasible";
        j["reason"] = v.reason;
        json cert = json::array();
        for (const auto& c : v.certificate)
          cert.push_back(c.render(r->state_names));
        j["certificate"] = cert;
        break;
      }
    }
    return j.dump();
  });
}

void pp_recognition_free(pp_recognition* r) { delete r; }

/* ---- predicates ------------------------------------------------------- */

pp_status pp_predicate_parse(const char* text, const pp_protocol* p,
                             pp_predicate** out) {
  if (auto st = require_handle(text, "text"); st != PP_OK) return st;
  if (auto st = require_handle(p, "protocol"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    *out = new pp_predicate{
        pp::parse_predicate(text, p->value.symbol_names()), text};
    return PP_OK;
  });
}

void pp_predicate_free(pp_predicate* pr) { delete pr; }

/* ---- checking ---------------------------------------------------------- */

pp_status pp_check_stable(const pp_protocol* p, const pp_predicate* pred,
                          int n, uint64_t node_budget, pp_verdict** out) {
  if (auto st = require_handle(p, "protocol"); st != PP_OK) return st;
  if (auto st = require_handle(pred, "predicate"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    std::size_t budget = node_budget ? node_budget : pp::kDefaultNodeBudget;
    *out = new pp_verdict{pp::check_stable(p->value, pred->value, n, budget),
                          p->value, "stable", n};
    return PP_OK;
  });
}

pp_status pp_check_leader(const pp_protocol* p, const char* leader_states_csv,
                          int n, uint64_t node_budget, pp_verdict** out) {
  if (auto st = require_handle(p, "protocol"); st != PP_OK) return st;
  if (auto st = require_handle(leader_states_csv, "leader states");
      st != PP_OK)
    return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    std::size_t budget = node_budget ? node_budget : pp::kDefaultNodeBudget;
    std::vector<int> leaders = resolve_states_csv(p->value, leader_states_csv);
    *out = new pp_verdict{pp::check_leader(p->value, leaders, n, budget),
                          p->value, "leader", n};
    return PP_OK;
  });
}

int pp_verdict_holds(const pp_verdict* v) {
  return v && v->value.computes ? 1 : 0;
}

char* pp_verdict_text(const pp_verdict* v) {
  if (!v) return nullptr;
  return guarded_string([&] { return verdict_text(*v); });
}

char* pp_verdict_json(const pp_verdict* v) {
  if (!v) return nullptr;
  return guarded_string([&] { return verdict_to_json(*v).dump(); });
}

void pp_verdict_free(pp_verdict* v) { delete v; }

/* ---- simulation -------------------------------------------------------- */

pp_status pp_graph_ring(int n, pp_graph** out) {
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    *out = new pp_graph{pp::ring_graph(n)};
    return PP_OK;
  });
}

pp_status pp_graph_complete(int n, pp_graph** out) {
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    *out = new pp_graph{pp::complete_graph(n)};
    return PP_OK;
  });
}

pp_status pp_graph_parse(const char* text, pp_graph** out) {
  if (auto st = require_handle(text, "text"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    *out = new pp_graph{pp::parse_graph(text)};
    return PP_OK;
  });
}

pp_status pp_graph_load(const char* path, pp_graph** out) {
  if (auto st = require_handle(path, "path"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    std::string text;
    try {
      text = pp::read_file(path);
    } catch (const std::exception& e) {
      return fail(PP_ERR_IO, e.what());
    }
    *out = new pp_graph{pp::parse_graph(text)};
    return PP_OK;
  });
}

int pp_graph_vertices(const pp_graph* g) { return g ? g->value.vertices : 0; }

void pp_graph_free(pp_graph* g) { delete g; }

pp_status pp_simulate(const pp_protocol* p, const char* input,
                      uint64_t max_steps, uint64_t seed,
                      uint64_t explore_budget, pp_sim_report** out) {
  if (auto st = require_handle(p, "protocol"); st != PP_OK) return st;
  if (auto st = require_handle(input, "input"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    pp::InputMultiset x = pp::parse_multiset(input, p->value);
    pp::Config start = pp::initial_configuration(p->value, x);
    pp::ReachabilityGraph certified;
    bool have_certified = false;
    if (explore_budget > 0) {
      try {
        certified = pp::explore(p->value, start, explore_budget);
        have_certified = true;
      } catch (const pp::BudgetExceeded&) {
        // Too large to certify; the walk still runs.
      }
    }
    pp::SimTrace trace =
        pp::simulate(p->value, start, max_steps, seed,
                     have_certified ? &certified : nullptr);
    auto* report = new pp_sim_report;
    report->mode = "population";
    report->reached = trace.entered_bottom;
    report->steps = trace.steps;
    report->first_entry = trace.first_entry_step;
    report->final_text = pp::format_config(trace.final, p->value);
    *out = report;
    return PP_OK;
  });
}

pp_status pp_simulate_graph(const pp_protocol* p, const pp_graph* g,
                            const char* input, const char* absorbing_state,
                            uint64_t max_steps, uint64_t seed,
                            pp_sim_report** out) {
  if (auto st = require_handle(p, "protocol"); st != PP_OK) return st;
  if (auto st = require_handle(g, "graph"); st != PP_OK) return st;
  if (auto st = require_handle(input, "input"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    pp::InputMultiset x = pp::parse_multiset(input, p->value);
    pp::InteractionGraph graph = g->value;
    graph.vertex_state = spread_input(p->value, x, graph.vertices);
    std::optional<std::vector<int>> absorbing;
    if (absorbing_state) {
      int q = p->value.state_index(absorbing_state);
      if (q < 0)
        throw std::invalid_argument(std::string("unknown state '") +
                                    absorbing_state + "'");
      absorbing = std::vector<int>(graph.vertices, q);
    }
    pp::AbsorptionReport result =
        pp::simulate_on_graph(p->value, graph, max_steps, seed, absorbing);
    auto* report = new pp_sim_report;
    report->mode = "graph";
    report->reached = absorbing ? (result.absorbed ? 1 : 0) : -1;
    report->steps = result.steps;
    report->first_entry = result.steps;
    pp::Config tally;
    tally.counts.assign(p->value.num_states(), 0);
    for (int q : result.final_states) ++tally.counts[q];
    report->final_text = pp::format_config(tally, p->value);
    *out = report;
    return PP_OK;
  });
}

int pp_sim_reached_bottom(const pp_sim_report* r) { return r ? r->reached : -1; }

uint64_t pp_sim_steps(const pp_sim_report* r) { return r ? r->steps : 0; }

char* pp_sim_final(const pp_sim_report* r) {
  if (!r) return nullptr;
  return guarded_string([&] { return r->final_text; });
}

char* pp_sim_text(const pp_sim_report* r) {
  if (!r) return nullptr;
  return guarded_string([&] {
    std::string verdict = r->reached == 1
                              ? (r->mode == "graph" ? "absorbed"
                                                    : "reached bottom SCC")
                          : r->reached == 0 ? "timeout"
                                            : "ran";
    std::string out = verdict + " steps=" + std::to_string(r->steps);
    if (r->reached == 1 && r->mode != "graph")
      out += " entered_at=" + std::to_string(r->first_entry);
    return out + " final=" + r->final_text;
  });
}

char* pp_sim_json(const pp_sim_report* r) {
  if (!r) return nullptr;
  return guarded_string([&] {
    json j;
    j["verdict"] = r->reached == 1
                       ? (r->mode == "graph" ? "absorbed" : "bottom")
                   : r->reached == 0 ? "timeout"
                                     : "ran";
    j["steps"] = r->steps;
    if (r->reached == 1) j["entered_at"] = r->first_entry;
    j["final"] = r->final_text;
    return j.dump();
  });
}

void pp_sim_report_free(pp_sim_report* r) { delete r; }

/* ---- symmetrization ----------------------------------------------------- */

pp_status pp_symmetrize(const pp_protocol* p, pp_protocol** out) {
  if (auto st = require_handle(p, "protocol"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    *out = new pp_protocol{pp::symmetrize(p->value)};
    return PP_OK;
  });
}

/* ---- search -------------------------------------------------------------- */

pp_status pp_falsify(const char* predicate, int n_max, int threads,
                     pp_falsify_report** out) {
  if (auto st = require_handle(predicate, "predicate"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    pp::Predicate target =
        pp::parse_predicate(predicate, {"sigma", "zero"});
    *out = new pp_falsify_report{
        pp::falsify(target, predicate, n_max, threads < 1 ? 1 : threads)};
    return PP_OK;
  });
}

uint64_t pp_falsify_candidates(const pp_falsify_report* r) {
  return r ? r->value.candidates : 0;
}

uint64_t pp_falsify_survivors(const pp_falsify_report* r) {
  return r ? r->value.survivors.size() : 0;
}

char* pp_falsify_text(const pp_falsify_report* r) {
  if (!r) return nullptr;
  return guarded_string([&] {
    std::string out;
    for (const auto& sv : r->value.survivors)
      out += "survivor: " + sv.rendered + "\n";
    out += "candidates=" + std::to_string(r->value.candidates) +
           " survivors=" + std::to_string(r->value.survivors.size()) + "\n";
    return out;
  });
}

char* pp_falsify_json(const pp_falsify_report* r) {
  if (!r) return nullptr;
  return guarded_string([&] {
    json j;
    j["predicate"] = r->value.predicate_text;
    j["n_max"] = r->value.n_max;
    j["protocols"] = r->value.protocols;
    j["candidates"] = r->value.candidates;
    j["survivors"] = r->value.survivors.size();
    json list = json::array();
    for (const auto& sv : r->value.survivors) list.push_back(sv.rendered);
    j["survivor_list"] = list;
    return j.dump();
  });
}

void pp_falsify_report_free(pp_falsify_report* r) { delete r; }

/* ---- catalog -------------------------------------------------------------- */

char* pp_catalog_names(void) {
  return guarded_string([] {
    std::string out;
    for (const auto& name : pp::catalog_names()) out += name + "\n";
    return out;
  });
}

pp_status pp_catalog_get(const char* name, pp_protocol** protocol,
                         pp_matrix** matrix) {
  if (auto st = require_handle(name, "name"); st != PP_OK) return st;
  return guarded([&] {
    const pp::NamedArtifact& a = pp::catalog_get(name);
    if (protocol) *protocol = new pp_protocol{a.protocol};
    if (matrix) *matrix = a.matrix ? new pp_matrix{*a.matrix} : nullptr;
    return PP_OK;
  });
}

char* pp_catalog_describe(const char* name) {
  if (!name) return nullptr;
  return guarded_string([&] {
    const pp::NamedArtifact& a = pp::catalog_get(name);
    std::string out = a.name + ": states=" +
                      std::to_string(a.protocol.num_states()) + " rules=" +
                      std::to_string(a.protocol.rules().size()) +
                      (a.matrix ? " matrix=yes" : " matrix=no");
    if (a.predicate_text) out += " predicate=\"" + *a.predicate_text + "\"";
    if (!a.leader_states.empty()) {
      out += " leaders=";
      for (std::size_t i = 0; i < a.leader_states.size(); ++i)
        out += (i ? "," : "") + a.leader_states[i];
    }
    out += " -- " + a.description;
    if (!a.notes.empty()) out += " [" + a.notes + "]";
    return out;
  });
}

pp_status pp_catalog_predicate(const char* name, char** out) {
  if (auto st = require_handle(name, "name"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    const pp::NamedArtifact& a = pp::catalog_get(name);
    if (!a.predicate_text)
      return fail(PP_ERR_NOT_FOUND,
                  "entry '" + a.name + "' has no predicate");
    *out = dup_string(*a.predicate_text);
    return PP_OK;
  });
}

pp_status pp_catalog_leader_states(const char* name, char** out) {
  if (auto st = require_handle(name, "name"); st != PP_OK) return st;
  if (auto st = require_handle(out, "out"); st != PP_OK) return st;
  return guarded([&] {
    const pp::NamedArtifact& a = pp::catalog_get(name);
    if (a.leader_states.empty())
      return fail(PP_ERR_NOT_FOUND,
                  "entry '" + a.name + "' has no leader states");
    std::string csv;
    for (std::size_t i = 0; i < a.leader_states.size(); ++i)
      csv += (i ? "," : "") + a.leader_states[i];
    *out = dup_string(csv);
    return PP_OK;
  });
}

}  // extern "C"
