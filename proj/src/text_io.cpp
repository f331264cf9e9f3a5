#include "popproto/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "popproto/errors.hpp"

namespace popproto {

namespace {

// Strips '#' comments and surrounding blanks; returns one entry per line
// with its 1-based line number.
std::vector<std::pair<int, std::string>> logical_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto is_blank = [](unsigned char c) { return std::isspace(c); };
    while (!line.empty() && is_blank(line.back())) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && is_blank(line[start])) ++start;
    line.erase(0, start);
    if (!line.empty()) out.emplace_back(line_no, line);
    if (end == text.size()) break;
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Protocol parse_protocol(std::string_view text) {
  std::vector<std::string> states, symbols;
  std::vector<int> input_map;
  std::vector<int> output_map;
  std::vector<char> output_set;
  std::vector<Rule> rules;
  bool have_states = false;

  auto state_of = [&](const std::string& name, int line) {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return static_cast<int>(i);
    throw ParseError(line, "unknown state '" + name + "'");
  };

  for (const auto& [line, content] : logical_lines(text)) {
    auto colon = content.find(':');
    if (colon == std::string::npos)
      throw ParseError(line, "expected 'keyword: ...'");
    std::string keyword = content.substr(0, colon);
    std::string rest = content.substr(colon + 1);
    if (keyword == "states") {
      if (have_states) throw ParseError(line, "duplicate states line");
      states = split_ws(rest);
      if (states.empty()) throw ParseError(line, "no states listed");
      have_states = true;
      output_map.assign(states.size(), 0);
      output_set.assign(states.size(), 0);
    } else if (keyword == "inputs") {
      if (!have_states) throw ParseError(line, "states must come first");
      for (const std::string& tok : split_ws(rest)) {
        auto arrow = tok.find("->");
        if (arrow == std::string::npos)
          throw ParseError(line, "expected 'symbol->state'");
        std::string sym = tok.substr(0, arrow);
        std::string target = tok.substr(arrow + 2);
        if (sym.empty()) throw ParseError(line, "empty symbol name");
        if (std::find(symbols.begin(), symbols.end(), sym) != symbols.end())
          throw ParseError(line, "duplicate input symbol '" + sym + "'");
        symbols.push_back(sym);
        input_map.push_back(state_of(target, line));
      }
    } else if (keyword == "outputs") {
      if (!have_states) throw ParseError(line, "states must come first");
      for (const std::string& tok : split_ws(rest)) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
          throw ParseError(line, "expected 'state=bit'");
        int q = state_of(tok.substr(0, eq), line);
        std::string bit = tok.substr(eq + 1);
        if (bit != "0" && bit != "1")
          throw ParseError(line, "output bit must be 0 or 1");
        output_map[q] = bit == "1" ? 1 : 0;
        output_set[q] = 1;
      }
    } else if (keyword == "rule") {
      if (!have_states) throw ParseError(line, "states must come first");
      auto toks = split_ws(rest);
      if (toks.size() != 5 || toks[2] != "->")
        throw ParseError(line, "expected 'rule: q1 q2 -> q1' q2''");
      rules.push_back(Rule{state_of(toks[0], line), state_of(toks[1], line),
                           state_of(toks[3], line), state_of(toks[4], line)});
    } else {
      throw ParseError(line, "unknown keyword '" + keyword + "'");
    }
  }
  if (!have_states) throw ParseError(1, "missing states line");
  for (std::size_t q = 0; q < states.size(); ++q)
    if (!output_set[q])
      throw ParseError(1, "no output bit for state '" + states[q] + "'");
  try {
    return Protocol(std::move(states), std::move(symbols),
                    std::move(input_map), std::move(output_map),
                    std::move(rules));
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
}

std::string format_protocol(const Protocol& p) {
  std::string out = "states:";
  for (const auto& s : p.state_names()) out += " " + s;
  out += "\ninputs:";
  for (int s = 0; s < p.num_symbols(); ++s)
    out += " " + p.symbol_name(s) + "->" + p.state_name(p.input_state(s));
  out += "\noutputs:";
  for (int q = 0; q < p.num_states(); ++q)
    out += " " + p.state_name(q) + "=" + std::to_string(p.output_bit(q));
  out += "\n";
  for (const Rule& r : p.rules()) {
    out += "rule: " + p.state_name(r.a) + " " + p.state_name(r.b) + " -> " +
           p.state_name(r.a_next) + " " + p.state_name(r.b_next) + "\n";
  }
  return out;
}

GameMatrix parse_matrix(std::string_view text) {
  std::vector<std::string> states;
  std::vector<std::vector<Rat>> rows;
  Rat delta(0);
  for (const auto& [line, content] : logical_lines(text)) {
    if (content.rfind("states:", 0) == 0) {
      if (!states.empty()) throw ParseError(line, "duplicate states line");
      states = split_ws(content.substr(7));
      if (states.empty()) throw ParseError(line, "no states listed");
      continue;
    }
    if (content.rfind("delta:", 0) == 0) {
      auto toks = split_ws(content.substr(6));
      if (toks.size() != 1) throw ParseError(line, "expected one threshold");
      try {
        delta = parse_rational(toks[0]);
      } catch (const std::exception& e) {
        throw ParseError(line, e.what());
      }
      continue;
    }
    if (states.empty())
      throw ParseError(line, "states line must come before matrix rows");
    std::vector<Rat> row;
    for (const std::string& tok : split_ws(content)) {
      try {
        row.push_back(parse_rational(tok));
      } catch (const std::exception& e) {
        throw ParseError(line, e.what());
      }
    }
    if (row.size() != states.size())
      throw ParseError(line, "row has " + std::to_string(row.size()) +
                                 " entries, expected " +
                                 std::to_string(states.size()));
    rows.push_back(std::move(row));
  }
  if (states.empty()) throw ParseError(1, "missing states line");
  if (rows.size() != states.size())
    throw ParseError(1, "matrix has " + std::to_string(rows.size()) +
                            " rows, expected " +
                            std::to_string(states.size()));
  std::vector<Rat> entries;
  for (auto& row : rows)
    for (Rat& r : row) entries.push_back(r - delta);
  try {
    return GameMatrix(std::move(states), std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
}

std::string format_matrix(const GameMatrix& m) {
  std::string out = "states:";
  for (const auto& s : m.states) out += " " + s;
  out += "\n";
  for (int r = 0; r < m.dim(); ++r) {
    for (int c = 0; c < m.dim(); ++c)
      out += (c ? " " : "") + format_rational(m.at(r, c));
    out += "\n";
  }
  return out;
}

Rat parse_rational(const std::string& token) {
  auto parse_int = [](const std::string& s) {
    if (s.empty() ||
        (!std::isdigit(static_cast<unsigned char>(s[0])) && s[0] != '-') ||
        s == "-")
      throw std::invalid_argument("bad integer '" + s + "'");
    for (std::size_t i = 1; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("bad integer '" + s + "'");
    try {
      return std::stoll(s);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("integer '" + s + "' is out of range");
    }
  };
  auto slash = token.find('/');
  if (slash == std::string::npos) return Rat(parse_int(token));
  long long num = parse_int(token.substr(0, slash));
  long long den = parse_int(token.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + token + "'");
  return Rat(num, den);
}

std::string format_rational(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

InputMultiset parse_multiset(std::string_view text, const Protocol& p) {
  InputMultiset x;
  x.counts.assign(p.num_symbols(), 0);
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  for (const std::string& tok : split_ws(s)) {
    auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw ParseError(1, "expected 'symbol:count' in multiset");
    std::string name = tok.substr(0, colon);
    int sym = p.symbol_index(name);
    if (sym < 0) throw ParseError(1, "unknown input symbol '" + name + "'");
    int count;
    try {
      count = std::stoi(tok.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParseError(1, "bad count in '" + tok + "'");
    }
    if (count < 0) throw ParseError(1, "negative count in '" + tok + "'");
    x.counts[sym] += count;
  }
  return x;
}

std::string format_multiset(const InputMultiset& x, const Protocol& p) {
  std::string out;
  for (int s = 0; s < p.num_symbols(); ++s) {
    if (x.counts[s] == 0) continue;
    out += (out.empty() ? "" : ",") + p.symbol_name(s) + ":" +
           std::to_string(x.counts[s]);
  }
  return out.empty() ? "empty" : out;
}

std::string format_config(const Config& c, const Protocol& p) {
  std::string out;
  for (int q = 0; q < p.num_states(); ++q) {
    if (c.counts[q] == 0) continue;
    out += (out.empty() ? "" : ",") + p.state_name(q) + ":" +
           std::to_string(c.counts[q]);
  }
  return out.empty() ? "empty" : out;
}

InteractionGraph parse_graph(std::string_view text) {
  InteractionGraph g;
  int max_vertex = -1;
  for (const auto& [line, content] : logical_lines(text)) {
    auto toks = split_ws(content);
    if (toks.size() != 2)
      throw ParseError(line, "expected one 'u v' edge per line");
    int u, v;
    try {
      u = std::stoi(toks[0]);
      v = std::stoi(toks[1]);
    } catch (const std::exception&) {
      throw ParseError(line, "bad vertex index");
    }
    if (u < 0 || v < 0) throw ParseError(line, "vertex indices must be >= 0");
    if (u == v) throw ParseError(line, "self-loops are not allowed");
    g.edges.push_back({u, v});
    max_vertex = std::max({max_vertex, u, v});
  }
  g.vertices = max_vertex + 1;
  g.vertex_state.assign(g.vertices, 0);
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace popproto
