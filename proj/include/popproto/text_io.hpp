#ifndef POPPROTO_TEXT_IO_HPP
#define POPPROTO_TEXT_IO_HPP

#include <string>
#include <string_view>

#include "popproto/checker.hpp"
#include "popproto/game.hpp"
#include "popproto/protocol.hpp"

namespace popproto {

// Protocol text format, one declaration per line, '#' starts a comment:
//
//   states: q0 q1 q2
//   inputs: sigma->q1 zero->q0
//   outputs: q0=0 q1=0 q2=1
//   rule: q0 q2 -> q2 q2
//
// Identity rules may be listed or omitted; both parse to the same value.
Protocol parse_protocol(std::string_view text);
std::string format_protocol(const Protocol& p);

// Matrix text format: a "states:" header, one row of rationals per line,
// and an optional "delta: <rational>" threshold subtracted from every
// entry on load.
GameMatrix parse_matrix(std::string_view text);
std::string format_matrix(const GameMatrix& m);

// "sigma:3,zero:2"
InputMultiset parse_multiset(std::string_view text, const Protocol& p);
std::string format_multiset(const InputMultiset& x, const Protocol& p);
std::string format_config(const Config& c, const Protocol& p);

// One "u v" edge per line; vertex count is max index + 1.
InteractionGraph parse_graph(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace popproto

#endif
