#ifndef POPPROTO_RATIONAL_HPP
#define POPPROTO_RATIONAL_HPP

#include <boost/rational.hpp>
#include <string>

namespace popproto {

// Exact arithmetic for payoff entries; desk-scale values, so 64-bit is plenty.
using Rat = boost::rational<long long>;

// Accepts "-3", "7", "1/2", "-5/3".
Rat parse_rational(const std::string& token);

// Inverse of parse_rational: integers render without a denominator.
std::string format_rational(const Rat& r);

}  // namespace popproto

#endif
