#ifndef POPPROTO_PREDICATE_HPP
#define POPPROTO_PREDICATE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "popproto/protocol.hpp"

namespace popproto {

enum class Rel { Ge, Eq, Le };

// Boolean predicate over input multisets: linear threshold and modular
// atoms combined with not/and/or. Coefficient vectors are indexed by
// symbol, same order as the alphabet the predicate was built against.
struct Predicate {
  enum class Kind { Threshold, Mod, Not, And, Or };

  Kind kind = Kind::Threshold;
  // Threshold: sum(coeffs . x) rel constant.
  // Mod: sum(coeffs . x) = remainder  (mod modulus), modulus >= 2.
  std::vector<long long> coeffs;
  long long constant = 0;
  Rel rel = Rel::Ge;
  long long remainder = 0;
  long long modulus = 0;
  std::vector<Predicate> children;

  bool eval(const InputMultiset& x) const;

  static Predicate threshold(std::vector<long long> coeffs, Rel rel,
                             long long constant);
  static Predicate mod(std::vector<long long> coeffs, long long modulus,
                       long long remainder);
  static Predicate negation(Predicate child);
  static Predicate conjunction(std::vector<Predicate> children);
  static Predicate disjunction(std::vector<Predicate> children);
};

// Expression grammar, with `count(name)` reading a symbol's multiplicity:
//
//   count(sigma) >= 2
//   count(sigma) >= count(tau)
//   count(one) mod 2 == 1
//   not (count(a) == 0 or 2*count(b) <= count(a) - 1)
//
// Comparison operators: >= <= == = > < !=. Strict forms are rewritten to
// the inclusive ones (counts are integers). Throws ParseError.
Predicate parse_predicate(std::string_view text,
                          const std::vector<std::string>& symbols);

}  // namespace popproto

#endif
