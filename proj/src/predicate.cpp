#include "popproto/predicate.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

#include "popproto/errors.hpp"

namespace popproto {

namespace {

long long math_mod(long long v, long long m) {
  long long r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

bool Predicate::eval(const InputMultiset& x) const {
  switch (kind) {
    case Kind::Threshold: {
      long long sum = 0;
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        sum += coeffs[i] * x.counts[i];
      if (rel == Rel::Ge) return sum >= constant;
      if (rel == Rel::Le) return sum <= constant;
      return sum == constant;
    }
    case Kind::Mod: {
      long long sum = 0;
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        sum += coeffs[i] * x.counts[i];
      return math_mod(sum, modulus) == remainder;
    }
    case Kind::Not:
      return !children[0].eval(x);
    case Kind::And:
      for (const auto& c : children)
        if (!c.eval(x)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : children)
        if (c.eval(x)) return true;
      return false;
  }
  return false;
}

Predicate Predicate::threshold(std::vector<long long> coeffs, Rel rel,
                               long long constant) {
  Predicate p;
  p.kind = Kind::Threshold;
  p.coeffs = std::move(coeffs);
  p.rel = rel;
  p.constant = constant;
  return p;
}

Predicate Predicate::mod(std::vector<long long> coeffs, long long modulus,
                         long long remainder) {
  if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
  Predicate p;
  p.kind = Kind::Mod;
  p.coeffs = std::move(coeffs);
  p.modulus = modulus;
  p.remainder = math_mod(remainder, modulus);
  return p;
}

Predicate Predicate::negation(Predicate child) {
  Predicate p;
  p.kind = Kind::Not;
  p.children.push_back(std::move(child));
  return p;
}

Predicate Predicate::conjunction(std::vector<Predicate> children) {
  Predicate p;
  p.kind = Kind::And;
  p.children = std::move(children);
  return p;
}

Predicate Predicate::disjunction(std::vector<Predicate> children) {
  Predicate p;
  p.kind = Kind::Or;
  p.children = std::move(children);
  return p;
}

namespace {

struct Token {
  enum class Type { Word, Int, Symbol, End };
  Type type = Type::End;
  std::string text;
  long long value = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(1, msg + " near '" +
                            (tok_.type == Token::Type::End ? "<end>"
                                                           : tok_.text) +
                            "'");
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(
                                     src_[pos_])))
      ++pos_;
    tok_ = Token{};
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      // A digit run followed by a name character is a name (symbols may be
      // called "0" or "2fast"); bare digit runs are integers.
      if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(
                                     src_[pos_])) ||
                                 src_[pos_] == '_')) {
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_'))
          ++pos_;
        tok_ = {Token::Type::Word, std::string(src_.substr(start, pos_ - start)),
                0};
        return;
      }
      tok_.type = Token::Type::Int;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      try {
        tok_.value = std::stoll(tok_.text);
      } catch (const std::out_of_range&) {
        throw ParseError(1, "integer literal '" + tok_.text + "' is too large");
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        ++pos_;
      tok_ = {Token::Type::Word, std::string(src_.substr(start, pos_ - start)),
              0};
      return;
    }
    static const char* two_char[] = {">=", "<=", "==", "!="};
    for (const char* op : two_char) {
      if (src_.substr(pos_, 2) == op) {
        tok_ = {Token::Type::Symbol, std::string(op), 0};
        pos_ += 2;
        return;
      }
    }
    if (std::string("()+-*<>=").find(c) != std::string::npos) {
      tok_ = {Token::Type::Symbol, std::string(1, c), 0};
      ++pos_;
      return;
    }
    throw ParseError(1, std::string("unexpected character '") + c +
                            "' in predicate");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

// Linear form sum(coeffs . counts) + constant.
struct LinExpr {
  std::vector<long long> coeffs;
  long long constant = 0;
};

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& symbols)
      : lex_(src), symbols_(symbols) {}

  Predicate parse() {
    Predicate p = parse_or();
    if (lex_.peek().type != Token::Type::End)
      lex_.fail("trailing input after predicate");
    return p;
  }

 private:
  bool eat_word(const char* w) {
    if (lex_.peek().type == Token::Type::Word && lex_.peek().text == w) {
      lex_.take();
      return true;
    }
    return false;
  }
  bool eat_symbol(const char* s) {
    if (lex_.peek().type == Token::Type::Symbol && lex_.peek().text == s) {
      lex_.take();
      return true;
    }
    return false;
  }
  void expect_symbol(const char* s) {
    if (!eat_symbol(s)) lex_.fail(std::string("expected '") + s + "'");
  }

  Predicate parse_or() {
    std::vector<Predicate> parts;
    parts.push_back(parse_and());
    while (eat_word("or")) parts.push_back(parse_and());
    if (parts.size() == 1) return std::move(parts[0]);
    return Predicate::disjunction(std::move(parts));
  }

  Predicate parse_and() {
    std::vector<Predicate> parts;
    parts.push_back(parse_unary());
    while (eat_word("and")) parts.push_back(parse_unary());
    if (parts.size() == 1) return std::move(parts[0]);
    return Predicate::conjunction(std::move(parts));
  }

  Predicate parse_unary() {
    if (eat_word("not")) return Predicate::negation(parse_unary());
    if (eat_symbol("(")) {
      Predicate p = parse_or();
      expect_symbol(")");
      return p;
    }
    return parse_atom();
  }

  Predicate parse_atom() {
    LinExpr lhs = parse_sum();
    if (eat_word("mod")) {
      if (lex_.peek().type != Token::Type::Int)
        lex_.fail("expected a modulus");
      long long m = lex_.take().value;
      if (m < 2) throw ParseError(1, "modulus must be at least 2");
      expect_symbol("==");
      if (lex_.peek().type != Token::Type::Int)
        lex_.fail("expected a remainder");
      long long r = lex_.take().value;
      return Predicate::mod(std::move(lhs.coeffs), m, r - lhs.constant);
    }
    std::string op;
    if (lex_.peek().type == Token::Type::Symbol) op = lex_.peek().text;
    if (op != ">=" && op != "<=" && op != "==" && op != "=" && op != ">" &&
        op != "<" && op != "!=")
      lex_.fail("expected a comparison operator");
    lex_.take();
    LinExpr rhs = parse_sum();
    for (std::size_t i = 0; i < lhs.coeffs.size(); ++i)
      lhs.coeffs[i] -= rhs.coeffs[i];
    long long k = rhs.constant - lhs.constant;
    if (op == ">=") return Predicate::threshold(std::move(lhs.coeffs), Rel::Ge, k);
    if (op == "<=") return Predicate::threshold(std::move(lhs.coeffs), Rel::Le, k);
    if (op == ">") return Predicate::threshold(std::move(lhs.coeffs), Rel::Ge, k + 1);
    if (op == "<") return Predicate::threshold(std::move(lhs.coeffs), Rel::Le, k - 1);
    Predicate eq = Predicate::threshold(std::move(lhs.coeffs), Rel::Eq, k);
    if (op == "!=") return Predicate::negation(std::move(eq));
    return eq;
  }

  LinExpr parse_sum() {
    LinExpr acc = parse_term(1);
    for (;;) {
      if (eat_symbol("+")) {
        add(acc, parse_term(1));
      } else if (eat_symbol("-")) {
        add(acc, parse_term(-1));
      } else {
        return acc;
      }
    }
  }

  LinExpr parse_term(long long sign) {
    while (eat_symbol("-")) sign = -sign;
    LinExpr e;
    e.coeffs.assign(symbols_.size(), 0);
    if (lex_.peek().type == Token::Type::Int) {
      long long v = lex_.take().value;
      if (eat_symbol("*")) {
        int s = parse_count();
        e.coeffs[s] = sign * v;
      } else {
        e.constant = sign * v;
      }
      return e;
    }
    int s = parse_count();
    e.coeffs[s] = sign;
    return e;
  }

  int parse_count() {
    if (!eat_word("count")) lex_.fail("expected count(...) or an integer");
    expect_symbol("(");
    const Token& t = lex_.peek();
    if (t.type != Token::Type::Word && t.type != Token::Type::Int)
      lex_.fail("expected a symbol name");
    std::string name = lex_.take().text;
    expect_symbol(")");
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i] == name) return static_cast<int>(i);
    throw ParseError(1, "unknown input symbol '" + name + "'");
  }

  void add(LinExpr& acc, const LinExpr& e) {
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
      acc.coeffs[i] += e.coeffs[i];
    acc.constant += e.constant;
  }

  Lexer lex_;
  const std::vector<std::string>& symbols_;
};

}  // namespace

Predicate parse_predicate(std::string_view text,
                          const std::vector<std::string>& symbols) {
  return Parser(text, symbols).parse();
}

}  // namespace popproto
