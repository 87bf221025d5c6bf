#include "trafficstl/stl/parser.hpp"

#include "trafficstl/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace trafficstl::stl {

namespace {

enum class Tok {
  Ident,
  Number,
  Cmp,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Arrow,
  KwNot,
  KwAnd,
  KwOr,
  KwAlways,
  KwEventually,
  KwUntil,
  KwEnd,
  KwUnless,
  Eof,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;  // 1-based
  double number = 0.0;
  Comparison cmp = Comparison::Greater;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::Eof) return "end of input";
  return fmt::format("'{}'", t.text);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto push = [&](Tok k, std::size_t len) {
      out.push_back({k, s.substr(start, len), start + 1});
      i = start + len;
    };

    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      const auto word = s.substr(i, j - i);
      Tok k = Tok::Ident;
      if (word == "not") k = Tok::KwNot;
      else if (word == "and") k = Tok::KwAnd;
      else if (word == "or") k = Tok::KwOr;
      else if (word == "always") k = Tok::KwAlways;
      else if (word == "eventually") k = Tok::KwEventually;
      else if (word == "until") k = Tok::KwUntil;
      else if (word == "end") k = Tok::KwEnd;
      else if (word == "unless") k = Tok::KwUnless;
      push(k, j - i);
      continue;
    }

    const bool signed_number = (c == '-' || c == '+') && i + 1 < s.size() &&
                               (digit(s[i + 1]) || s[i + 1] == '.');
    if (digit(c) || c == '.' || signed_number) {
      std::size_t j = i + (signed_number ? 1 : 0);
      while (j < s.size() && (digit(s[j]) || s[j] == '.')) ++j;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
        if (k < s.size() && digit(s[k])) {
          while (k < s.size() && digit(s[k])) ++k;
          j = k;
        }
      }
      // from_chars rejects a leading '+'.
      const std::size_t body = (c == '+') ? i + 1 : i;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data() + body, s.data() + j, v);
      if (ec != std::errc{} || ptr != s.data() + j || !std::isfinite(v))
        throw ParseError(fmt::format("malformed number '{}'", s.substr(i, j - i)), start + 1);
      Token t{Tok::Number, s.substr(i, j - i), start + 1, v};
      out.push_back(t);
      i = j;
      continue;
    }

    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '[': push(Tok::LBracket, 1); continue;
      case ']': push(Tok::RBracket, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '=':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          push(Tok::Arrow, 2);
          continue;
        }
        break;
      case '<':
      case '>': {
        const bool eq = i + 1 < s.size() && s[i + 1] == '=';
        Token t{Tok::Cmp, s.substr(i, eq ? 2 : 1), start + 1};
        t.cmp = c == '<' ? (eq ? Comparison::LessEqual : Comparison::Less)
                         : (eq ? Comparison::GreaterEqual : Comparison::Greater);
        out.push_back(t);
        i += eq ? 2 : 1;
        continue;
      }
      default: break;
    }
    throw ParseError(fmt::format("unexpected character '{}'", c), start + 1);
  }
  out.push_back({Tok::Eof, {}, s.size() + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::Eof)
      throw ParseError(fmt::format("unexpected {} after complete formula", describe(peek())),
                       peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(fmt::format("expected {}, found {}", what, describe(peek())), peek().pos);
    return take();
  }

  Formula formula() { return implication(); }

  Formula implication() {
    Formula lhs = disjunction_chain();
    if (accept(Tok::Arrow)) return implies(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction_chain() {
    Formula f = conjunction_chain();
    while (accept(Tok::KwOr)) f = disjunction(std::move(f), conjunction_chain());
    return f;
  }

  Formula conjunction_chain() {
    Formula f = unary();
    while (accept(Tok::KwAnd)) f = conjunction(std::move(f), unary());
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwNot:
        take();
        return negation(unary());
      case Tok::KwAlways: {
        take();
        Interval iv = optional_interval();
        return always(iv, unary());
      }
      case Tok::KwEventually: {
        take();
        Interval iv = optional_interval();
        return eventually(iv, unary());
      }
      case Tok::LParen: {
        take();
        Formula inner = formula();
        if (accept(Tok::KwUntil)) {
          Interval iv = optional_interval();
          Formula rhs = formula();
          expect(Tok::RParen, "')'");
          return until(iv, std::move(inner), std::move(rhs));
        }
        expect(Tok::RParen, "')' or 'until'");
        return inner;
      }
      case Tok::Ident: return atom_expr();
      default:
        throw ParseError(fmt::format("expected a formula, found {}", describe(t)), t.pos);
    }
  }

  Interval optional_interval() {
    if (peek().kind != Tok::LBracket) return Interval::to_end();
    const std::size_t open = take().pos;
    const Token& lo = expect(Tok::Number, "interval lower bound");
    expect(Tok::Comma, "','");
    Interval iv{lo.number, std::nullopt};
    if (!accept(Tok::KwEnd)) iv.hi = expect(Tok::Number, "interval upper bound or 'end'").number;
    expect(Tok::RBracket, "']'");
    if (iv.lo < 0.0 || (iv.hi && *iv.hi < iv.lo))
      throw ParseError(fmt::format("interval [{}, {}] must satisfy 0 <= a <= b", iv.lo,
                                   iv.hi ? fmt::format("{}", *iv.hi) : "end"),
                       open);
    return iv;
  }

  // ident cmp number
  Predicate comparison_expr(const char* role) {
    const Token& name = expect(Tok::Ident, role);
    const Token& cmp = peek();
    if (cmp.kind != Tok::Cmp)
      throw ParseError(fmt::format("expected a comparison after '{}', found {}", name.text,
                                   describe(cmp)),
                       cmp.pos);
    take();
    if (peek().kind != Tok::Number)
      throw ParseError(fmt::format("dangling comparison '{}': expected a number, found {}",
                                   cmp.text, describe(peek())),
                       cmp.pos);
    const Token& num = take();
    return Predicate{std::string(name.text), cmp.cmp, num.number, std::nullopt};
  }

  Formula atom_expr() {
    Predicate p = comparison_expr("channel name");
    if (accept(Tok::KwUnless)) {
      Predicate g = comparison_expr("guard channel name");
      p.mask = Guard{g.channel, g.comparison, g.threshold};
    }
    return atom(std::move(p));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) {
  bool blank = true;
  for (char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (blank) throw ParseError("empty formula", 1);
  return Parser(lex(text)).parse_all();
}

}  // namespace trafficstl::stl
