#include <cctype>
#include <optional>

#include "commact/formula.hpp"
#include "commact/sequent.hpp"

namespace commact {

namespace {

enum class Tok { Ident, Number, Imp, Vee, Wedge, Dot, Caret, Star, LParen, RParen, Comma, Turnstile, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (ch == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    auto two = [&](const char* t) { return s.compare(i, 2, t) == 0; };
    if (two("-o")) {
      out.push_back({Tok::Imp, "-o", start});
      i += 2;
    } else if (two("\\/")) {
      out.push_back({Tok::Vee, "\\/", start});
      i += 2;
    } else if (two("/\\")) {
      out.push_back({Tok::Wedge, "/\\", start});
      i += 2;
    } else if (two("|-")) {
      out.push_back({Tok::Turnstile, "|-", start});
      i += 2;
    } else if (ch == '.') {
      out.push_back({Tok::Dot, ".", start});
      ++i;
    } else if (ch == '^') {
      out.push_back({Tok::Caret, "^", start});
      ++i;
    } else if (ch == '*') {
      out.push_back({Tok::Star, "*", start});
      ++i;
    } else if (ch == '(') {
      out.push_back({Tok::LParen, "(", start});
      ++i;
    } else if (ch == ')') {
      out.push_back({Tok::RParen, ")", start});
      ++i;
    } else if (ch == ',') {
      out.push_back({Tok::Comma, ",", start});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-') {
      // '-' only reaches here when not followed by 'o'; accept it as a sign so
      // that negative exponents get a specific diagnostic.
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (ch == '-' && i == start + 1) throw ParseError("unknown token '-'", start);
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string id(s.substr(start, i - start));
      if (!is_valid_var_name(id)) throw ParseError("unknown token '" + id + "'", start);
      out.push_back({Tok::Ident, std::move(id), start});
    } else {
      throw ParseError(std::string("unknown token '") + ch + "'", start);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// A postfix application: either ^* or ^k.
struct Postfix {
  bool star;
  unsigned power;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula formula() { return implication(); }

  const Token& peek() const { return toks_[pos_]; }
  std::size_t index() const { return pos_; }
  void reset(std::size_t index) { pos_ = index; }
  bool at(Tok k) const { return peek().kind == k; }

  void expect(Tok k, const char* what) {
    if (!at(k)) {
      if (at(Tok::End)) throw ParseError(std::string("expected ") + what + ", found end of input", peek().pos);
      throw ParseError(std::string("expected ") + what + ", found '" + peek().text + "'", peek().pos);
    }
    ++pos_;
  }

  // Primary followed by its postfix operators, returned unapplied.
  Formula postfix_chain(std::vector<Postfix>& ops) {
    Formula base = primary();
    while (at(Tok::Caret)) {
      std::size_t caret = peek().pos;
      ++pos_;
      if (at(Tok::Star)) {
        ++pos_;
        ops.push_back({true, 0});
      } else if (at(Tok::Number)) {
        const std::string& t = peek().text;
        if (t[0] == '-') throw ParseError("negative exponent", peek().pos);
        unsigned long k = std::stoul(t);
        ++pos_;
        ops.push_back({false, static_cast<unsigned>(k)});
      } else {
        throw ParseError("expected '*' or an exponent after '^'", caret + 1);
      }
    }
    return base;
  }

  static Formula apply(Formula f, const std::vector<Postfix>& ops, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      f = ops[i].star ? Formula::star(f) : power(f, ops[i].power);
    }
    return f;
  }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    if (at(Tok::Imp)) {
      ++pos_;
      Formula rhs = implication();
      return Formula::imp(lhs, rhs);
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (at(Tok::Vee)) {
      ++pos_;
      acc = Formula::vee(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = product();
    while (at(Tok::Wedge)) {
      ++pos_;
      acc = Formula::wedge(acc, product());
    }
    return acc;
  }

  Formula product() {
    Formula acc = postfix();
    while (at(Tok::Dot)) {
      ++pos_;
      acc = Formula::dot(acc, postfix());
    }
    return acc;
  }

  Formula postfix() {
    std::vector<Postfix> ops;
    Formula base = postfix_chain(ops);
    return apply(base, ops, ops.size());
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        ++pos_;
        return Formula::var(t.text);
      case Tok::Number:
        if (t.text == "0") {
          ++pos_;
          return Formula::zero();
        }
        if (t.text == "1") {
          ++pos_;
          return Formula::one();
        }
        throw ParseError("unknown token '" + t.text + "'", t.pos);
      case Tok::LParen: {
        ++pos_;
        Formula inner = implication();
        if (!at(Tok::RParen)) {
          throw ParseError("unbalanced parentheses: expected ')'", peek().pos);
        }
        ++pos_;
        return inner;
      }
      case Tok::RParen:
        throw ParseError("unbalanced parentheses: unexpected ')'", t.pos);
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void expect_end(Parser& p) {
  if (p.at(Tok::RParen)) throw ParseError("unbalanced parentheses: unexpected ')'", p.peek().pos);
  if (!p.at(Tok::End)) throw ParseError("unexpected '" + p.peek().text + "'", p.peek().pos);
}

bool at_item_end(const Parser& p) {
  return p.at(Tok::Comma) || p.at(Tok::Turnstile);
}

// An antecedent item F^k (power binding the whole item) stands for k copies of F.
void antecedent_item(Parser& p, std::vector<Formula>& out) {
  std::size_t start = p.index();
  std::vector<Postfix> ops;
  Formula base = p.postfix_chain(ops);
  if (at_item_end(p) && !ops.empty() && !ops.back().star) {
    Formula f = Parser::apply(base, ops, ops.size() - 1);
    for (unsigned i = 0; i < ops.back().power; ++i) out.push_back(f);
    return;
  }
  p.reset(start);
  out.push_back(p.formula());
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(tokenize(text));
  Formula f = p.formula();
  expect_end(p);
  return f;
}

Sequent parse_sequent(std::string_view text) {
  Parser p(tokenize(text));
  std::vector<Formula> ante;
  if (!p.at(Tok::Turnstile)) {
    while (true) {
      antecedent_item(p, ante);
      if (p.at(Tok::Comma)) {
        p.expect(Tok::Comma, "','");
        continue;
      }
      if (p.at(Tok::RParen)) throw ParseError("unbalanced parentheses: unexpected ')'", p.peek().pos);
      break;
    }
  }
  p.expect(Tok::Turnstile, "'|-'");
  Formula succ = p.formula();
  expect_end(p);
  return Sequent(std::move(ante), succ);
}

}  // namespace commact
