#include "commact/proof_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace commact {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

void write_node(std::ostringstream& os, const Derivation& d, int depth) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  os << pad;
  if (d.rule() == Rule::Back) {
    os << "(back " << d.target() << ")";
    return;
  }
  int inner = depth;
  if (!d.label().empty()) {
    os << "(label " << d.label() << "\n" << pad << "  ";
    inner = depth + 1;
  }
  os << "(node " << rule_name(d.rule()) << " " << quote(d.conclusion().str());
  if (d.rule() == Rule::Cut) os << " (cutf " << quote(d.cut_formula()->str()) << ")";
  for (const auto& p : d.premises()) {
    os << "\n";
    write_node(os, p, inner + 1);
  }
  os << ")";
  if (!d.label().empty()) os << ")";
}

struct Token {
  enum Kind { Open, Close, Atom, String, End } kind;
  std::string text;
  std::size_t pos;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) { tokenize(); }

  ProofFile file() {
    expect(Token::Open);
    expect_atom("proof");
    Token name = expect(Token::Atom);
    auto calculus = calculus_from_name(name.text);
    if (!calculus) fail("unknown calculus '" + name.text + "'", name.pos);
    Derivation root = node();
    expect(Token::Close);
    if (peek().kind != Token::End) fail("trailing input after proof", peek().pos);
    return {*calculus, root};
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t pos) {
    throw ProofSyntaxError("proof file: " + msg + " at offset " + std::to_string(pos));
  }

  void tokenize() {
    std::size_t i = 0;
    while (true) {
      while (i < text_.size()) {
        char ch = text_[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
          ++i;
        } else if (ch == ';') {
          while (i < text_.size() && text_[i] != '\n') ++i;
        } else {
          break;
        }
      }
      std::size_t start = i;
      if (i >= text_.size()) {
        tokens_.push_back({Token::End, "", start});
        return;
      }
      char ch = text_[i];
      if (ch == '(' || ch == ')') {
        tokens_.push_back({ch == '(' ? Token::Open : Token::Close, std::string(1, ch), start});
        ++i;
      } else if (ch == '"') {
        std::string s;
        ++i;
        while (true) {
          if (i >= text_.size()) fail("unterminated string", start);
          char c = text_[i++];
          if (c == '"') break;
          if (c == '\\') {
            if (i >= text_.size()) fail("unterminated string", start);
            c = text_[i++];
          }
          s += c;
        }
        tokens_.push_back({Token::String, s, start});
      } else {
        std::string atom;
        while (i < text_.size()) {
          char c = text_[i];
          if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"') break;
          atom += c;
          ++i;
        }
        tokens_.push_back({Token::Atom, atom, start});
      }
    }
  }

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(at_ + ahead, tokens_.size() - 1)];
  }

  Token expect(Token::Kind kind) {
    const Token& t = peek();
    if (t.kind != kind) {
      static const char* names[] = {"'('", "')'", "name", "string", "end of input"};
      fail(std::string("expected ") + names[kind], t.pos);
    }
    ++at_;
    return t;
  }

  void expect_atom(const std::string& word) {
    Token t = expect(Token::Atom);
    if (t.text != word) fail("expected '" + word + "'", t.pos);
  }

  Sequent sequent_at(const Token& t) {
    try {
      return parse_sequent(t.text);
    } catch (const ParseError& e) {
      fail(std::string("bad sequent: ") + e.what(), t.pos);
    }
  }

  Derivation node() {
    expect(Token::Open);
    Token head = expect(Token::Atom);
    if (head.text == "back") {
      Token target = expect(Token::Atom);
      expect(Token::Close);
      auto it = labels_.find(target.text);
      if (it == labels_.end()) fail("backlink to unknown label '" + target.text + "'", target.pos);
      return Derivation::backlink(target.text, it->second);
    }
    if (head.text == "label") {
      Token id = expect(Token::Atom);
      if (labels_.count(id.text)) fail("duplicate label '" + id.text + "'", id.pos);
      pending_label_ = id.text;
      Derivation inner = node();
      expect(Token::Close);
      return inner.with_label(id.text);
    }
    if (head.text != "node") fail("expected node, label or back", head.pos);
    Token name = expect(Token::Atom);
    auto rule = rule_from_name(name.text);
    if (!rule) fail("unknown rule '" + name.text + "'", name.pos);
    Token seq = expect(Token::String);
    Sequent conclusion = sequent_at(seq);
    if (!pending_label_.empty()) {
      labels_.emplace(pending_label_, conclusion);
      pending_label_.clear();
    }
    std::optional<Formula> cutf;
    std::vector<Derivation> premises;
    while (peek().kind == Token::Open) {
      if (peek(1).kind == Token::Atom && peek(1).text == "cutf") {
        at_ += 2;
        Token f = expect(Token::String);
        try {
          cutf = parse_formula(f.text);
        } catch (const ParseError& e) {
          fail(std::string("bad cut formula: ") + e.what(), f.pos);
        }
        expect(Token::Close);
        continue;
      }
      premises.push_back(node());
    }
    expect(Token::Close);
    if (*rule == Rule::Cut && !cutf && premises.size() == 2) cutf = premises[0].conclusion().succedent();
    return Derivation::make(*rule, conclusion, std::move(premises), cutf);
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t at_ = 0;
  std::map<std::string, Sequent> labels_;
  std::string pending_label_;
};

}  // namespace

std::string write_proof(const Derivation& d, Calculus c) {
  std::ostringstream os;
  os << "(proof " << calculus_name(c) << "\n";
  write_node(os, d, 1);
  os << ")\n";
  return os.str();
}

ProofFile read_proof(std::string_view text) { return Reader(text).file(); }

}  // namespace commact
