#ifndef COMMACT_FORMULA_HPP
#define COMMACT_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace commact {

enum class Kind : std::uint8_t { Var, Zero, One, Imp, Dot, Vee, Wedge, Star };

// Interned node. Structurally equal formulas share one node, so handle
// equality is pointer equality. Nodes live for the whole process.
struct FormulaNode {
  Kind kind;
  std::string name;  // Var only
  const FormulaNode* lhs = nullptr;  // binary lhs, or Star body
  const FormulaNode* rhs = nullptr;
  std::uint32_t id = 0;  // creation order; children always have smaller ids
  std::uint32_t complexity = 1;
  bool has_star = false;
  std::string text;
};

class Formula {
 public:
  static Formula var(std::string_view name);
  static Formula zero();
  static Formula one();
  static Formula imp(Formula lhs, Formula rhs);
  static Formula dot(Formula lhs, Formula rhs);
  static Formula vee(Formula lhs, Formula rhs);
  static Formula wedge(Formula lhs, Formula rhs);
  static Formula star(Formula body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_binary() const;
  bool is_atomic() const { return kind() == Kind::Var || kind() == Kind::Zero || kind() == Kind::One; }

  const std::string& name() const { return node_->name; }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  Formula body() const { return Formula(node_->lhs); }

  std::uint32_t id() const { return node_->id; }
  // Number of subformula occurrences, the formula itself included.
  std::uint32_t complexity() const { return node_->complexity; }
  bool has_star() const { return node_->has_star; }
  const std::string& str() const { return node_->text; }
  const FormulaNode* node() const { return node_; }

  friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
  friend bool operator!=(Formula a, Formula b) { return a.node_ != b.node_; }

  static Formula from_node(const FormulaNode* n) { return Formula(n); }

 private:
  explicit Formula(const FormulaNode* n) : node_(n) {}
  const FormulaNode* node_;
};

// Total syntactic order used for canonical multisets: lexicographic on printed form.
struct FormulaTextLess {
  bool operator()(Formula a, Formula b) const {
    return a != b && a.str() < b.str();
  }
};

struct FormulaIdLess {
  bool operator()(Formula a, Formula b) const { return a.id() < b.id(); }
};

std::ostream& operator<<(std::ostream& os, Formula f);

// Right-associated k-fold product, f^0 = 1.
Formula power(Formula f, unsigned k);
// Right-associated folds; the lists must be nonempty.
Formula fold_vee(const std::vector<Formula>& items);
Formula fold_wedge(const std::vector<Formula>& items);
Formula fold_dot(const std::vector<Formula>& items);

bool is_valid_var_name(std::string_view name);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

Formula parse_formula(std::string_view text);

}  // namespace commact

template <>
struct std::hash<commact::Formula> {
  std::size_t operator()(commact::Formula f) const noexcept {
    return std::hash<const void*>()(f.node());
  }
};

#endif  // COMMACT_FORMULA_HPP
