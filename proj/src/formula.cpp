#include "commact/formula.hpp"

#include <deque>
#include <mutex>
#include <ostream>
#include <unordered_map>

namespace commact {

namespace {

struct NodeKey {
  Kind kind;
  const FormulaNode* lhs;
  const FormulaNode* rhs;
  std::string name;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::size_t h = std::hash<std::string>()(k.name);
    h ^= static_cast<std::size_t>(k.kind) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<const void*>()(k.lhs) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<const void*>()(k.rhs) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

const char* op_text(Kind k) {
  switch (k) {
    case Kind::Imp: return " -o ";
    case Kind::Dot: return " . ";
    case Kind::Vee: return " \\/ ";
    case Kind::Wedge: return " /\\ ";
    default: return "";
  }
}

// Atoms and stars print bare inside other formulas; binary children are
// always parenthesized, which keeps the printed form unambiguous.
std::string operand_text(const FormulaNode* n) {
  switch (n->kind) {
    case Kind::Imp:
    case Kind::Dot:
    case Kind::Vee:
    case Kind::Wedge:
      return "(" + n->text + ")";
    default:
      return n->text;
  }
}

class FormulaTable {
 public:
  static FormulaTable& instance() {
    static FormulaTable table;
    return table;
  }

  const FormulaNode* intern(Kind kind, const FormulaNode* lhs, const FormulaNode* rhs,
                            std::string_view name) {
    NodeKey key{kind, lhs, rhs, std::string(name)};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;

    FormulaNode& n = nodes_.emplace_back();
    n.kind = kind;
    n.name = key.name;
    n.lhs = lhs;
    n.rhs = rhs;
    n.id = static_cast<std::uint32_t>(nodes_.size() - 1);
    switch (kind) {
      case Kind::Var: n.text = n.name; break;
      case Kind::Zero: n.text = "0"; break;
      case Kind::One: n.text = "1"; break;
      case Kind::Star:
        n.complexity = lhs->complexity + 1;
        n.has_star = true;
        n.text = operand_text(lhs) + "^*";
        break;
      default:
        n.complexity = lhs->complexity + rhs->complexity + 1;
        n.has_star = lhs->has_star || rhs->has_star;
        n.text = operand_text(lhs) + op_text(kind) + operand_text(rhs);
        break;
    }
    index_.emplace(std::move(key), &n);
    return &n;
  }

 private:
  std::mutex mutex_;
  std::deque<FormulaNode> nodes_;
  std::unordered_map<NodeKey, const FormulaNode*, NodeKeyHash> index_;
};

}  // namespace

bool is_valid_var_name(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  for (char ch : name) {
    bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
              ch == '_';
    if (!ok) return false;
  }
  return true;
}

Formula Formula::var(std::string_view name) {
  if (!is_valid_var_name(name)) {
    throw std::invalid_argument("invalid variable name '" + std::string(name) + "'");
  }
  return Formula(FormulaTable::instance().intern(Kind::Var, nullptr, nullptr, name));
}

Formula Formula::zero() {
  static const FormulaNode* n = FormulaTable::instance().intern(Kind::Zero, nullptr, nullptr, "");
  return Formula(n);
}

Formula Formula::one() {
  static const FormulaNode* n = FormulaTable::instance().intern(Kind::One, nullptr, nullptr, "");
  return Formula(n);
}

Formula Formula::imp(Formula lhs, Formula rhs) {
  return Formula(FormulaTable::instance().intern(Kind::Imp, lhs.node_, rhs.node_, ""));
}

Formula Formula::dot(Formula lhs, Formula rhs) {
  return Formula(FormulaTable::instance().intern(Kind::Dot, lhs.node_, rhs.node_, ""));
}

Formula Formula::vee(Formula lhs, Formula rhs) {
  return Formula(FormulaTable::instance().intern(Kind::Vee, lhs.node_, rhs.node_, ""));
}

Formula Formula::wedge(Formula lhs, Formula rhs) {
  return Formula(FormulaTable::instance().intern(Kind::Wedge, lhs.node_, rhs.node_, ""));
}

Formula Formula::star(Formula body) {
  return Formula(FormulaTable::instance().intern(Kind::Star, body.node_, nullptr, ""));
}

bool Formula::is_binary() const {
  switch (kind()) {
    case Kind::Imp:
    case Kind::Dot:
    case Kind::Vee:
    case Kind::Wedge:
      return true;
    default:
      return false;
  }
}

std::ostream& operator<<(std::ostream& os, Formula f) { return os << f.str(); }

Formula power(Formula f, unsigned k) {
  if (k == 0) return Formula::one();
  Formula acc = f;
  for (unsigned i = 1; i < k; ++i) acc = Formula::dot(f, acc);
  return acc;
}

namespace {

template <typename Make>
Formula fold_right(const std::vector<Formula>& items, Make make) {
  if (items.empty()) throw std::invalid_argument("cannot fold an empty formula list");
  Formula acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) acc = make(items[i], acc);
  return acc;
}

}  // namespace

Formula fold_vee(const std::vector<Formula>& items) { return fold_right(items, Formula::vee); }
Formula fold_wedge(const std::vector<Formula>& items) { return fold_right(items, Formula::wedge); }
Formula fold_dot(const std::vector<Formula>& items) { return fold_right(items, Formula::dot); }

}  // namespace commact
