#ifndef COMMACT_DERIVATION_HPP
#define COMMACT_DERIVATION_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "commact/sequent.hpp"

namespace commact {

enum class Rule : std::uint8_t {
  Id,
  ZeroL,
  OneL,
  OneR,
  ImpL,
  ImpR,
  DotL,
  DotR,
  VeeL,
  VeeR1,
  VeeR2,
  WedgeL1,
  WedgeL2,
  WedgeR,
  StarRN,
  StarR0,
  StarRStep,
  StarL2,
  StarLInd,
  StarRInd,
  Cut,
  Back,  // backlink leaf of a circular proof
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

// Immutable proof tree. Subtrees are shared, never mutated.
class Derivation {
 public:
  static Derivation make(Rule rule, Sequent conclusion, std::vector<Derivation> premises = {},
                         std::optional<Formula> cut_formula = std::nullopt);
  static Derivation backlink(std::string target, Sequent conclusion);

  Derivation with_label(std::string label) const;

  Rule rule() const { return node_->rule; }
  const Sequent& conclusion() const { return node_->conclusion; }
  const std::vector<Derivation>& premises() const { return node_->premises; }
  const Derivation& premise(std::size_t i) const { return node_->premises.at(i); }
  const std::optional<Formula>& cut_formula() const { return node_->cut_formula; }
  const std::string& label() const { return node_->label; }
  const std::string& target() const { return node_->target; }

  std::size_t size() const;
  std::size_t height() const;
  bool uses(Rule r) const;

  const void* identity() const { return node_.get(); }

 private:
  struct Node {
    Rule rule;
    Sequent conclusion;
    std::vector<Derivation> premises;
    std::optional<Formula> cut_formula;
    std::string label;
    std::string target;
  };
  explicit Derivation(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Bottom-up constructors. Each computes the conclusion from its premises and
// throws std::invalid_argument when the premises do not fit the rule.
namespace build {

Derivation id(Formula f);
Derivation zero_l(std::vector<Formula> antecedent, Formula succedent);
Derivation one_r();
Derivation one_l(Derivation p);
// left: Pi |- A, right: Gamma, B |- C  ==>  Gamma, Pi, A -o B |- C
Derivation imp_l(Derivation left, Derivation right, Formula b);
// A, Pi |- B  ==>  Pi |- A -o B
Derivation imp_r(Derivation p, Formula a);
// Gamma, A, B |- C  ==>  Gamma, A . B |- C
Derivation dot_l(Derivation p, Formula a, Formula b);
Derivation dot_r(Derivation left, Derivation right);
Derivation vee_l(Derivation left, Derivation right, Formula a, Formula b);
// Pi |- A  ==>  Pi |- A \/ other
Derivation vee_r1(Derivation p, Formula other);
// Pi |- B  ==>  Pi |- other \/ B
Derivation vee_r2(Derivation p, Formula other);
// Gamma, A |- C  ==>  Gamma, A /\ other |- C
Derivation wedge_l1(Derivation p, Formula a, Formula other);
// Gamma, B |- C  ==>  Gamma, other /\ B |- C
Derivation wedge_l2(Derivation p, Formula other, Formula b);
Derivation wedge_r(Derivation left, Derivation right);
Derivation star_rn(Formula body, std::vector<Derivation> premises);
Derivation star_r0(Formula body);
// Gamma |- A, Delta |- A^*  ==>  Gamma, Delta |- A^*
Derivation star_r_step(Derivation head, Derivation tail);
// Gamma |- C, Gamma, A^*, A |- C  ==>  Gamma, A^* |- C
Derivation star_l2(Derivation base, Derivation step, Formula body);
// |- B, A, B |- B  ==>  A^* |- B
Derivation star_l_ind(Derivation base, Derivation step, Formula body);
Derivation star_r_ind(Formula body);
// Pi |- A, Gamma, A |- C  ==>  Gamma, Pi |- C
Derivation cut(Derivation left, Derivation right);

// Repeated /\L from the conjunct at `path` (0 = left, 1 = right) inside `whole`,
// where the premise contains that conjunct.
Derivation wedge_l_path(Derivation p, Formula whole, const std::vector<std::uint8_t>& path);
// Repeated \/R lifting the premise's succedent to `whole`.
Derivation vee_r_path(Derivation p, Formula whole, const std::vector<std::uint8_t>& path);

// Product introduction: items |- fold_dot(items) by .R over identities.
Derivation dot_intro(const std::vector<Formula>& items);
// Premise over `items` (as separate antecedent members) ==> premise over fold_dot(items).
Derivation dot_elim(Derivation p, const std::vector<Formula>& items);

}  // namespace build

// Path to `leaf` among the maximal same-kind subtree of `whole`, if present.
std::optional<std::vector<std::uint8_t>> find_leaf_path(Formula whole, Formula leaf, Kind kind);

}  // namespace commact

#endif  // COMMACT_DERIVATION_HPP
