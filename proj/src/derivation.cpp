#include "commact/derivation.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace commact {

namespace {

constexpr std::array<std::string_view, 22> kRuleNames = {
    "Id",     "ZeroL",  "OneL",    "OneR",      "ImpL",   "ImpR",     "DotL",     "DotR",
    "VeeL",   "VeeR1",  "VeeR2",   "WedgeL1",   "WedgeL2", "WedgeR",  "StarRN",   "StarR0",
    "StarRStep", "StarL2", "StarLInd", "StarRInd", "Cut",  "Back"};

[[noreturn]] void misfit(const std::string& what) { throw std::invalid_argument(what); }

std::vector<Formula> with(std::vector<Formula> items, std::initializer_list<Formula> extra) {
  items.insert(items.end(), extra.begin(), extra.end());
  canonicalize(items);
  return items;
}

std::vector<Formula> without(const std::vector<Formula>& items, std::initializer_list<Formula> gone,
                             const char* rule) {
  std::vector<Formula> removed(gone);
  canonicalize(removed);
  std::vector<Formula> out;
  if (!multiset_difference(items, removed, out)) {
    misfit(std::string(rule) + ": premise antecedent lacks the active formula");
  }
  return out;
}

}  // namespace

std::string_view rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
    if (kRuleNames[i] == name && static_cast<Rule>(i) != Rule::Back) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

Derivation Derivation::make(Rule rule, Sequent conclusion, std::vector<Derivation> premises,
                            std::optional<Formula> cut_formula) {
  return Derivation(std::make_shared<const Node>(
      Node{rule, std::move(conclusion), std::move(premises), cut_formula, {}, {}}));
}

Derivation Derivation::backlink(std::string target, Sequent conclusion) {
  return Derivation(std::make_shared<const Node>(
      Node{Rule::Back, std::move(conclusion), {}, std::nullopt, {}, std::move(target)}));
}

Derivation Derivation::with_label(std::string label) const {
  Node copy = *node_;
  copy.label = std::move(label);
  return Derivation(std::make_shared<const Node>(std::move(copy)));
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises()) n += p.size();
  return n;
}

std::size_t Derivation::height() const {
  std::size_t h = 0;
  for (const auto& p : premises()) h = std::max(h, p.height());
  return h + 1;
}

bool Derivation::uses(Rule r) const {
  if (rule() == r) return true;
  return std::any_of(premises().begin(), premises().end(),
                     [r](const Derivation& p) { return p.uses(r); });
}

std::optional<std::vector<std::uint8_t>> find_leaf_path(Formula whole, Formula leaf, Kind kind) {
  if (whole == leaf) return std::vector<std::uint8_t>{};
  if (whole.kind() != kind) return std::nullopt;
  if (auto p = find_leaf_path(whole.lhs(), leaf, kind)) {
    p->insert(p->begin(), 0);
    return p;
  }
  if (auto p = find_leaf_path(whole.rhs(), leaf, kind)) {
    p->insert(p->begin(), 1);
    return p;
  }
  return std::nullopt;
}

namespace build {

Derivation id(Formula f) { return Derivation::make(Rule::Id, Sequent({f}, f)); }

Derivation zero_l(std::vector<Formula> antecedent, Formula succedent) {
  if (std::find(antecedent.begin(), antecedent.end(), Formula::zero()) == antecedent.end()) {
    misfit("ZeroL: antecedent has no 0");
  }
  return Derivation::make(Rule::ZeroL, Sequent(std::move(antecedent), succedent));
}

Derivation one_r() { return Derivation::make(Rule::OneR, Sequent(Formula::one())); }

Derivation one_l(Derivation p) {
  const Sequent& s = p.conclusion();
  Sequent c(with(s.antecedent(), {Formula::one()}), s.succedent());
  return Derivation::make(Rule::OneL, std::move(c), {std::move(p)});
}

Derivation imp_l(Derivation left, Derivation right, Formula b) {
  const Sequent& l = left.conclusion();
  const Sequent& r = right.conclusion();
  auto gamma = without(r.antecedent(), {b}, "ImpL");
  auto ante = multiset_union(gamma, l.antecedent());
  ante = with(std::move(ante), {Formula::imp(l.succedent(), b)});
  Sequent c(std::move(ante), r.succedent());
  return Derivation::make(Rule::ImpL, std::move(c), {std::move(left), std::move(right)});
}

Derivation imp_r(Derivation p, Formula a) {
  const Sequent& s = p.conclusion();
  Sequent c(without(s.antecedent(), {a}, "ImpR"), Formula::imp(a, s.succedent()));
  return Derivation::make(Rule::ImpR, std::move(c), {std::move(p)});
}

Derivation dot_l(Derivation p, Formula a, Formula b) {
  const Sequent& s = p.conclusion();
  auto ante = with(without(s.antecedent(), {a, b}, "DotL"), {Formula::dot(a, b)});
  Sequent c(std::move(ante), s.succedent());
  return Derivation::make(Rule::DotL, std::move(c), {std::move(p)});
}

Derivation dot_r(Derivation left, Derivation right) {
  const Sequent& l = left.conclusion();
  const Sequent& r = right.conclusion();
  Sequent c(multiset_union(l.antecedent(), r.antecedent()),
            Formula::dot(l.succedent(), r.succedent()));
  return Derivation::make(Rule::DotR, std::move(c), {std::move(left), std::move(right)});
}

Derivation vee_l(Derivation left, Derivation right, Formula a, Formula b) {
  const Sequent& l = left.conclusion();
  const Sequent& r = right.conclusion();
  auto gamma = without(l.antecedent(), {a}, "VeeL");
  if (gamma != without(r.antecedent(), {b}, "VeeL") || l.succedent() != r.succedent()) {
    misfit("VeeL: premise contexts differ");
  }
  Sequent c(with(std::move(gamma), {Formula::vee(a, b)}), l.succedent());
  return Derivation::make(Rule::VeeL, std::move(c), {std::move(left), std::move(right)});
}

Derivation vee_r1(Derivation p, Formula other) {
  const Sequent& s = p.conclusion();
  Sequent c(s.antecedent(), Formula::vee(s.succedent(), other));
  return Derivation::make(Rule::VeeR1, std::move(c), {std::move(p)});
}

Derivation vee_r2(Derivation p, Formula other) {
  const Sequent& s = p.conclusion();
  Sequent c(s.antecedent(), Formula::vee(other, s.succedent()));
  return Derivation::make(Rule::VeeR2, std::move(c), {std::move(p)});
}

Derivation wedge_l1(Derivation p, Formula a, Formula other) {
  const Sequent& s = p.conclusion();
  auto ante = with(without(s.antecedent(), {a}, "WedgeL1"), {Formula::wedge(a, other)});
  Sequent c(std::move(ante), s.succedent());
  return Derivation::make(Rule::WedgeL1, std::move(c), {std::move(p)});
}

Derivation wedge_l2(Derivation p, Formula other, Formula b) {
  const Sequent& s = p.conclusion();
  auto ante = with(without(s.antecedent(), {b}, "WedgeL2"), {Formula::wedge(other, b)});
  Sequent c(std::move(ante), s.succedent());
  return Derivation::make(Rule::WedgeL2, std::move(c), {std::move(p)});
}

Derivation wedge_r(Derivation left, Derivation right) {
  const Sequent& l = left.conclusion();
  const Sequent& r = right.conclusion();
  if (l.antecedent() != r.antecedent()) misfit("WedgeR: premise antecedents differ");
  Sequent c(l.antecedent(), Formula::wedge(l.succedent(), r.succedent()));
  return Derivation::make(Rule::WedgeR, std::move(c), {std::move(left), std::move(right)});
}

Derivation star_rn(Formula body, std::vector<Derivation> premises) {
  std::vector<Formula> ante;
  for (const auto& p : premises) {
    if (p.conclusion().succedent() != body) misfit("StarRN: premise succedent is not the star body");
    ante = multiset_union(ante, p.conclusion().antecedent());
  }
  return Derivation::make(Rule::StarRN, Sequent(std::move(ante), Formula::star(body)),
                          std::move(premises));
}

Derivation star_r0(Formula body) {
  return Derivation::make(Rule::StarR0, Sequent(Formula::star(body)));
}

Derivation star_r_step(Derivation head, Derivation tail) {
  const Sequent& h = head.conclusion();
  const Sequent& t = tail.conclusion();
  if (t.succedent() != Formula::star(h.succedent())) misfit("StarRStep: tail is not a star of the head");
  Sequent c(multiset_union(h.antecedent(), t.antecedent()), t.succedent());
  return Derivation::make(Rule::StarRStep, std::move(c), {std::move(head), std::move(tail)});
}

Derivation star_l2(Derivation base, Derivation step, Formula body) {
  const Sequent& b = base.conclusion();
  Formula st = Formula::star(body);
  auto expected = with(b.antecedent(), {st, body});
  if (step.conclusion().antecedent() != expected || step.conclusion().succedent() != b.succedent()) {
    misfit("StarL2: step premise does not extend the base premise by A^*, A");
  }
  Sequent c(with(b.antecedent(), {st}), b.succedent());
  return Derivation::make(Rule::StarL2, std::move(c), {std::move(base), std::move(step)});
}

Derivation star_l_ind(Derivation base, Derivation step, Formula body) {
  Formula inv = base.conclusion().succedent();
  if (!base.conclusion().antecedent().empty()) misfit("StarLInd: base premise must have empty antecedent");
  if (step.conclusion() != Sequent({body, inv}, inv)) misfit("StarLInd: step premise must be A, B |- B");
  return Derivation::make(Rule::StarLInd, Sequent({Formula::star(body)}, inv),
                          {std::move(base), std::move(step)});
}

Derivation star_r_ind(Formula body) {
  Formula st = Formula::star(body);
  return Derivation::make(Rule::StarRInd, Sequent({body, st}, st));
}

Derivation cut(Derivation left, Derivation right) {
  Formula a = left.conclusion().succedent();
  auto gamma = without(right.conclusion().antecedent(), {a}, "Cut");
  Sequent c(multiset_union(gamma, left.conclusion().antecedent()), right.conclusion().succedent());
  return Derivation::make(Rule::Cut, std::move(c), {std::move(left), std::move(right)}, a);
}

namespace {

std::vector<Formula> spine(Formula whole, const std::vector<std::uint8_t>& path) {
  std::vector<Formula> chain{whole};
  for (auto side : path) chain.push_back(side == 0 ? chain.back().lhs() : chain.back().rhs());
  return chain;
}

}  // namespace

Derivation wedge_l_path(Derivation p, Formula whole, const std::vector<std::uint8_t>& path) {
  auto chain = spine(whole, path);
  for (std::size_t i = path.size(); i-- > 0;) {
    Formula f = chain[i];
    if (!f.is(Kind::Wedge)) misfit("WedgeL path crosses a non-conjunction");
    p = path[i] == 0 ? wedge_l1(std::move(p), f.lhs(), f.rhs()) : wedge_l2(std::move(p), f.lhs(), f.rhs());
  }
  return p;
}

Derivation vee_r_path(Derivation p, Formula whole, const std::vector<std::uint8_t>& path) {
  auto chain = spine(whole, path);
  if (p.conclusion().succedent() != chain.back()) misfit("VeeR path does not end at the premise succedent");
  for (std::size_t i = path.size(); i-- > 0;) {
    Formula f = chain[i];
    if (!f.is(Kind::Vee)) misfit("VeeR path crosses a non-disjunction");
    p = path[i] == 0 ? vee_r1(std::move(p), f.rhs()) : vee_r2(std::move(p), f.lhs());
  }
  return p;
}

Derivation dot_intro(const std::vector<Formula>& items) {
  if (items.empty()) misfit("dot_intro: empty product");
  if (items.size() == 1) return id(items[0]);
  std::vector<Formula> rest(items.begin() + 1, items.end());
  return dot_r(id(items[0]), dot_intro(rest));
}

Derivation dot_elim(Derivation p, const std::vector<Formula>& items) {
  if (items.empty()) misfit("dot_elim: empty product");
  if (items.size() == 1) return p;
  std::vector<Formula> rest(items.begin() + 1, items.end());
  Derivation inner = dot_elim(std::move(p), rest);
  return dot_l(std::move(inner), items[0], fold_dot(rest));
}

}  // namespace build

}  // namespace commact
