#include "commact/calculus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace commact {

std::string_view calculus_name(Calculus c) {
  switch (c) {
    case Calculus::OmegaFin: return "omega-fin";
    case Calculus::CommAct: return "commact";
    case Calculus::Circ: return "circ";
  }
  return "?";
}

std::optional<Calculus> calculus_from_name(std::string_view name) {
  if (name == "omega-fin") return Calculus::OmegaFin;
  if (name == "commact") return Calculus::CommAct;
  if (name == "circ") return Calculus::Circ;
  return std::nullopt;
}

std::string CheckReport::str() const {
  if (valid) return "valid";
  std::string where = "root";
  for (auto i : path) where += "." + std::to_string(i);
  return "at " + where + ": " + reason;
}

namespace {

using Multiset = std::vector<Formula>;

Multiset plus(Multiset m, std::initializer_list<Formula> extra) {
  m.insert(m.end(), extra.begin(), extra.end());
  canonicalize(m);
  return m;
}

// Removes one copy of f; nullopt if absent.
std::optional<Multiset> minus(const Multiset& m, Formula f) {
  auto it = std::find(m.begin(), m.end(), f);
  if (it == m.end()) return std::nullopt;
  Multiset out(m.begin(), it);
  out.insert(out.end(), it + 1, m.end());
  return out;
}

// Distinct antecedent members of the given kind.
std::vector<Formula> candidates(const Multiset& m, Kind k) {
  std::vector<Formula> out;
  for (auto f : m) {
    if (f.is(k) && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

// Multiset a minus b, ignoring elements of b that a lacks.
Multiset saturating_minus(const Multiset& a, const Multiset& b) {
  std::map<Formula, int, FormulaTextLess> counts;
  for (auto f : b) ++counts[f];
  Multiset out;
  for (auto f : a) {
    auto it = counts.find(f);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      continue;
    }
    out.push_back(f);
  }
  return out;
}

bool allowed(Rule r, Calculus c) {
  switch (r) {
    case Rule::StarRN: return c == Calculus::OmegaFin;
    case Rule::StarR0: return true;
    case Rule::StarRInd:
    case Rule::StarLInd: return c == Calculus::CommAct;
    case Rule::StarRStep:
    case Rule::StarL2:
    case Rule::Back: return c == Calculus::Circ;
    default: return true;
  }
}

std::size_t arity(Rule r) {
  switch (r) {
    case Rule::Id:
    case Rule::ZeroL:
    case Rule::OneR:
    case Rule::StarR0:
    case Rule::StarRInd:
    case Rule::Back:
      return 0;
    case Rule::OneL:
    case Rule::ImpR:
    case Rule::DotL:
    case Rule::VeeR1:
    case Rule::VeeR2:
    case Rule::WedgeL1:
    case Rule::WedgeL2:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

std::optional<std::string> check_step(Rule rule, const Sequent& c,
                                      const std::vector<const Sequent*>& ps,
                                      const std::optional<Formula>& cut_formula, Calculus calculus) {
  if (!allowed(rule, calculus)) {
    return std::string(rule_name(rule)) + " is not a rule of " + std::string(calculus_name(calculus));
  }
  if (rule != Rule::StarRN && ps.size() != arity(rule)) {
    return std::string(rule_name(rule)) + " expects " + std::to_string(arity(rule)) +
           " premise(s), got " + std::to_string(ps.size());
  }
  const Multiset& ante = c.antecedent();
  Formula succ = c.succedent();
  auto fail = [&](const std::string& why) {
    return std::optional<std::string>(std::string(rule_name(rule)) + ": " + why);
  };
  auto same_succ = [&](std::size_t i) { return ps[i]->succedent() == succ; };

  switch (rule) {
    case Rule::Id:
      if (ante.size() == 1 && ante[0] == succ) return std::nullopt;
      return fail("conclusion is not of the form A |- A");

    case Rule::ZeroL:
      if (std::find(ante.begin(), ante.end(), Formula::zero()) != ante.end()) return std::nullopt;
      return fail("no 0 in the antecedent");

    case Rule::OneR:
      if (ante.empty() && succ == Formula::one()) return std::nullopt;
      return fail("conclusion is not |- 1");

    case Rule::OneL:
      if (same_succ(0) && plus(ps[0]->antecedent(), {Formula::one()}) == ante) return std::nullopt;
      return fail("premise is not the conclusion without one 1");

    case Rule::ImpL: {
      if (!same_succ(1)) return fail("right premise succedent differs from the conclusion");
      Formula a = ps[0]->succedent();
      for (auto f : candidates(ante, Kind::Imp)) {
        if (f.lhs() != a) continue;
        auto gamma = minus(ps[1]->antecedent(), f.rhs());
        if (!gamma) continue;
        if (plus(multiset_union(*gamma, ps[0]->antecedent()), {f}) == ante) return std::nullopt;
      }
      return fail("no implication A -o B in the antecedent matches the premises");
    }

    case Rule::ImpR:
      if (!succ.is(Kind::Imp)) return fail("succedent is not an implication");
      if (ps[0]->succedent() == succ.rhs() && plus(ante, {succ.lhs()}) == ps[0]->antecedent()) {
        return std::nullopt;
      }
      return fail("premise is not A, Pi |- B");

    case Rule::DotL:
      if (!same_succ(0)) return fail("succedent changed");
      for (auto f : candidates(ante, Kind::Dot)) {
        if (plus(*minus(ante, f), {f.lhs(), f.rhs()}) == ps[0]->antecedent()) return std::nullopt;
      }
      return fail("no product in the antecedent matches the premise");

    case Rule::DotR:
      if (!succ.is(Kind::Dot)) return fail("succedent is not a product");
      if (ps[0]->succedent() != succ.lhs() || ps[1]->succedent() != succ.rhs()) {
        return fail("premise succedents do not match the product factors");
      }
      if (multiset_union(ps[0]->antecedent(), ps[1]->antecedent()) != ante) {
        return fail("antecedent is not the union of the premise antecedents");
      }
      return std::nullopt;

    case Rule::VeeL:
      if (!same_succ(0) || !same_succ(1)) return fail("succedent changed");
      for (auto f : candidates(ante, Kind::Vee)) {
        auto rest = *minus(ante, f);
        if (plus(rest, {f.lhs()}) == ps[0]->antecedent() &&
            plus(rest, {f.rhs()}) == ps[1]->antecedent()) {
          return std::nullopt;
        }
      }
      return fail("no disjunction in the antecedent matches the premises");

    case Rule::VeeR1:
    case Rule::VeeR2:
      if (!succ.is(Kind::Vee)) return fail("succedent is not a disjunction");
      if (ps[0]->antecedent() != ante) return fail("antecedent changed");
      if (ps[0]->succedent() != (rule == Rule::VeeR1 ? succ.lhs() : succ.rhs())) {
        return fail("premise succedent is not the chosen disjunct");
      }
      return std::nullopt;

    case Rule::WedgeL1:
    case Rule::WedgeL2:
      if (!same_succ(0)) return fail("succedent changed");
      for (auto f : candidates(ante, Kind::Wedge)) {
        Formula part = rule == Rule::WedgeL1 ? f.lhs() : f.rhs();
        if (plus(*minus(ante, f), {part}) == ps[0]->antecedent()) return std::nullopt;
      }
      return fail("no conjunction in the antecedent matches the premise");

    case Rule::WedgeR:
      if (!succ.is(Kind::Wedge)) return fail("succedent is not a conjunction");
      if (ps[0]->antecedent() != ante || ps[1]->antecedent() != ante) {
        return fail("premise antecedents differ from the conclusion");
      }
      if (ps[0]->succedent() != succ.lhs() || ps[1]->succedent() != succ.rhs()) {
        return fail("premise succedents do not match the conjuncts");
      }
      return std::nullopt;

    case Rule::StarRN: {
      if (!succ.is(Kind::Star)) return fail("succedent is not a star");
      Multiset all;
      for (const Sequent* p : ps) {
        if (p->succedent() != succ.body()) return fail("premise succedent is not the star body");
        if (p->antecedent().empty()) return fail("premise with an empty antecedent part");
        all = multiset_union(all, p->antecedent());
      }
      if (all != ante) return fail("antecedent is not the union of the premise antecedents");
      return std::nullopt;
    }

    case Rule::StarR0:
      if (ante.empty() && succ.is(Kind::Star)) return std::nullopt;
      return fail("conclusion is not |- A^*");

    case Rule::StarRStep:
      if (!succ.is(Kind::Star)) return fail("succedent is not a star");
      if (ps[0]->succedent() != succ.body() || ps[1]->succedent() != succ) {
        return fail("premises must be Gamma |- A and Delta |- A^*");
      }
      if (multiset_union(ps[0]->antecedent(), ps[1]->antecedent()) != ante) {
        return fail("antecedent is not the union of the premise antecedents");
      }
      return std::nullopt;

    case Rule::StarL2:
      if (!same_succ(0) || !same_succ(1)) return fail("succedent changed");
      for (auto f : candidates(ante, Kind::Star)) {
        if (*minus(ante, f) == ps[0]->antecedent() && plus(ante, {f.body()}) == ps[1]->antecedent()) {
          return std::nullopt;
        }
      }
      return fail("no star in the antecedent matches the premises");

    case Rule::StarLInd:
      if (ante.size() != 1 || !ante[0].is(Kind::Star)) return fail("conclusion is not A^* |- B");
      if (!ps[0]->antecedent().empty() || ps[0]->succedent() != succ) return fail("left premise is not |- B");
      if (ps[1]->succedent() != succ || ps[1]->antecedent() != Multiset(Sequent({ante[0].body(), succ}, succ).antecedent())) {
        return fail("right premise is not A, B |- B");
      }
      return std::nullopt;

    case Rule::StarRInd:
      if (succ.is(Kind::Star) && ante == Sequent({succ.body(), succ}, succ).antecedent()) return std::nullopt;
      return fail("conclusion is not A, A^* |- A^*");

    case Rule::Cut: {
      Formula a = ps[0]->succedent();
      if (cut_formula && *cut_formula != a) return fail("cut formula differs from the left premise succedent");
      if (!same_succ(1)) return fail("succedent differs from the right premise");
      auto gamma = minus(ps[1]->antecedent(), a);
      if (!gamma) return fail("right premise lacks the cut formula");
      if (multiset_union(*gamma, ps[0]->antecedent()) != ante) {
        return fail("antecedent is not Gamma, Pi");
      }
      return std::nullopt;
    }

    case Rule::Back:
      return std::nullopt;
  }
  return fail("unknown rule");
}

namespace {

struct Frame {
  const Derivation* node;
  std::size_t child;  // premise index taken from this node along the current path
};

class Checker {
 public:
  explicit Checker(Calculus c) : calculus_(c) {}

  CheckReport run(const Derivation& d) {
    visit(d);
    return report_;
  }

 private:
  bool violation(std::string why) {
    report_.valid = false;
    report_.path = path_;
    report_.reason = std::move(why);
    return false;
  }

  bool visit(const Derivation& d) {
    if (d.rule() == Rule::Back) return visit_back(d);
    if (!d.label().empty()) {
      if (calculus_ != Calculus::Circ) return violation("labels only occur in circular proofs");
      if (!labels_seen_.insert(d.label()).second) return violation("duplicate label '" + d.label() + "'");
    }
    std::vector<const Sequent*> ps;
    for (const auto& p : d.premises()) ps.push_back(&p.conclusion());
    if (auto why = check_step(d.rule(), d.conclusion(), ps, d.cut_formula(), calculus_)) {
      return violation(*why);
    }
    for (std::size_t i = 0; i < d.premises().size(); ++i) {
      stack_.push_back({&d, i});
      path_.push_back(i);
      bool ok = visit(d.premises()[i]);
      path_.pop_back();
      stack_.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  bool visit_back(const Derivation& d) {
    if (calculus_ != Calculus::Circ) return violation("backlinks only occur in circular proofs");
    std::size_t at = stack_.size();
    for (std::size_t i = stack_.size(); i-- > 0;) {
      if (stack_[i].node->label() == d.target()) {
        at = i;
        break;
      }
    }
    if (at == stack_.size()) return violation("backlink to '" + d.target() + "', which is not a labeled ancestor");
    const Derivation& target = *stack_[at].node;
    if (target.conclusion() != d.conclusion()) return violation("backlink sequent differs from its target");
    if (!cycle_has_trace(at, target.conclusion())) {
      return violation("cycle to '" + d.target() + "' has no *L on a star that persists along the cycle");
    }
    return true;
  }

  // Some StarL2 on the cycle, entered through its step premise, whose principal
  // star stays in every antecedent of the cycle.
  bool cycle_has_trace(std::size_t from, const Sequent& closing) const {
    for (std::size_t i = from; i < stack_.size(); ++i) {
      const Derivation& n = *stack_[i].node;
      if (n.rule() != Rule::StarL2 || stack_[i].child != 1) continue;
      auto principal = left_principal(n);
      if (!principal) continue;
      auto present = [&](const Sequent& s) {
        const auto& a = s.antecedent();
        return std::find(a.begin(), a.end(), *principal) != a.end();
      };
      bool persists = present(closing);
      for (std::size_t j = from; persists && j < stack_.size(); ++j) persists = present(stack_[j].node->conclusion());
      if (persists) return true;
    }
    return false;
  }

  Calculus calculus_;
  CheckReport report_;
  std::vector<Frame> stack_;
  std::vector<std::size_t> path_;
  std::set<std::string> labels_seen_;
};

}  // namespace

CheckReport check(const Derivation& d, Calculus calculus) { return Checker(calculus).run(d); }

std::optional<Formula> left_principal(const Derivation& d) {
  switch (d.rule()) {
    case Rule::ZeroL:
      return Formula::zero();
    case Rule::OneL:
      return Formula::one();
    case Rule::StarL2: {
      const auto& ante = d.conclusion().antecedent();
      for (auto f : candidates(ante, Kind::Star)) {
        if (*minus(ante, f) == d.premise(0).conclusion().antecedent()) return f;
      }
      return std::nullopt;
    }
    case Rule::DotL:
    case Rule::VeeL:
    case Rule::WedgeL1:
    case Rule::WedgeL2:
    case Rule::ImpL: {
      Multiset all;
      for (const auto& p : d.premises()) all = multiset_union(all, p.conclusion().antecedent());
      auto removed = saturating_minus(d.conclusion().antecedent(), all);
      if (removed.size() == 1) return removed[0];
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

namespace {

bool contains(const Derivation& d, Formula f) {
  const auto& a = d.conclusion().antecedent();
  return std::find(a.begin(), a.end(), f) != a.end();
}

bool is_left_rule(Rule r) {
  switch (r) {
    case Rule::ZeroL:
    case Rule::OneL:
    case Rule::DotL:
    case Rule::VeeL:
    case Rule::WedgeL1:
    case Rule::WedgeL2:
    case Rule::ImpL:
      return true;
    default:
      return false;
  }
}

// Cut of two Cut-free OmegaFin proofs, left: Pi |- A, right: Gamma, A |- C.
// Recursion is on (complexity of A, height of left, height of right).
Derivation reduce_cut(const Derivation& left, const Derivation& right) {
  Formula a = left.conclusion().succedent();
  if (left.rule() == Rule::Id) return right;
  if (right.rule() == Rule::Id) return left;

  // The left proof ends in a left rule: the cut formula is passive there.
  if (is_left_rule(left.rule())) {
    Formula f = *left_principal(left);
    switch (left.rule()) {
      case Rule::ZeroL: {
        std::vector<Formula> gamma;
        multiset_difference(right.conclusion().antecedent(), {a}, gamma);
        return build::zero_l(multiset_union(gamma, left.conclusion().antecedent()),
                             right.conclusion().succedent());
      }
      case Rule::OneL:
        return build::one_l(reduce_cut(left.premise(0), right));
      case Rule::DotL:
        return build::dot_l(reduce_cut(left.premise(0), right), f.lhs(), f.rhs());
      case Rule::VeeL:
        return build::vee_l(reduce_cut(left.premise(0), right), reduce_cut(left.premise(1), right),
                            f.lhs(), f.rhs());
      case Rule::WedgeL1:
        return build::wedge_l1(reduce_cut(left.premise(0), right), f.lhs(), f.rhs());
      case Rule::WedgeL2:
        return build::wedge_l2(reduce_cut(left.premise(0), right), f.lhs(), f.rhs());
      case Rule::ImpL:
        return build::imp_l(left.premise(0), reduce_cut(left.premise(1), right), f.rhs());
      default:
        break;
    }
  }

  // The left proof ends in a right rule for A. Principal reduction when the
  // right proof decomposes A itself.
  if (is_left_rule(right.rule()) && left_principal(right) == a) {
    switch (right.rule()) {
      case Rule::OneL:
        return right.premise(0);
      case Rule::ImpL: {
        Derivation mid = reduce_cut(right.premise(0), left.premise(0));
        return reduce_cut(mid, right.premise(1));
      }
      case Rule::DotL: {
        Derivation mid = reduce_cut(left.premise(0), right.premise(0));
        return reduce_cut(left.premise(1), mid);
      }
      case Rule::VeeL:
        return reduce_cut(left.premise(0), right.premise(left.rule() == Rule::VeeR1 ? 0 : 1));
      case Rule::WedgeL1:
        return reduce_cut(left.premise(0), right.premise(0));
      case Rule::WedgeL2:
        return reduce_cut(left.premise(1), right.premise(0));
      default:
        break;
    }
  }

  // Otherwise A is passive in the right proof: push the cut upwards.
  switch (right.rule()) {
    case Rule::ZeroL: {
      std::vector<Formula> gamma;
      multiset_difference(right.conclusion().antecedent(), {a}, gamma);
      return build::zero_l(multiset_union(gamma, left.conclusion().antecedent()),
                           right.conclusion().succedent());
    }
    case Rule::OneL:
      return build::one_l(reduce_cut(left, right.premise(0)));
    case Rule::DotL: {
      Formula f = *left_principal(right);
      return build::dot_l(reduce_cut(left, right.premise(0)), f.lhs(), f.rhs());
    }
    case Rule::VeeL: {
      Formula f = *left_principal(right);
      return build::vee_l(reduce_cut(left, right.premise(0)), reduce_cut(left, right.premise(1)), f.lhs(),
                          f.rhs());
    }
    case Rule::WedgeL1: {
      Formula f = *left_principal(right);
      return build::wedge_l1(reduce_cut(left, right.premise(0)), f.lhs(), f.rhs());
    }
    case Rule::WedgeL2: {
      Formula f = *left_principal(right);
      return build::wedge_l2(reduce_cut(left, right.premise(0)), f.lhs(), f.rhs());
    }
    case Rule::ImpL: {
      Formula f = *left_principal(right);
      if (contains(right.premise(0), a)) {
        return build::imp_l(reduce_cut(left, right.premise(0)), right.premise(1), f.rhs());
      }
      return build::imp_l(right.premise(0), reduce_cut(left, right.premise(1)), f.rhs());
    }
    case Rule::ImpR:
      return build::imp_r(reduce_cut(left, right.premise(0)), right.conclusion().succedent().lhs());
    case Rule::DotR:
      if (contains(right.premise(0), a)) {
        return build::dot_r(reduce_cut(left, right.premise(0)), right.premise(1));
      }
      return build::dot_r(right.premise(0), reduce_cut(left, right.premise(1)));
    case Rule::VeeR1:
      return build::vee_r1(reduce_cut(left, right.premise(0)), right.conclusion().succedent().rhs());
    case Rule::VeeR2:
      return build::vee_r2(reduce_cut(left, right.premise(0)), right.conclusion().succedent().lhs());
    case Rule::WedgeR:
      return build::wedge_r(reduce_cut(left, right.premise(0)), reduce_cut(left, right.premise(1)));
    case Rule::StarRN: {
      std::vector<Derivation> parts;
      bool done = false;
      for (const auto& p : right.premises()) {
        if (!done && contains(p, a)) {
          done = true;
          Derivation reduced = reduce_cut(left, p);
          // An emptied part proves |- A and is dropped from *R_n.
          if (!reduced.conclusion().antecedent().empty()) parts.push_back(std::move(reduced));
        } else {
          parts.push_back(p);
        }
      }
      return build::star_rn(right.conclusion().succedent().body(), std::move(parts));
    }
    default:
      break;
  }
  throw std::logic_error("cut elimination: unexpected rule " + std::string(rule_name(right.rule())));
}

Derivation eliminate(const Derivation& d) {
  if (!d.uses(Rule::Cut)) return d;
  std::vector<Derivation> premises;
  premises.reserve(d.premises().size());
  for (const auto& p : d.premises()) premises.push_back(eliminate(p));
  if (d.rule() == Rule::Cut) return reduce_cut(premises[0], premises[1]);
  return Derivation::make(d.rule(), d.conclusion(), std::move(premises));
}

}  // namespace

Derivation eliminate_cuts(const Derivation& d) {
  CheckReport report = check(d, Calculus::OmegaFin);
  if (!report.valid) throw InvalidDerivation(report);
  return eliminate(d);
}

}  // namespace commact
