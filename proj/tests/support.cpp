#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "commact/search.hpp"

namespace testsupport {

Machine pq_machine() {
  return make_machine("p", "qf", {Instruction::inc("p", 0, "q"), Instruction::jzdec("q", 0, "p", "p")});
}

Machine zero_loop_machine() { return make_machine("qs", "qf", {Instruction::jzdec("qs", 0, "qs", "qs")}); }

Machine inc_loop_machine() { return make_machine("qs", "qf", {Instruction::inc("qs", 0, "qs")}); }

Machine halting_machine() { return make_machine("qs", "qf", {Instruction::inc("qs", 0, "qf")}); }

std::vector<NamedMachine> lemma_corpus() {
  return {
      {"pq", pq_machine()},
      {"zero-loop", zero_loop_machine()},
      {"inc-loop", inc_loop_machine()},
      {"halting", halting_machine()},
      {"transfer-a-to-b",
       make_machine("qs", "qf", {Instruction::jzdec("qs", 0, "qf", "t"), Instruction::inc("t", 1, "qs")})},
      {"drain-b-then-c",
       make_machine("qs", "qf", {Instruction::jzdec("qs", 1, "u", "qs"), Instruction::jzdec("u", 2, "qf", "u")})},
  };
}

Formula FormulaGen::operator()(Rng& rng, unsigned depth) const {
  std::uniform_int_distribution<int> leaf(0, constants ? static_cast<int>(vars.size()) + 1 : static_cast<int>(vars.size()) - 1);
  auto atom = [&]() {
    int i = leaf(rng);
    if (i < static_cast<int>(vars.size())) return Formula::var(vars[static_cast<std::size_t>(i)]);
    return i == static_cast<int>(vars.size()) ? Formula::one() : Formula::zero();
  };
  if (depth == 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) return atom();
  int op = std::uniform_int_distribution<int>(0, stars ? 4 : 3)(rng);
  if (op == 4) return Formula::star((*this)(rng, depth - 1));
  Formula l = (*this)(rng, depth - 1);
  Formula r = (*this)(rng, depth - 1);
  switch (op) {
    case 0: return Formula::imp(l, r);
    case 1: return Formula::dot(l, r);
    case 2: return Formula::vee(l, r);
    default: return Formula::wedge(l, r);
  }
}

Sequent random_sequent(Rng& rng, const FormulaGen& gen, unsigned depth, unsigned max_ante) {
  unsigned n = std::uniform_int_distribution<unsigned>(0, max_ante)(rng);
  std::vector<Formula> ante;
  for (unsigned i = 0; i < n; ++i) ante.push_back(gen(rng, depth));
  return Sequent(std::move(ante), gen(rng, depth));
}

Sequent random_decidable_sequent(Rng& rng, const FormulaGen& gen, unsigned depth, unsigned max_ante) {
  while (true) {
    Sequent s = random_sequent(rng, gen, depth, max_ante);
    if (!has_negative_star(s)) return s;
  }
}

namespace {

class Naive {
 public:
  bool derivable(std::vector<Formula> ante, Formula succ) {
    Sequent s(ante, succ);
    std::string key = s.str();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = search(s.antecedent(), succ);
    memo_[key] = r;
    return r;
  }

 private:
  static std::vector<Formula> without(const std::vector<Formula>& a, std::size_t i) {
    std::vector<Formula> out = a;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
  }

  static std::vector<Formula> plus(std::vector<Formula> a, std::initializer_list<Formula> more) {
    a.insert(a.end(), more.begin(), more.end());
    return a;
  }

  // Every split by index subsets.
  bool any_split(const std::vector<Formula>& a,
                 const std::function<bool(const std::vector<Formula>&, const std::vector<Formula>&)>& fn) {
    std::size_t n = a.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<Formula> l, r;
      for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? l : r).push_back(a[i]);
      if (fn(l, r)) return true;
    }
    return false;
  }

  // Set partitions into nonempty blocks, as restricted growth strings.
  bool any_partition(const std::vector<Formula>& a, Formula body) {
    std::size_t n = a.size();
    std::vector<std::size_t> block(n, 0);
    std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t used) {
      if (i == n) {
        for (std::size_t b = 0; b < used; ++b) {
          std::vector<Formula> part;
          for (std::size_t j = 0; j < n; ++j) {
            if (block[j] == b) part.push_back(a[j]);
          }
          if (!derivable(part, body)) return false;
        }
        return true;
      }
      for (std::size_t b = 0; b <= used; ++b) {
        block[i] = b;
        if (go(i + 1, std::max(used, b + 1))) return true;
      }
      return false;
    };
    return go(0, 0);
  }

  bool search(const std::vector<Formula>& a, Formula succ) {
    if (a.size() == 1 && a[0] == succ) return true;
    if (a.empty() && succ.is(Kind::One)) return true;
    for (auto f : a) {
      if (f.is(Kind::Zero)) return true;
    }
    switch (succ.kind()) {
      case Kind::Imp:
        if (derivable(plus(a, {succ.lhs()}), succ.rhs())) return true;
        break;
      case Kind::Dot:
        if (any_split(a, [&](const auto& l, const auto& r) {
              return derivable(l, succ.lhs()) && derivable(r, succ.rhs());
            })) {
          return true;
        }
        break;
      case Kind::Vee:
        if (derivable(a, succ.lhs()) || derivable(a, succ.rhs())) return true;
        break;
      case Kind::Wedge:
        if (derivable(a, succ.lhs()) && derivable(a, succ.rhs())) return true;
        break;
      case Kind::Star:
        if (a.empty() || any_partition(a, succ.body())) return true;
        break;
      default:
        break;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      Formula f = a[i];
      auto rest = without(a, i);
      switch (f.kind()) {
        case Kind::One:
          if (derivable(rest, succ)) return true;
          break;
        case Kind::Dot:
          if (derivable(plus(rest, {f.lhs(), f.rhs()}), succ)) return true;
          break;
        case Kind::Vee:
          if (derivable(plus(rest, {f.lhs()}), succ) && derivable(plus(rest, {f.rhs()}), succ)) return true;
          break;
        case Kind::Wedge:
          if (derivable(plus(rest, {f.lhs()}), succ) || derivable(plus(rest, {f.rhs()}), succ)) return true;
          break;
        case Kind::Imp:
          if (any_split(rest, [&](const auto& pi, const auto& gamma) {
                return derivable(pi, f.lhs()) && derivable(plus(gamma, {f.rhs()}), succ);
              })) {
            return true;
          }
          break;
        default:
          break;
      }
    }
    return false;
  }

  std::map<std::string, bool> memo_;
};

}  // namespace

bool naive_derivable(const Sequent& s) {
  Naive n;
  return n.derivable(s.antecedent(), s.succedent());
}

void for_each_node(const Derivation& d, const std::function<void(const Derivation&)>& fn) {
  fn(d);
  for (const auto& p : d.premises()) for_each_node(p, fn);
}

bool oracle_can_step(const Machine& m, Configuration c, std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) {
    if (c.state == m.final_state) return false;
    const Instruction* ins = nullptr;
    for (const auto& candidate : m.program) {
      if (candidate.state == c.state) ins = &candidate;
    }
    auto& reg = c.regs[ins->reg];
    if (ins->op == Instruction::Op::Inc) {
      reg += 1;
      c.state = ins->next;
    } else if (reg == 0) {
      c.state = ins->zero_next;
    } else {
      reg -= 1;
      c.state = ins->next;
    }
  }
  return true;
}

namespace {

Derivation search_proof(const std::string& text) {
  auto o = decide(parse_sequent(text), true);
  if (!o.proof) throw std::logic_error("corpus sequent is not derivable: " + text);
  return *o.proof;
}

}  // namespace

std::vector<CorpusProof> golden_corpus() {
  std::vector<CorpusProof> out;
  for (const auto& [name, m] : lemma_corpus()) {
    EncodedMachine em = encode(m);
    for (const auto& state : reachable_states(m)) {
      for (std::uint64_t a = 0; a <= 1; ++a) {
        Configuration c{state, {a, 1, 0}};
        for (unsigned k = 0; k <= 3; ++k) {
          if (!can_perform_k_steps(m, c, k)) break;
          out.push_back({name + " k-step " + c.str() + " k=" + std::to_string(k), synth_k_step(em, c, k),
                         Calculus::OmegaFin});
        }
      }
    }
  }
  EncodedMachine pq = encode(pq_machine());
  out.push_back({"pq k-step commact style", synth_k_step(pq, {"p", {0, 0, 0}}, 4, Calculus::CommAct),
                 Calculus::CommAct});
  out.push_back({"pq k-step circ style", synth_k_step(pq, {"p", {0, 0, 0}}, 4, Calculus::Circ), Calculus::Circ});
  for (const auto& m : {zero_loop_machine(), pq_machine()}) {
    EncodedMachine em = encode(m);
    CircularSynthesis cs = synth_circular(em, 0);
    out.push_back({m.start + " circular (commact)", cs.commact, Calculus::CommAct});
    out.push_back({m.start + " circular (circ)", cs.circ, Calculus::Circ});
  }
  EncodedMachine z = encode(zero_loop_machine());
  out.push_back({"zero check commact", zero_check_commact(z, 0, {0, 1, 2}), Calculus::CommAct});
  out.push_back({"zero check circ", zero_check_circular(z, 0, {0, 2, 1}, "z"), Calculus::Circ});
  for (const char* f : {"p", "1", "p . q"}) {
    out.push_back({std::string("star unfold ") + f, star_unfold_schema(parse_formula(f)), Calculus::CommAct});
  }
  for (unsigned k = 1; k <= 3; ++k) {
    out.push_back({"kleene split k=" + std::to_string(k), kleene_split_schema(parse_formula("a"), k),
                   Calculus::CommAct});
  }
  for (const char* s : {"p |- p", "q, a |- q . a", "|- a^*", "a, a, b |- (a . a) . b^*", "p, p -o q |- q \\/ r",
                        "p /\\ q |- q \\/ p", "0, p |- q", "a . b |- (b . a)^*"}) {
    out.push_back({std::string("search ") + s, search_proof(s), Calculus::OmegaFin});
  }
  return out;
}

std::vector<CorpusProof> cut_corpus() {
  using namespace build;
  std::vector<CorpusProof> out;
  auto add = [&](std::string name, Derivation d) { out.push_back({std::move(name), std::move(d), Calculus::OmegaFin}); };
  Formula p = parse_formula("p"), q = parse_formula("q"), a = parse_formula("a"), b = parse_formula("b");
  Formula qa = Formula::dot(q, a);

  add("axiom cut", cut(id(p), id(p)));
  add("product against identity", cut(dot_r(id(q), id(a)), id(qa)));
  add("identity against product", cut(id(q), dot_r(id(q), id(a))));
  add("unit", cut(one_r(), one_l(id(p))));
  add("implication principal",
      cut(imp_r(dot_r(id(p), id(q)), p), imp_l(id(p), id(Formula::dot(p, q)), Formula::dot(p, q))));
  add("conjunction principal", cut(wedge_r(id(p), id(p)), wedge_l1(id(p), p, p)));
  add("conjunction second", cut(wedge_r(wedge_l1(id(p), p, q), wedge_l2(id(q), p, q)), wedge_l2(id(q), p, q)));
  add("disjunction principal", cut(vee_r2(id(q), p), vee_l(vee_r2(id(p), q), vee_r1(id(q), p), p, q)));
  add("product principal", cut(dot_r(id(a), id(b)), dot_l(dot_r(id(b), id(a)), a, b)));
  add("cut into star parts",
      cut(dot_r(id(a), id(b)), star_rn(Formula::dot(a, b), {id(Formula::dot(a, b)), id(Formula::dot(a, b))})));
  add("cut emptying a star part", cut(one_r(), star_rn(Formula::one(), {id(Formula::one()), id(Formula::one())})));
  add("zero on the left", cut(zero_l({Formula::zero(), p}, q), id(q)));
  add("zero on the right", cut(id(p), zero_l({Formula::zero(), p}, q)));
  add("nested cuts", cut(cut(id(p), id(p)), cut(id(p), id(p))));
  add("chain of implications",
      cut(imp_l(id(p), id(q), q), imp_l(id(q), id(parse_formula("r")), parse_formula("r"))));
  add("search proofs glued",
      cut(search_proof("p, p -o (q /\\ r) |- q \\/ s"), search_proof("q \\/ s, t |- (q \\/ s) . t")));
  add("invert product",
      cut(dot_r(id(p), id(q)), search_proof("p . q, r |- (q . r) . p")));
  add("invert disjunction",
      cut(vee_r1(id(p), q), search_proof("p \\/ q, r |- (p . r) \\/ (q . r)")));
  add("cut on a star", cut(star_rn(a, {id(a), id(a)}), id(Formula::star(a))));
  add("cut on implication in context",
      cut(imp_r(id(p), p), imp_l(id(p), id(p), p)));

  EncodedMachine pq = encode(pq_machine());
  for (unsigned k = 1; k <= 3; ++k) {
    Derivation d = synth_k_step(pq, {"p", {0, 0, 0}}, k);
    add("k-step against D, k=" + std::to_string(k), cut(d, id(pq.D)));
    add("E against k-step, k=" + std::to_string(k), cut(id(pq.E), d));
  }
  EncodedMachine t = encode(lemma_corpus()[4].machine);
  Derivation d = synth_k_step(t, {"qs", {1, 0, 0}}, 3);
  add("transfer k-step double cut", cut(id(t.E), cut(d, id(t.D))));
  return out;
}

std::vector<Sequent> approximation_corpus() {
  std::vector<Sequent> out;
  for (const char* t : {"a^* |- a^*", "a^*, b |- b . a^*", "a^*, a^* |- a^*", "(a . b)^* |- a^* . b^*",
                        "a^* |- a", "(p \\/ q)^*, p |- p . (p \\/ q)^*", "(a^* -o b) |- b", "|- 0"}) {
    out.push_back(parse_sequent(t));
  }
  for (const auto& nm : lemma_corpus()) {
    EncodedMachine em = encode(nm.machine);
    out.push_back(target_sequent(em, 0));
    out.push_back(target_sequent(em, 1));
  }
  Rng rng(31);
  FormulaGen gen;
  for (int i = 0; i < 150; ++i) out.push_back(random_sequent(rng, gen, 2, 3));
  return out;
}

}  // namespace testsupport
