#include "commact/encoding.hpp"

#include <algorithm>
#include <functional>

namespace commact {

namespace {

const std::array<const char*, 3> kZNames = {"z_a", "z_b", "z_c"};

Formula reg_var(unsigned r) { return Formula::var(std::string(1, kRegisters[r])); }
Formula z_var(unsigned r) { return Formula::var(kZNames[r]); }

// Path to item j of a right-associated fold of n items.
std::vector<std::uint8_t> item_path(std::size_t j, std::size_t n) {
  std::vector<std::uint8_t> path(j, 1);
  if (j + 1 < n) path.push_back(0);
  return path;
}

std::size_t instruction_index(const EncodedMachine& em, const std::string& state) {
  for (std::size_t i = 0; i < em.machine.program.size(); ++i) {
    if (em.machine.program[i].state == state) return 3 + i;
  }
  throw EncodingError("encoding: no instruction at state " + state);
}

Derivation to_e(const EncodedMachine& em, Derivation p, std::size_t conjunct, std::optional<std::uint8_t> side = {}) {
  auto path = item_path(conjunct, em.conjuncts.size());
  if (side) path.push_back(*side);
  return build::wedge_l_path(std::move(p), em.E, path);
}

Derivation to_d(const EncodedMachine& em, Derivation p, std::size_t disjunct) {
  return build::vee_r_path(std::move(p), em.D, item_path(disjunct, 4));
}

// p, regs |- D through the first disjunct.
Derivation base_proof(const EncodedMachine& em, const Configuration& c, Calculus style) {
  const auto& states = em.machine.states;
  auto at = std::find(states.begin(), states.end(), c.state) - states.begin();
  Formula p = Formula::var(c.state);
  Derivation acc = build::vee_r_path(build::id(p), em.states, item_path(static_cast<std::size_t>(at), states.size()));
  for (unsigned r = 3; r-- > 0;) {
    acc = build::dot_r(star_of_copies(em.regs[r], static_cast<unsigned>(c.regs[r]), style), acc);
  }
  return to_d(em, acc, 0);
}

// z_r, regs |- D through the disjunct that omits register r.
Derivation zero_base(const EncodedMachine& em, unsigned r, const std::array<std::uint64_t, 3>& regs, Calculus style) {
  Derivation acc = build::id(em.zs[r]);
  for (unsigned s = 3; s-- > 0;) {
    if (s == r) continue;
    acc = build::dot_r(star_of_copies(em.regs[s], static_cast<unsigned>(regs[s]), style), acc);
  }
  return to_d(em, acc, 1 + r);
}

// Consumes `copies` extra copies of E through N_r.
Derivation zero_thread(const EncodedMachine& em, unsigned r, Derivation p, unsigned copies) {
  for (unsigned i = 0; i < copies; ++i) {
    p = to_e(em, build::imp_l(build::id(em.zs[r]), std::move(p), em.zs[r]), r);
  }
  return p;
}

// One machine step at c using one copy of E. `next` proves the continuation
// with the successor configuration; `zero` proves the z_r side of a zero test.
Derivation instruction_step(const EncodedMachine& em, const Configuration& c, Derivation next,
                            const std::function<Derivation()>& zero) {
  const Instruction* ins = em.machine.instruction_at(c.state);
  if (!ins) throw EncodingError("encoding: state " + c.state + " has no instruction");
  std::size_t at = instruction_index(em, c.state);
  Formula p = Formula::var(c.state);
  Formula r = em.regs[ins->reg];
  if (ins->op == Instruction::Op::Inc) {
    Formula q = Formula::var(ins->next);
    Derivation body = build::imp_l(build::id(p), build::dot_l(std::move(next), q, r), Formula::dot(q, r));
    return to_e(em, std::move(body), at);
  }
  if (c.regs[ins->reg] > 0) {
    Derivation left = build::dot_r(build::id(p), build::id(r));
    Derivation body = build::imp_l(std::move(left), std::move(next), Formula::var(ins->next));
    return to_e(em, std::move(body), at, 0);
  }
  Formula q0 = Formula::var(ins->zero_next);
  Formula z = em.zs[ins->reg];
  Derivation split = build::vee_l(std::move(next), zero(), q0, z);
  Derivation body = build::imp_l(build::id(p), std::move(split), Formula::vee(q0, z));
  return to_e(em, std::move(body), at, 1);
}

using EndFn = std::function<Derivation(const Configuration&)>;
// (register, registers at the test, copies of E left after the test)
using ZeroFn = std::function<Derivation(unsigned, const std::array<std::uint64_t, 3>&, unsigned)>;

Derivation steps_from(const EncodedMachine& em, const Configuration& c, unsigned k, const EndFn& end,
                      const ZeroFn& zero) {
  if (k == 0) return end(c);
  auto next = step(em.machine, c);
  if (!next) throw EncodingError("encoding: machine halts at " + c.str() + " with steps left");
  const Instruction* ins = em.machine.instruction_at(c.state);
  return instruction_step(em, c, steps_from(em, *next, k - 1, end, zero),
                          [&] { return zero(ins->reg, c.regs, k - 1); });
}

Derivation wedge_intro(const std::vector<Derivation>& parts) {
  Derivation acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = build::wedge_r(parts[i], acc);
  return acc;
}

// items, (fold_dot(items) -o D) |- D
Derivation discharge(const EncodedMachine& em, const std::vector<Formula>& items) {
  return build::imp_l(build::dot_intro(items), build::id(em.D), em.D);
}

// ctx |- fold_dot(items) -o D from ctx, items |- D
Derivation guard(Derivation p, const std::vector<Formula>& items) {
  return build::imp_r(build::dot_elim(std::move(p), items), fold_dot(items));
}

}  // namespace

Formula instruction_formula(const Instruction& i) {
  Formula p = Formula::var(i.state);
  Formula r = reg_var(i.reg);
  if (i.op == Instruction::Op::Inc) return Formula::imp(p, Formula::dot(Formula::var(i.next), r));
  return Formula::wedge(Formula::imp(Formula::dot(p, r), Formula::var(i.next)),
                        Formula::imp(p, Formula::vee(Formula::var(i.zero_next), z_var(i.reg))));
}

EncodedMachine encode(const Machine& m) {
  for (const auto& s : m.states) {
    bool reserved = s.size() == 1 && std::find(kRegisters.begin(), kRegisters.end(), s[0]) != kRegisters.end();
    for (auto z : kZNames) reserved = reserved || s == z;
    if (reserved) throw EncodingError("encoding: state name '" + s + "' is reserved");
  }
  Formula u = Formula::one();
  EncodedMachine em{m, u, u, {}, {}, u, {u, u, u}, {u, u, u}};
  for (unsigned r = 0; r < 3; ++r) {
    em.regs[r] = reg_var(r);
    em.zs[r] = z_var(r);
    em.conjuncts.push_back(Formula::imp(em.zs[r], em.zs[r]));
  }
  for (const auto& i : m.program) em.conjuncts.push_back(instruction_formula(i));
  em.E = fold_wedge(em.conjuncts);

  std::vector<Formula> state_vars;
  for (const auto& s : m.states) state_vars.push_back(Formula::var(s));
  em.states = fold_vee(state_vars);
  auto st = [&](unsigned r) { return Formula::star(em.regs[r]); };
  em.disjuncts = {
      fold_dot({st(0), st(1), st(2), em.states}),
      fold_dot({st(1), st(2), em.zs[0]}),
      fold_dot({st(0), st(2), em.zs[1]}),
      fold_dot({st(0), st(1), em.zs[2]}),
  };
  em.D = fold_vee(em.disjuncts);
  return em;
}

std::vector<Formula> config_atoms(const EncodedMachine& em, const Configuration& c) {
  std::vector<Formula> out{Formula::var(c.state)};
  for (unsigned r = 0; r < 3; ++r) out.insert(out.end(), c.regs[r], em.regs[r]);
  return out;
}

std::vector<Formula> zero_atoms(const EncodedMachine& em, unsigned r, const std::array<std::uint64_t, 3>& regs) {
  std::vector<Formula> out{em.zs[r]};
  for (unsigned s = 0; s < 3; ++s) {
    if (s != r) out.insert(out.end(), regs[s], em.regs[s]);
  }
  return out;
}

Sequent target_sequent(const EncodedMachine& em, std::uint64_t x) {
  std::vector<Formula> ante{Formula::star(em.E), Formula::var(em.machine.start)};
  ante.insert(ante.end(), x, em.regs[0]);
  return Sequent(std::move(ante), em.D);
}

Sequent k_step_sequent(const EncodedMachine& em, const Configuration& c, unsigned k) {
  auto ante = config_atoms(em, c);
  ante.insert(ante.end(), k, em.E);
  return Sequent(std::move(ante), em.D);
}

Sequent zero_check_sequent(const EncodedMachine& em, unsigned r, const std::array<std::uint64_t, 3>& regs,
                           unsigned k) {
  auto ante = zero_atoms(em, r, regs);
  ante.insert(ante.end(), k, em.E);
  return Sequent(std::move(ante), em.D);
}

Derivation synth_k_step(const EncodedMachine& em, const Configuration& c, unsigned k, Calculus style) {
  if (!can_perform_k_steps(em.machine, c, k)) {
    throw EncodingError("synth_k_step: the machine cannot perform " + std::to_string(k) + " steps from " + c.str());
  }
  return steps_from(
      em, c, k, [&](const Configuration& end) { return base_proof(em, end, style); },
      [&](unsigned r, const std::array<std::uint64_t, 3>& regs, unsigned left) {
        return zero_thread(em, r, zero_base(em, r, regs, style), left);
      });
}

Derivation zero_check_commact(const EncodedMachine& em, unsigned r, const std::array<std::uint64_t, 3>& regs) {
  if (regs[r] != 0) throw EncodingError("zero check: register is not zero");
  auto items = zero_atoms(em, r, regs);
  Derivation base = guard(zero_base(em, r, regs, Calculus::CommAct), items);
  Derivation step = guard(zero_thread(em, r, discharge(em, items), 1), items);
  return build::cut(build::star_l_ind(base, step, em.E), discharge(em, items));
}

Derivation zero_check_circular(const EncodedMachine& em, unsigned r, const std::array<std::uint64_t, 3>& regs,
                               const std::string& label) {
  if (regs[r] != 0) throw EncodingError("zero check: register is not zero");
  Sequent goal(multiset_union({Formula::star(em.E)}, Sequent(zero_atoms(em, r, regs), em.D).antecedent()), em.D);
  Derivation back = Derivation::backlink(label, goal);
  Derivation step = zero_thread(em, r, back, 1);
  return build::star_l2(zero_base(em, r, regs, Calculus::Circ), step, em.E).with_label(label);
}

CircularSynthesis synth_circular(const EncodedMachine& em, std::uint64_t x, std::uint64_t max_steps) {
  RunResult run = classify(em.machine, x, max_steps);
  if (run.kind != RunResult::Kind::Circular) {
    throw EncodingError("synth_circular: the run on input " + std::to_string(x) + " is not circular within " +
                        std::to_string(max_steps) + " steps");
  }
  const auto& trace = run.trace;
  const auto mu = static_cast<std::size_t>(run.prefix);
  const auto k = static_cast<unsigned>(run.period);
  const Configuration& loop = trace[mu];
  auto loop_items = config_atoms(em, loop);

  // Zero tests met on the cycle, each guarded by its own conjunct.
  std::vector<std::pair<unsigned, std::array<std::uint64_t, 3>>> tests;
  for (std::size_t i = mu; i < mu + k; ++i) {
    const Instruction* ins = em.machine.instruction_at(trace[i].state);
    if (ins->op == Instruction::Op::Jzdec && trace[i].regs[ins->reg] == 0) {
      std::pair<unsigned, std::array<std::uint64_t, 3>> t{ins->reg, trace[i].regs};
      t.second[ins->reg] = 0;
      if (std::find(tests.begin(), tests.end(), t) == tests.end()) tests.push_back(t);
    }
  }
  std::vector<std::vector<Formula>> guarded{loop_items};
  for (const auto& [r, regs] : tests) guarded.push_back(zero_atoms(em, r, regs));
  std::vector<Formula> conj;
  for (const auto& items : guarded) conj.push_back(Formula::imp(fold_dot(items), em.D));
  Formula g = fold_wedge(conj);
  auto close = [&](std::size_t j) {
    return build::wedge_l_path(discharge(em, guarded[j]), g, item_path(j, guarded.size()));
  };
  auto test_index = [&](unsigned r, const std::array<std::uint64_t, 3>& regs) {
    for (std::size_t j = 0; j < tests.size(); ++j) {
      if (tests[j].first == r && tests[j].second == regs) return j + 1;
    }
    throw EncodingError("synth_circular: zero test outside the cycle");
  };

  // ctx |- g from ctx, items_j |- D for every conjunct.
  auto prove_g = [&](const std::function<Derivation(std::size_t)>& conjunct) {
    std::vector<Derivation> parts;
    for (std::size_t j = 0; j < guarded.size(); ++j) parts.push_back(guard(conjunct(j), guarded[j]));
    return wedge_intro(parts);
  };

  // Base of the induction: E^i |- g for i < k, from the run itself.
  Formula s = bounded_powers(em.E, k);
  std::vector<Derivation> cases;
  for (unsigned i = 0; i < k; ++i) {
    Derivation gi = prove_g([&](std::size_t j) {
      if (j == 0) return synth_k_step(em, loop, i, Calculus::CommAct);
      const auto& [r, regs] = tests[j - 1];
      return zero_thread(em, r, zero_base(em, r, regs, Calculus::CommAct), i);
    });
    if (i == 0) {
      cases.push_back(build::one_l(gi));
    } else {
      cases.push_back(build::dot_elim(gi, std::vector<Formula>(i, em.E)));
    }
  }
  Derivation from_s = cases.back();
  for (unsigned i = k - 1; i-- > 0;) {
    Formula rest = s;
    for (unsigned j = 0; j <= i; ++j) rest = rest.rhs();
    from_s = build::vee_l(cases[i], from_s, power(em.E, i), rest);
  }
  Derivation base = build::imp_r(from_s, s);

  // Step: one full period, E^k, g |- g.
  Derivation period = prove_g([&](std::size_t j) {
    if (j == 0) {
      return steps_from(
          em, loop, k, [&](const Configuration&) { return close(0); },
          [&](unsigned r, const std::array<std::uint64_t, 3>& regs, unsigned left) {
            return zero_thread(em, r, close(test_index(r, regs)), left);
          });
    }
    return zero_thread(em, tests[j - 1].first, close(j), k);
  });
  std::vector<Formula> copies(k, em.E);
  Derivation step = build::imp_r(build::dot_elim(build::imp_l(build::id(s), period, g), copies), s);
  Formula ek = power(em.E, k);
  Derivation induction = build::star_l_ind(base, step, ek);

  // E^*, loop |- D
  Derivation use = build::imp_l(build::id(s), close(0), g);
  Derivation split = build::dot_l(build::cut(induction, use), s, Formula::star(ek));
  Derivation proof = build::cut(kleene_split_schema(em.E, k), split);

  // Prefix, one derived *L per step.
  for (std::size_t i = mu; i-- > 0;) {
    const Configuration& c = trace[i];
    Derivation p1 = base_proof(em, c, Calculus::CommAct);
    Derivation p2 = steps_from(
        em, c, 1, [&](const Configuration&) { return proof; },
        [&](unsigned r, const std::array<std::uint64_t, 3>& regs, unsigned) {
          auto z = regs;
          z[r] = 0;
          return zero_check_commact(em, r, z);
        });
    proof = derived_star_left(config_atoms(em, c), em.E, em.D, p1, p2);
  }

  // The circular proof: *L at every configuration, backlink at the repeat.
  Formula es = Formula::star(em.E);
  int fresh = 0;
  std::function<Derivation(std::size_t)> circ_from = [&](std::size_t i) -> Derivation {
    const Configuration& c = trace[i];
    auto items = config_atoms(em, c);
    items.push_back(es);
    if (i == mu + k) return Derivation::backlink("loop", Sequent(items, em.D));
    Derivation stepped = steps_from(
        em, c, 1, [&](const Configuration&) { return circ_from(i + 1); },
        [&](unsigned r, const std::array<std::uint64_t, 3>& regs, unsigned) {
          return zero_check_circular(em, r, regs, "zero" + std::to_string(++fresh));
        });
    Derivation node = build::star_l2(base_proof(em, c, Calculus::Circ), stepped, em.E);
    return i == mu ? node.with_label("loop") : node;
  };
  return {run, proof, circ_from(0)};
}

}  // namespace commact
