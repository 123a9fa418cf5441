#include "commact/minsky.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "commact/formula.hpp"

namespace commact {

Instruction Instruction::inc(std::string p, unsigned r, std::string q) {
  return {Op::Inc, std::move(p), r, std::move(q), {}};
}

Instruction Instruction::jzdec(std::string p, unsigned r, std::string q0, std::string q1) {
  return {Op::Jzdec, std::move(p), r, std::move(q1), std::move(q0)};
}

const Instruction* Machine::instruction_at(std::string_view state) const {
  for (const auto& i : program) {
    if (i.state == state) return &i;
  }
  return nullptr;
}

bool Machine::has_state(std::string_view state) const {
  return std::find(states.begin(), states.end(), state) != states.end();
}

void validate(const Machine& m) {
  if (m.start.empty()) throw MachineError("machine: missing start line");
  if (m.final_state.empty()) throw MachineError("machine: missing final line");
  std::set<std::string> seen;
  for (const auto& i : m.program) {
    if (!seen.insert(i.state).second) throw MachineError("machine: duplicate instruction for state " + i.state);
    if (i.reg >= kRegisters.size()) throw MachineError("machine: unknown register");
    for (const auto* s : {&i.state, &i.next, &i.zero_next}) {
      if (s->empty()) continue;
      if (!m.has_state(*s)) throw MachineError("machine: undeclared state " + *s);
    }
  }
  for (const auto& s : m.states) {
    if (!is_valid_var_name(s)) throw MachineError("machine: state name '" + s + "' is not a variable name");
  }
  std::vector<std::string> idle;
  for (const auto& s : m.states) {
    if (!seen.count(s)) idle.push_back(s);
  }
  if (idle.empty()) throw MachineError("machine: no instruction-less state");
  if (idle.size() > 1) throw MachineError("machine: multiple instruction-less states: " + idle[0] + ", " + idle[1]);
  if (idle[0] != m.final_state) {
    throw MachineError("machine: final state " + m.final_state + " has an instruction");
  }
}

namespace {

void mention(Machine& m, const std::string& s) {
  if (!m.has_state(s)) m.states.push_back(s);
}

unsigned register_index(const std::string& r, std::size_t line) {
  for (unsigned i = 0; i < kRegisters.size(); ++i) {
    if (r.size() == 1 && r[0] == kRegisters[i]) return i;
  }
  throw MachineError("machine line " + std::to_string(line) + ": unknown register '" + r + "'");
}

}  // namespace

Machine parse_machine(std::string_view text) {
  Machine m;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string t; words >> t;) w.push_back(t);
    if (w.empty()) continue;
    auto arity = [&](std::size_t n) {
      if (w.size() != n) {
        throw MachineError("machine line " + std::to_string(lineno) + ": '" + w[0] + "' takes " +
                           std::to_string(n - 1) + " arguments");
      }
    };
    if (w[0] == "start") {
      arity(2);
      if (!m.start.empty()) throw MachineError("machine: duplicate start line");
      m.start = w[1];
      mention(m, w[1]);
    } else if (w[0] == "final") {
      arity(2);
      if (!m.final_state.empty()) throw MachineError("machine: duplicate final line");
      m.final_state = w[1];
      mention(m, w[1]);
    } else if (w[0] == "inc") {
      arity(4);
      auto r = register_index(w[2], lineno);
      mention(m, w[1]);
      mention(m, w[3]);
      m.program.push_back(Instruction::inc(w[1], r, w[3]));
    } else if (w[0] == "jzdec") {
      arity(5);
      auto r = register_index(w[2], lineno);
      mention(m, w[1]);
      mention(m, w[3]);
      mention(m, w[4]);
      m.program.push_back(Instruction::jzdec(w[1], r, w[3], w[4]));
    } else {
      throw MachineError("machine line " + std::to_string(lineno) + ": unknown directive '" + w[0] + "'");
    }
  }
  validate(m);
  return m;
}

Machine make_machine(std::string start, std::string final_state, std::vector<Instruction> program) {
  Machine m;
  m.start = std::move(start);
  m.final_state = std::move(final_state);
  m.program = std::move(program);
  mention(m, m.start);
  for (const auto& i : m.program) {
    mention(m, i.state);
    if (i.op == Instruction::Op::Jzdec) mention(m, i.zero_next);
    mention(m, i.next);
  }
  mention(m, m.final_state);
  validate(m);
  return m;
}

std::string Configuration::str() const {
  return "<" + state + "," + std::to_string(regs[0]) + "," + std::to_string(regs[1]) + "," +
         std::to_string(regs[2]) + ">";
}

std::optional<Configuration> step(const Machine& m, const Configuration& c) {
  if (!m.has_state(c.state)) throw MachineError("machine: unknown state " + c.state);
  if (c.state == m.final_state) return std::nullopt;
  const Instruction* i = m.instruction_at(c.state);
  Configuration next = c;
  if (i->op == Instruction::Op::Inc) {
    ++next.regs[i->reg];
    next.state = i->next;
  } else if (c.regs[i->reg] == 0) {
    next.state = i->zero_next;
  } else {
    --next.regs[i->reg];
    next.state = i->next;
  }
  return next;
}

Trace run(const Machine& m, std::uint64_t x, std::uint64_t max_steps) {
  Trace t;
  t.configs.push_back({m.start, {x, 0, 0}});
  while (true) {
    auto next = step(m, t.configs.back());
    if (!next) {
      t.halted = true;
      return t;
    }
    if (t.configs.size() > max_steps) return t;
    t.configs.push_back(*next);
  }
}

RunResult classify(const Machine& m, std::uint64_t x, std::uint64_t max_steps) {
  RunResult r;
  std::map<Configuration, std::uint64_t> seen;
  Configuration c{m.start, {x, 0, 0}};
  std::vector<Configuration> trace{c};
  seen.emplace(c, 0);
  for (std::uint64_t i = 0;; ++i) {
    auto next = step(m, c);
    if (!next) {
      r.kind = RunResult::Kind::Halted;
      r.steps = i;
      r.config = c;
      r.trace = std::move(trace);
      return r;
    }
    if (i == max_steps) break;
    c = *next;
    trace.push_back(c);
    auto [it, fresh] = seen.emplace(c, i + 1);
    if (!fresh) {
      r.kind = RunResult::Kind::Circular;
      r.prefix = it->second;
      r.period = i + 1 - it->second;
      r.config = c;
      r.trace = std::move(trace);
      return r;
    }
  }
  r.kind = RunResult::Kind::Exceeded;
  r.steps = max_steps;
  r.trace = std::move(trace);
  return r;
}

bool can_perform_k_steps(const Machine& m, const Configuration& c, std::uint64_t k) {
  Configuration cur = c;
  for (std::uint64_t i = 0; i < k; ++i) {
    auto next = step(m, cur);
    if (!next) return false;
    cur = *next;
  }
  return true;
}

std::vector<std::string> reachable_states(const Machine& m) {
  std::vector<std::string> out{m.start};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Instruction* ins = m.instruction_at(out[i]);
    if (!ins) continue;
    for (const auto* s : {&ins->zero_next, &ins->next}) {
      if (!s->empty() && std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
    }
  }
  // Report in declaration order.
  std::vector<std::string> ordered;
  for (const auto& s : m.states) {
    if (std::find(out.begin(), out.end(), s) != out.end()) ordered.push_back(s);
  }
  return ordered;
}

}  // namespace commact
