#ifndef COMMACT_ENCODING_HPP
#define COMMACT_ENCODING_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "commact/calculus.hpp"
#include "commact/minsky.hpp"

namespace commact {

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EncodedMachine {
  Machine machine;
  Formula E;
  Formula D;
  std::vector<Formula> conjuncts;  // of E: N_a, N_b, N_c, then one per instruction
  std::vector<Formula> disjuncts;  // of D, four of them
  Formula states;                  // disjunction of all state variables
  std::array<Formula, 3> regs;     // a, b, c
  std::array<Formula, 3> zs;       // z_a, z_b, z_c
};

Formula instruction_formula(const Instruction& i);
EncodedMachine encode(const Machine& m);

// State variable followed by the register atoms of c.
std::vector<Formula> config_atoms(const EncodedMachine& em, const Configuration& c);
// z_r followed by the register atoms of regs (register r must be zero).
std::vector<Formula> zero_atoms(const EncodedMachine& em, unsigned r, const std::array<std::uint64_t, 3>& regs);

Sequent target_sequent(const EncodedMachine& em, std::uint64_t x);
Sequent k_step_sequent(const EncodedMachine& em, const Configuration& c, unsigned k);
// E^k, z_r, regs |- D
Sequent zero_check_sequent(const EncodedMachine& em, unsigned r, const std::array<std::uint64_t, 3>& regs,
                           unsigned k);

// Derivation of k_step_sequent from the machine's own run. Star introductions
// follow `style`; everything else is shared by all three calculi.
Derivation synth_k_step(const EncodedMachine& em, const Configuration& c, unsigned k,
                        Calculus style = Calculus::OmegaFin);

// E^*, z_r, regs |- D, by induction on E^* (CommAct) or with one backlink (Circ).
Derivation zero_check_commact(const EncodedMachine& em, unsigned r, const std::array<std::uint64_t, 3>& regs);
Derivation zero_check_circular(const EncodedMachine& em, unsigned r, const std::array<std::uint64_t, 3>& regs,
                               const std::string& label);

struct CircularSynthesis {
  RunResult run;
  Derivation commact;  // checks in Calculus::CommAct
  Derivation circ;     // the circular proof it translates
};

CircularSynthesis synth_circular(const EncodedMachine& em, std::uint64_t x, std::uint64_t max_steps = 100000);

}  // namespace commact

#endif  // COMMACT_ENCODING_HPP
