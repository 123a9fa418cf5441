#ifndef COMMACT_MINSKY_HPP
#define COMMACT_MINSKY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace commact {

// Registers are exactly a, b, c (indices 0, 1, 2).
constexpr std::array<char, 3> kRegisters = {'a', 'b', 'c'};

struct Instruction {
  enum class Op { Inc, Jzdec } op = Op::Inc;
  std::string state;
  unsigned reg = 0;
  std::string next;       // Inc target, or Jzdec nonzero target
  std::string zero_next;  // Jzdec only

  static Instruction inc(std::string p, unsigned r, std::string q);
  static Instruction jzdec(std::string p, unsigned r, std::string q0, std::string q1);
};

class MachineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Machine {
  std::vector<std::string> states;  // order of first mention
  std::string start;
  std::string final_state;
  std::vector<Instruction> program;  // file order

  const Instruction* instruction_at(std::string_view state) const;
  bool has_state(std::string_view state) const;
};

// Checks the determinism and unique-final invariants; throws MachineError.
void validate(const Machine& m);
Machine parse_machine(std::string_view text);
// Builds and validates; states ordered start, instruction mentions, final.
Machine make_machine(std::string start, std::string final_state, std::vector<Instruction> program);

struct Configuration {
  std::string state;
  std::array<std::uint64_t, 3> regs{};

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
  std::string str() const;
};

// nullopt at the final state.
std::optional<Configuration> step(const Machine& m, const Configuration& c);

struct Trace {
  std::vector<Configuration> configs;
  bool halted = false;  // otherwise the step bound was hit
};

Trace run(const Machine& m, std::uint64_t x, std::uint64_t max_steps);

struct RunResult {
  enum class Kind { Halted, Circular, Exceeded } kind = Kind::Exceeded;
  std::uint64_t steps = 0;   // Halted: steps taken; Exceeded: the bound
  std::uint64_t prefix = 0;  // Circular
  std::uint64_t period = 0;  // Circular
  Configuration config;      // Halted: final; Circular: the repeated one
  std::vector<Configuration> trace;  // trace[0 .. prefix + period] for Circular
};

RunResult classify(const Machine& m, std::uint64_t x, std::uint64_t max_steps);
bool can_perform_k_steps(const Machine& m, const Configuration& c, std::uint64_t k);

// States reachable from the start state through the instruction graph.
std::vector<std::string> reachable_states(const Machine& m);

}  // namespace commact

#endif  // COMMACT_MINSKY_HPP
