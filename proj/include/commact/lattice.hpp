#ifndef COMMACT_LATTICE_HPP
#define COMMACT_LATTICE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "commact/derivation.hpp"

namespace commact {

using Table = std::vector<std::vector<unsigned>>;

struct FiniteActionLattice {
  unsigned n = 0;
  Table leq;  // 0/1 entries
  Table dot, vee, wedge, imp;
  std::vector<unsigned> star;
  unsigned zero = 0;
  unsigned one = 0;

  bool le(unsigned x, unsigned y) const { return leq[x][y] != 0; }
};

// Two-element Boolean model: product and meet are "and", star is constantly 1.
FiniteActionLattice boolean_lattice();

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FiniteActionLattice parse_lattice(std::string_view text);

// Every violated clause, exhaustively; empty means the tables form a
// commutative action lattice.
std::vector<std::string> validate_lattice(const FiniteActionLattice& l);
// star(x) against the join of x^0 .. x^(2n).
std::vector<std::string> star_continuity_violations(const FiniteActionLattice& l);

using Valuation = std::map<std::string, unsigned>;

unsigned eval(Formula f, const FiniteActionLattice& l, const Valuation& v);
bool sequent_holds(const Sequent& s, const FiniteActionLattice& l, const Valuation& v);

std::vector<std::string> variables_of(const Sequent& s);

struct SoundnessOptions {
  std::uint64_t exhaustive_cap = 1024;  // valuations
  unsigned trials = 1000;
  std::uint64_t seed = 20240611;
};

struct SoundnessResult {
  bool ok = true;
  bool exhaustive = true;
  std::uint64_t valuations = 0;
  std::optional<Valuation> counterexample;
};

SoundnessResult soundness_check(const Sequent& s, const FiniteActionLattice& l, SoundnessOptions options = {});
SoundnessResult soundness_check(const Derivation& d, const FiniteActionLattice& l, SoundnessOptions options = {});

std::string valuation_str(const Valuation& v);

}  // namespace commact

#endif  // COMMACT_LATTICE_HPP
