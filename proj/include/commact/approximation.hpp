#ifndef COMMACT_APPROXIMATION_HPP
#define COMMACT_APPROXIMATION_HPP

#include <optional>

#include "commact/search.hpp"

namespace commact {

// N_n: negative positions, where A^* becomes 1 \/ A \/ ... \/ A^n.
Formula neg_approx(Formula f, unsigned n);
// P_n: positive positions, stars kept.
Formula pos_approx(Formula f, unsigned n);
Sequent approximate_sequent(const Sequent& s, unsigned n);

struct ApproxResult {
  bool refuted = false;
  unsigned witness_n = 0;                   // refuted only
  std::optional<Sequent> refuting_sequent;  // refuted only
  unsigned max_n = 0;
};

// Least n <= max_n whose approximation is not derivable.
ApproxResult refute(const Sequent& s, unsigned max_n, Prover& prover);
ApproxResult refute(const Sequent& s, unsigned max_n);

}  // namespace commact

#endif  // COMMACT_APPROXIMATION_HPP
