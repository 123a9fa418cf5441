#ifndef COMMACT_CALCULUS_HPP
#define COMMACT_CALCULUS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "commact/derivation.hpp"

namespace commact {

// OmegaFin: the infinitary calculus minus its omega-rule (finite proofs, *R_n).
// CommAct:  finitary calculus with *R_0, A, A^* |- A^* and the induction rule.
// Circ:     two-premise *L, *R_0, step *R, and backlinks.
enum class Calculus { OmegaFin, CommAct, Circ };

std::string_view calculus_name(Calculus c);
std::optional<Calculus> calculus_from_name(std::string_view name);

struct CheckReport {
  bool valid = true;
  std::vector<std::size_t> path;  // premise indices from the root to the offending node
  std::string reason;

  std::string str() const;
};

// Validates a single inference. Returns the violation, if any.
std::optional<std::string> check_step(Rule rule, const Sequent& conclusion,
                                      const std::vector<const Sequent*>& premises,
                                      const std::optional<Formula>& cut_formula, Calculus calculus);

CheckReport check(const Derivation& d, Calculus calculus);

class InvalidDerivation : public std::runtime_error {
 public:
  explicit InvalidDerivation(CheckReport report)
      : std::runtime_error("invalid derivation: " + report.str()), report_(std::move(report)) {}
  const CheckReport& report() const { return report_; }

 private:
  CheckReport report_;
};

// For OmegaFin proofs: an equivalent Cut-free proof of the same sequent.
// Throws InvalidDerivation when the input does not check.
Derivation eliminate_cuts(const Derivation& d);

// Principal formula of a left rule application (ZeroL, OneL, DotL, VeeL,
// WedgeL*, ImpL, StarL2), recovered from the premise shapes.
std::optional<Formula> left_principal(const Derivation& d);

// --- Star proof schemas (CommAct) ---

// a^* |- 1 \/ (a . a^*)
Derivation star_unfold_schema(Formula a);

// 1 \/ e \/ ... \/ e^(k-1), right-associated; just 1 when k = 1.
Formula bounded_powers(Formula e, unsigned k);

// e^* |- bounded_powers(e, k) . (e^k)^*
Derivation kleene_split_schema(Formula e, unsigned k);

// Gamma, A^* |- C from p1: Gamma |- C and p2: Gamma, A^*, A |- C.
Derivation derived_star_left(const std::vector<Formula>& gamma, Formula a, Formula c,
                             const Derivation& p1, const Derivation& p2);

// body^n |- body^* (n separate copies), in the star-right style of the calculus.
Derivation star_of_copies(Formula body, unsigned n, Calculus style);

}  // namespace commact

#endif  // COMMACT_CALCULUS_HPP
