#ifndef COMMACT_TESTS_SUPPORT_HPP
#define COMMACT_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "commact/calculus.hpp"
#include "commact/encoding.hpp"
#include "commact/minsky.hpp"

namespace testsupport {

using namespace commact;

struct NamedMachine {
  std::string name;
  Machine machine;
};

Machine pq_machine();         // INC(p,a,q), JZDEC(q,a,p,p), start p
Machine zero_loop_machine();  // JZDEC(qs,a,qs,qs)
Machine inc_loop_machine();   // INC(qs,a,qs)
Machine halting_machine();    // INC(qs,a,qf)
// The four above plus machines that move between registers and test b and c.
std::vector<NamedMachine> lemma_corpus();

using Rng = std::mt19937_64;

struct FormulaGen {
  std::vector<std::string> vars{"p", "q", "r"};
  bool stars = true;
  bool constants = true;
  Formula operator()(Rng& rng, unsigned depth) const;
};

Sequent random_sequent(Rng& rng, const FormulaGen& gen, unsigned depth, unsigned max_ante);
// Random sequent with no negative star (retries until one is found).
Sequent random_decidable_sequent(Rng& rng, const FormulaGen& gen, unsigned depth, unsigned max_ante);

// Exhaustive backward search trying every rule in every way, without the
// engine's invertible-first strategy. Only for small sequents.
bool naive_derivable(const Sequent& s);

struct CorpusProof {
  std::string name;
  Derivation proof;
  Calculus calculus;
};

// Synthesized machine proofs, schema proofs and search proofs.
std::vector<CorpusProof> golden_corpus();
// Finite OmegaFin proofs, each containing at least one Cut.
std::vector<CorpusProof> cut_corpus();

// Starred sequents, machine targets and random sequents for approximation checks.
std::vector<Sequent> approximation_corpus();

// Every node of d, preorder, with its path.
void for_each_node(const Derivation& d, const std::function<void(const Derivation&)>& fn);

// An independent re-implementation of the machine semantics.
bool oracle_can_step(const Machine& m, Configuration c, std::uint64_t k);

}  // namespace testsupport

#endif  // COMMACT_TESTS_SUPPORT_HPP
