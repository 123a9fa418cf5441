#ifndef COMMACT_PROOF_IO_HPP
#define COMMACT_PROOF_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "commact/calculus.hpp"

namespace commact {

struct ProofFile {
  Calculus calculus;
  Derivation root;
};

class ProofSyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (proof <calculus> <node>), see README for the node grammar.
std::string write_proof(const Derivation& d, Calculus c);
ProofFile read_proof(std::string_view text);

}  // namespace commact

#endif  // COMMACT_PROOF_IO_HPP
