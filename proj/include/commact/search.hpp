#ifndef COMMACT_SEARCH_HPP
#define COMMACT_SEARCH_HPP

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "commact/derivation.hpp"

namespace commact {

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t max_depth = 0;
  std::chrono::nanoseconds elapsed{0};
};

enum class Verdict { Derivable, NotDerivable, Refused };

struct SearchOutcome {
  Verdict verdict = Verdict::NotDerivable;
  std::optional<Derivation> proof;  // Derivable with emit_proof only
  SearchStats stats;
  std::string reason;  // Refused only
};

struct SearchOptions {
  // Asserts that every premise has strictly smaller rank than its conclusion.
  bool check_rank = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

class SearchAborted : public std::runtime_error {
 public:
  SearchAborted() : std::runtime_error("search budget exceeded") {}
};

// Cut-free backward search over the finite fragment. The memo table persists
// across queries on one Prover, which pays off on families of related goals.
class Prover {
 public:
  explicit Prover(SearchOptions options = {});
  ~Prover();
  Prover(Prover&&) noexcept;
  Prover& operator=(Prover&&) noexcept;

  SearchOutcome decide(const Sequent& s, bool emit_proof);
  // nullopt when refused.
  std::optional<bool> decide_bool(const Sequent& s);

  // Totals over every query so far.
  const SearchStats& total_stats() const;
  void clear();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SearchOutcome decide(const Sequent& s, bool emit_proof = true, SearchOptions options = {});
std::optional<bool> decide_bool(const Sequent& s);

std::string_view verdict_name(Verdict v);

}  // namespace commact

#endif  // COMMACT_SEARCH_HPP
