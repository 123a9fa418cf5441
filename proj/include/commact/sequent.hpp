#ifndef COMMACT_SEQUENT_HPP
#define COMMACT_SEQUENT_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "commact/formula.hpp"

namespace commact {

// Multiset antecedent plus one succedent. The antecedent is kept sorted by
// printed form, so equal multisets compare and hash equal.
class Sequent {
 public:
  Sequent(std::vector<Formula> antecedent, Formula succedent);
  explicit Sequent(Formula succedent) : succedent_(succedent) {}

  const std::vector<Formula>& antecedent() const { return antecedent_; }
  Formula succedent() const { return succedent_; }

  std::string str() const;

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.succedent_ == b.succedent_ && a.antecedent_ == b.antecedent_;
  }

 private:
  std::vector<Formula> antecedent_;
  Formula succedent_;
};

std::ostream& operator<<(std::ostream& os, const Sequent& s);

Sequent parse_sequent(std::string_view text);

// Multiset helpers over canonical (text-sorted) formula lists.
std::vector<Formula> multiset_union(const std::vector<Formula>& a, const std::vector<Formula>& b);
// Removes one copy of each element of `b`; returns false if `b` is not contained in `a`.
bool multiset_difference(const std::vector<Formula>& a, const std::vector<Formula>& b,
                         std::vector<Formula>& out);
void canonicalize(std::vector<Formula>& items);

// Sparse count of subformula occurrences per complexity level.
class Rank {
 public:
  void add(std::uint32_t level, std::uint64_t count = 1);
  std::uint64_t at(std::uint32_t level) const;
  const std::map<std::uint32_t, std::uint64_t>& counts() const { return counts_; }
  std::string str() const;

  friend bool operator==(const Rank&, const Rank&) = default;

 private:
  std::map<std::uint32_t, std::uint64_t> counts_;
};

// Anti-lexicographic: the greatest level where the counts differ decides.
std::strong_ordering compare_rank(const Rank& a, const Rank& b);

void add_formula_rank(Rank& rank, Formula f);
Rank rank(const Sequent& s);

enum class Polarity : std::uint8_t { Positive, Negative };

struct StarOccurrence {
  bool in_succedent = false;
  std::size_t formula_index = 0;    // antecedent index (ignored for the succedent)
  std::vector<std::uint8_t> path;   // 0 = lhs / star body, 1 = rhs
  Polarity polarity = Polarity::Positive;
};

std::vector<StarOccurrence> star_polarities(const Sequent& s);
bool has_negative_star(const Sequent& s);
// True when some star occurs in `f` with the given polarity, `f` itself having `outer` polarity.
bool has_star_with_polarity(Formula f, Polarity outer, Polarity wanted);

}  // namespace commact

template <>
struct std::hash<commact::Sequent> {
  std::size_t operator()(const commact::Sequent& s) const noexcept {
    std::size_t h = std::hash<commact::Formula>()(s.succedent());
    for (auto f : s.antecedent()) {
      h ^= std::hash<commact::Formula>()(f) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

#endif  // COMMACT_SEQUENT_HPP
