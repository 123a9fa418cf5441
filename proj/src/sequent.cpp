#include "commact/sequent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace commact {

void canonicalize(std::vector<Formula>& items) {
  std::sort(items.begin(), items.end(), FormulaTextLess());
}

Sequent::Sequent(std::vector<Formula> antecedent, Formula succedent)
    : antecedent_(std::move(antecedent)), succedent_(succedent) {
  canonicalize(antecedent_);
}

std::string Sequent::str() const {
  std::string out;
  for (std::size_t i = 0; i < antecedent_.size(); ++i) {
    if (i) out += ", ";
    out += antecedent_[i].str();
  }
  out += antecedent_.empty() ? "|- " : " |- ";
  out += succedent_.str();
  return out;
}

std::ostream& operator<<(std::ostream& os, const Sequent& s) { return os << s.str(); }

std::vector<Formula> multiset_union(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  std::vector<Formula> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), FormulaTextLess());
  return out;
}

bool multiset_difference(const std::vector<Formula>& a, const std::vector<Formula>& b,
                         std::vector<Formula>& out) {
  out.clear();
  FormulaTextLess less;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (j < b.size() && a[i] == b[j]) {
      ++j;
      continue;
    }
    if (j < b.size() && less(b[j], a[i])) return false;
    out.push_back(a[i]);
  }
  return j == b.size();
}

void Rank::add(std::uint32_t level, std::uint64_t count) {
  if (count) counts_[level] += count;
}

std::uint64_t Rank::at(std::uint32_t level) const {
  auto it = counts_.find(level);
  return it == counts_.end() ? 0 : it->second;
}

std::string Rank::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [level, count] : counts_) {
    if (!first) os << ", ";
    first = false;
    os << level << ": " << count;
  }
  os << '}';
  return os.str();
}

std::strong_ordering compare_rank(const Rank& a, const Rank& b) {
  auto ia = a.counts().rbegin(), ea = a.counts().rend();
  auto ib = b.counts().rbegin(), eb = b.counts().rend();
  while (ia != ea || ib != eb) {
    if (ib == eb) return std::strong_ordering::greater;
    if (ia == ea) return std::strong_ordering::less;
    if (ia->first != ib->first) {
      return ia->first > ib->first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (ia->second != ib->second) return ia->second <=> ib->second;
    ++ia;
    ++ib;
  }
  return std::strong_ordering::equal;
}

void add_formula_rank(Rank& rank, Formula f) {
  rank.add(f.complexity());
  switch (f.kind()) {
    case Kind::Star:
      add_formula_rank(rank, f.body());
      break;
    case Kind::Imp:
    case Kind::Dot:
    case Kind::Vee:
    case Kind::Wedge:
      add_formula_rank(rank, f.lhs());
      add_formula_rank(rank, f.rhs());
      break;
    default:
      break;
  }
}

Rank rank(const Sequent& s) {
  Rank r;
  for (auto f : s.antecedent()) add_formula_rank(r, f);
  add_formula_rank(r, s.succedent());
  return r;
}

namespace {

Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

void collect_stars(Formula f, Polarity pol, std::vector<std::uint8_t>& path, StarOccurrence proto,
                   std::vector<StarOccurrence>& out) {
  if (!f.has_star()) return;
  switch (f.kind()) {
    case Kind::Star:
      proto.path = path;
      proto.polarity = pol;
      out.push_back(proto);
      path.push_back(0);
      collect_stars(f.body(), pol, path, proto, out);
      path.pop_back();
      break;
    case Kind::Imp:
      path.push_back(0);
      collect_stars(f.lhs(), flip(pol), path, proto, out);
      path.back() = 1;
      collect_stars(f.rhs(), pol, path, proto, out);
      path.pop_back();
      break;
    case Kind::Dot:
    case Kind::Vee:
    case Kind::Wedge:
      path.push_back(0);
      collect_stars(f.lhs(), pol, path, proto, out);
      path.back() = 1;
      collect_stars(f.rhs(), pol, path, proto, out);
      path.pop_back();
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<StarOccurrence> star_polarities(const Sequent& s) {
  std::vector<StarOccurrence> out;
  std::vector<std::uint8_t> path;
  for (std::size_t i = 0; i < s.antecedent().size(); ++i) {
    StarOccurrence proto;
    proto.formula_index = i;
    collect_stars(s.antecedent()[i], Polarity::Negative, path, proto, out);
  }
  StarOccurrence proto;
  proto.in_succedent = true;
  collect_stars(s.succedent(), Polarity::Positive, path, proto, out);
  return out;
}

bool has_star_with_polarity(Formula f, Polarity outer, Polarity wanted) {
  if (!f.has_star()) return false;
  switch (f.kind()) {
    case Kind::Star:
      return outer == wanted || has_star_with_polarity(f.body(), outer, wanted);
    case Kind::Imp:
      return has_star_with_polarity(f.lhs(), flip(outer), wanted) ||
             has_star_with_polarity(f.rhs(), outer, wanted);
    case Kind::Dot:
    case Kind::Vee:
    case Kind::Wedge:
      return has_star_with_polarity(f.lhs(), outer, wanted) ||
             has_star_with_polarity(f.rhs(), outer, wanted);
    default:
      return false;
  }
}

bool has_negative_star(const Sequent& s) {
  for (auto f : s.antecedent()) {
    if (has_star_with_polarity(f, Polarity::Negative, Polarity::Negative)) return true;
  }
  return has_star_with_polarity(s.succedent(), Polarity::Positive, Polarity::Negative);
}

}  // namespace commact
