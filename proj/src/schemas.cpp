#include <stdexcept>

#include "commact/calculus.hpp"

namespace commact {

Derivation star_unfold_schema(Formula a) {
  Formula st = Formula::star(a);
  Formula step = Formula::dot(a, st);

  Derivation base = build::vee_r1(build::one_r(), step);
  // a, 1 |- inv
  Derivation from_one = build::one_l(build::vee_r2(build::dot_r(build::id(a), build::star_r0(a)), Formula::one()));
  // a, a . a^* |- inv
  Derivation from_step =
      build::dot_l(build::vee_r2(build::dot_r(build::id(a), build::star_r_ind(a)), Formula::one()), a, st);
  return build::star_l_ind(base, build::vee_l(from_one, from_step, Formula::one(), step), a);
}

Formula bounded_powers(Formula e, unsigned k) {
  if (k == 0) throw std::invalid_argument("bounded_powers: k must be positive");
  std::vector<Formula> items;
  for (unsigned i = 0; i < k; ++i) items.push_back(power(e, i));
  return fold_vee(items);
}

namespace {

// Path to disjunct i of a right-associated disjunction of k items.
std::vector<std::uint8_t> disjunct_path(unsigned i, unsigned k) {
  std::vector<std::uint8_t> path(i, 1);
  if (i + 1 < k) path.push_back(0);
  return path;
}

// The part of a right-associated fold starting at item i.
Formula suffix(Formula whole, unsigned i) {
  for (unsigned j = 0; j < i; ++j) whole = whole.rhs();
  return whole;
}

// e, e^i |- e^(i+1)
Derivation grow_power(Formula e, unsigned i) {
  if (i == 0) return build::one_l(build::id(e));
  return build::dot_r(build::id(e), build::id(power(e, i)));
}

}  // namespace

Derivation kleene_split_schema(Formula e, unsigned k) {
  if (k == 0) throw std::invalid_argument("kleene_split_schema: k must be positive");
  Formula s = bounded_powers(e, k);
  Formula ek = power(e, k);
  Formula t = Formula::star(ek);

  Derivation unit = k == 1 ? build::one_r() : build::vee_r1(build::one_r(), s.rhs());
  Derivation base = build::dot_r(unit, build::star_r0(ek));

  // e, e^i, t |- s . t for each disjunct
  std::vector<Derivation> cases;
  for (unsigned i = 0; i < k; ++i) {
    if (i + 1 < k) {
      Derivation grown = build::vee_r_path(grow_power(e, i), s, disjunct_path(i + 1, k));
      cases.push_back(build::dot_r(grown, build::id(t)));
    } else {
      Derivation wrap = k == 1 ? build::one_l(build::star_r_ind(e))
                               : build::cut(grow_power(e, i), build::star_r_ind(ek));
      cases.push_back(build::dot_r(unit, wrap));
    }
  }
  Derivation acc = cases.back();
  for (unsigned i = k - 1; i-- > 0;) {
    acc = build::vee_l(cases[i], acc, power(e, i), suffix(s, i + 1));
  }
  Derivation step = build::dot_l(acc, s, t);
  return build::star_l_ind(base, step, e);
}

Derivation derived_star_left(const std::vector<Formula>& gamma, Formula a, Formula c, const Derivation& p1,
                             const Derivation& p2) {
  Formula st = Formula::star(a);
  if (p1.conclusion() != Sequent(gamma, c)) {
    throw std::invalid_argument("derived_star_left: first premise must prove " + Sequent(gamma, c).str());
  }
  std::vector<Formula> wider = gamma;
  wider.push_back(st);
  wider.push_back(a);
  if (p2.conclusion() != Sequent(wider, c)) {
    throw std::invalid_argument("derived_star_left: second premise must prove " + Sequent(wider, c).str());
  }
  Formula step = Formula::dot(a, st);
  Derivation cases = build::vee_l(build::one_l(p1), build::dot_l(p2, a, st), Formula::one(), step);
  return build::cut(star_unfold_schema(a), cases);
}

Derivation star_of_copies(Formula body, unsigned n, Calculus style) {
  switch (style) {
    case Calculus::OmegaFin:
      return build::star_rn(body, std::vector<Derivation>(n, build::id(body)));
    case Calculus::CommAct:
      if (n == 0) return build::star_r0(body);
      return build::cut(star_of_copies(body, n - 1, style), build::star_r_ind(body));
    case Calculus::Circ:
      if (n == 0) return build::star_r0(body);
      return build::star_r_step(build::id(body), star_of_copies(body, n - 1, style));
  }
  throw std::invalid_argument("star_of_copies: unknown calculus");
}

}  // namespace commact
