#include "commact/approximation.hpp"

namespace commact {

namespace {

Formula approx(Formula f, unsigned n, bool negative) {
  if (!f.has_star()) return f;
  switch (f.kind()) {
    case Kind::Imp:
      return Formula::imp(approx(f.lhs(), n, !negative), approx(f.rhs(), n, negative));
    case Kind::Dot:
      return Formula::dot(approx(f.lhs(), n, negative), approx(f.rhs(), n, negative));
    case Kind::Vee:
      return Formula::vee(approx(f.lhs(), n, negative), approx(f.rhs(), n, negative));
    case Kind::Wedge:
      return Formula::wedge(approx(f.lhs(), n, negative), approx(f.rhs(), n, negative));
    case Kind::Star: {
      Formula body = approx(f.body(), n, negative);
      if (!negative) return Formula::star(body);
      std::vector<Formula> disjuncts;
      for (unsigned i = 0; i <= n; ++i) disjuncts.push_back(power(body, i));
      return fold_vee(disjuncts);
    }
    default:
      return f;
  }
}

}  // namespace

Formula neg_approx(Formula f, unsigned n) { return approx(f, n, true); }
Formula pos_approx(Formula f, unsigned n) { return approx(f, n, false); }

Sequent approximate_sequent(const Sequent& s, unsigned n) {
  std::vector<Formula> ante;
  for (auto f : s.antecedent()) ante.push_back(neg_approx(f, n));
  return Sequent(std::move(ante), pos_approx(s.succedent(), n));
}

ApproxResult refute(const Sequent& s, unsigned max_n, Prover& prover) {
  ApproxResult r;
  r.max_n = max_n;
  for (unsigned n = 0; n <= max_n; ++n) {
    Sequent a = approximate_sequent(s, n);
    if (!prover.decide_bool(a).value()) {
      r.refuted = true;
      r.witness_n = n;
      r.refuting_sequent = a;
      return r;
    }
  }
  return r;
}

ApproxResult refute(const Sequent& s, unsigned max_n) {
  Prover prover;
  return refute(s, max_n, prover);
}

}  // namespace commact
