// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "commact/approximation.hpp"
#include "commact/lattice.hpp"
#include "commact/search.hpp"
#include "support.hpp"

using namespace commact;
using testsupport::Rng;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& name, const std::function<Verdict()>& body) {
  Verdict v;
  auto t0 = Clock::now();
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.1f s", seconds_since(t0));
  std::cout << (v.pass ? "PASS" : "FAIL") << " [" << n << "] " << name << ": " << v.detail << " (" << timing
            << ")" << std::endl;
  failures += !v.pass;
}

Verdict lemma_equivalence() {
  auto corpus = testsupport::lemma_corpus();
  std::vector<std::uint64_t> cases(corpus.size()), bad(corpus.size());
  std::vector<std::string> first(corpus.size());
  std::vector<std::thread> workers;
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    workers.emplace_back([&, i] {
      const Machine& m = corpus[i].machine;
      EncodedMachine em = encode(m);
      Prover prover;
      for (const auto& state : reachable_states(m)) {
        for (std::uint64_t a = 0; a <= 2; ++a) {
          for (std::uint64_t b = 0; b <= 2; ++b) {
            for (std::uint64_t c = 0; c <= 2; ++c) {
              Configuration cf{state, {a, b, c}};
              for (unsigned k = 0; k <= 3; ++k) {
                ++cases[i];
                bool logic = prover.decide_bool(k_step_sequent(em, cf, k)).value();
                if (logic != can_perform_k_steps(m, cf, k) && bad[i]++ == 0) {
                  first[i] = corpus[i].name + " " + cf.str() + " k=" + std::to_string(k);
                }
              }
            }
          }
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  double secs = seconds_since(t0);
  std::uint64_t total = 0, disagree = 0;
  std::string example;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    total += cases[i];
    disagree += bad[i];
    if (example.empty()) example = first[i];
  }
  std::ostringstream d;
  d << corpus.size() << " machines, " << total << " cases, " << disagree << " disagreements";
  if (!example.empty()) d << " (first: " << example << ")";
  return {disagree == 0 && corpus.size() >= 6 && secs <= 900, d.str()};
}

Verdict example_reproduction() {
  EncodedMachine em = encode(testsupport::pq_machine());
  Configuration start{"p", {0, 0, 0}};
  Derivation d = synth_k_step(em, start, 4);
  Sequent want = parse_sequent("(" + em.E.str() + ")^4, p |- " + em.D.str());
  bool ok = d.conclusion() == want && check(d, Calculus::OmegaFin).valid;
  auto t0 = Clock::now();
  bool searched = true;
  for (unsigned k = 0; k <= 3; ++k) searched = searched && decide(k_step_sequent(em, start, k), true).verdict ==
                                                               commact::Verdict::Derivable;
  double secs = seconds_since(t0);
  std::ostringstream out;
  out << "synthesized E^4, p |- D with " << d.size() << " nodes " << (ok ? "checks" : "does not check")
      << " in omega-fin; decide k=0..3 " << (searched ? "derivable" : "not all derivable");
  return {ok && searched && secs <= 300, out.str()};
}

Verdict circular_reproduction() {
  std::ostringstream out;
  bool ok = true;
  for (const auto& [name, m] : {std::pair{"zero-loop", testsupport::zero_loop_machine()},
                                std::pair{"pq", testsupport::pq_machine()}}) {
    EncodedMachine em = encode(m);
    CircularSynthesis cs = synth_circular(em, 0);
    auto t0 = Clock::now();
    bool valid = check(cs.commact, Calculus::CommAct).valid;
    double secs = seconds_since(t0);
    bool good = valid && cs.commact.conclusion() == target_sequent(em, 0) && secs < 10;
    ok = ok && good;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", secs);
    out << (out.tellp() > 0 ? "; " : "") << name << " " << (good ? "valid" : "INVALID") << ", "
        << cs.commact.size() << " nodes checked in " << buf << " s";
  }
  return {ok, out.str()};
}

Verdict refutation() {
  EncodedMachine em = encode(testsupport::halting_machine());
  ApproxResult r = refute(target_sequent(em, 0), 3);
  if (!r.refuted) return {false, "no witness up to n=3"};
  bool confirmed = decide(*r.refuting_sequent, false).verdict == commact::Verdict::NotDerivable;
  return {r.witness_n <= 2 && confirmed, "witness n=" + std::to_string(r.witness_n) +
                                             (confirmed ? ", decide confirms not derivable" : ", decide disagrees")};
}

Verdict cut_elimination() {
  auto corpus = testsupport::cut_corpus();
  int good = 0;
  std::string first;
  for (const auto& item : corpus) {
    bool ok = item.proof.uses(Rule::Cut) && check(item.proof, Calculus::OmegaFin).valid;
    if (ok) {
      Derivation out = eliminate_cuts(item.proof);
      ok = !out.uses(Rule::Cut) && out.conclusion() == item.proof.conclusion() &&
           check(out, Calculus::OmegaFin).valid;
    }
    if (ok) {
      ++good;
    } else if (first.empty()) {
      first = item.name;
    }
  }
  std::string detail = std::to_string(good) + "/" + std::to_string(corpus.size()) + " proofs cut-free";
  if (!first.empty()) detail += " (first failure: " + first + ")";
  return {corpus.size() >= 20 && good == static_cast<int>(corpus.size()), detail};
}

// A random instance of a finite rule: premises and conclusion as sequents.
struct Instance {
  Rule rule;
  std::vector<Sequent> premises;
  Sequent conclusion;
  std::optional<Formula> cut;
};

Instance random_instance(Rng& rng, const testsupport::FormulaGen& gen) {
  auto form = [&] { return gen(rng, 2); };
  auto ctx = [&] {
    std::vector<Formula> out;
    for (int n = std::uniform_int_distribution<int>(0, 2)(rng); n > 0; --n) out.push_back(form());
    return out;
  };
  auto plus = [](std::vector<Formula> a, const std::vector<Formula>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  Formula A = form(), B = form(), C = form();
  auto G = ctx(), P = ctx();
  switch (std::uniform_int_distribution<int>(0, 13)(rng)) {
    case 0: return {Rule::OneL, {Sequent(G, C)}, Sequent(plus(G, {Formula::one()}), C), {}};
    case 1:
      return {Rule::ImpL, {Sequent(P, A), Sequent(plus(G, {B}), C)}, Sequent(plus(plus(G, P), {Formula::imp(A, B)}), C),
              {}};
    case 2: return {Rule::ImpR, {Sequent(plus({A}, P), B)}, Sequent(P, Formula::imp(A, B)), {}};
    case 3: return {Rule::DotL, {Sequent(plus(G, {A, B}), C)}, Sequent(plus(G, {Formula::dot(A, B)}), C), {}};
    case 4: return {Rule::DotR, {Sequent(G, A), Sequent(P, B)}, Sequent(plus(G, P), Formula::dot(A, B)), {}};
    case 5:
      return {Rule::VeeL, {Sequent(plus(G, {A}), C), Sequent(plus(G, {B}), C)},
              Sequent(plus(G, {Formula::vee(A, B)}), C), {}};
    case 6: return {Rule::VeeR1, {Sequent(G, A)}, Sequent(G, Formula::vee(A, B)), {}};
    case 7: return {Rule::VeeR2, {Sequent(G, B)}, Sequent(G, Formula::vee(A, B)), {}};
    case 8: return {Rule::WedgeL1, {Sequent(plus(G, {A}), C)}, Sequent(plus(G, {Formula::wedge(A, B)}), C), {}};
    case 9: return {Rule::WedgeL2, {Sequent(plus(G, {B}), C)}, Sequent(plus(G, {Formula::wedge(A, B)}), C), {}};
    case 10: return {Rule::WedgeR, {Sequent(G, A), Sequent(G, B)}, Sequent(G, Formula::wedge(A, B)), {}};
    case 11: {
      int n = std::uniform_int_distribution<int>(1, 3)(rng);
      std::vector<Sequent> ps;
      std::vector<Formula> all;
      for (int i = 0; i < n; ++i) {
        auto part = plus(ctx(), {form()});
        all = plus(all, part);
        ps.emplace_back(part, A);
      }
      return {Rule::StarRN, ps, Sequent(all, Formula::star(A)), {}};
    }
    case 12: return {Rule::Cut, {Sequent(P, A), Sequent(plus(G, {A}), C)}, Sequent(plus(G, P), C), A};
    default: return {Rule::StarRN, {}, Sequent(Formula::star(A)), {}};
  }
}

Verdict rank_and_invertibility() {
  Rng rng(606);
  testsupport::FormulaGen gen;
  int instances = 0, rank_failures = 0, invalid = 0;
  while (instances < 1000) {
    Instance in = random_instance(rng, gen);
    std::vector<const Sequent*> ps;
    for (const auto& p : in.premises) ps.push_back(&p);
    if (check_step(in.rule, in.conclusion, ps, in.cut, Calculus::OmegaFin)) {
      ++invalid;
      continue;
    }
    ++instances;
    if (in.rule == Rule::Cut) continue;
    for (const auto& p : in.premises) {
      if (compare_rank(rank(p), rank(in.conclusion)) != std::strong_ordering::less) ++rank_failures;
    }
  }

  Prover prover;
  int derivable = 0, not_inverted = 0, tries = 0;
  while (derivable < 200 && tries < 200000) {
    ++tries;
    Sequent base = testsupport::random_decidable_sequent(rng, gen, 2, 2);
    Formula A = gen(rng, 1), B = gen(rng, 1);
    bool vee = tries % 2 == 0;
    std::vector<Formula> ante = base.antecedent();
    ante.push_back(vee ? Formula::vee(A, B) : Formula::dot(A, B));
    Sequent s(ante, base.succedent());
    if (has_negative_star(s) || !*prover.decide_bool(s)) continue;
    ++derivable;
    std::vector<Sequent> premises;
    if (vee) {
      std::vector<Formula> l = base.antecedent(), r = base.antecedent();
      l.push_back(A);
      r.push_back(B);
      premises = {Sequent(l, s.succedent()), Sequent(r, s.succedent())};
    } else {
      std::vector<Formula> p = base.antecedent();
      p.push_back(A);
      p.push_back(B);
      premises = {Sequent(p, s.succedent())};
    }
    for (const auto& p : premises) not_inverted += !*prover.decide_bool(p);
  }
  std::ostringstream out;
  out << instances << " rule instances (" << invalid << " rejected), " << rank_failures
      << " without rank decrease; " << derivable
      << " derivable \\/L and .L conclusions, " << not_inverted << " underivable premises";
  return {instances == 1000 && invalid == 0 && rank_failures == 0 && derivable == 200 && not_inverted == 0, out.str()};
}

Verdict soundness() {
  FiniteActionLattice b2 = boolean_lattice();
  if (!validate_lattice(b2).empty() || !star_continuity_violations(b2).empty()) return {false, "B2 does not validate"};
  auto corpus = testsupport::golden_corpus();
  int counterexamples = 0, exhaustive = 0;
  std::string first;
  for (const auto& item : corpus) {
    SoundnessResult r = soundness_check(item.proof, b2);
    exhaustive += r.exhaustive;
    if (!r.ok) {
      ++counterexamples;
      if (first.empty()) first = item.name + " " + valuation_str(*r.counterexample);
    }
  }
  std::string detail = std::to_string(corpus.size()) + " derivations (" + std::to_string(exhaustive) +
                       " exhaustive), " + std::to_string(counterexamples) + " counterexamples";
  if (!first.empty()) detail += " (first: " + first + ")";
  return {counterexamples == 0, detail};
}

Verdict approximation_laws() {
  Rng rng(808);
  testsupport::FormulaGen gen;
  int fixed = 0, moved = 0;
  for (int i = 0; i < 500; ++i) {
    Sequent s = testsupport::random_decidable_sequent(rng, gen, 3, 4);
    for (unsigned n = 0; n <= 2; ++n) (approximate_sequent(s, n) == s ? fixed : moved)++;
  }
  Prover prover;
  int checked = 0, broken = 0;
  for (const Sequent& s : testsupport::approximation_corpus()) {
    ++checked;
    bool lower_failed = false;
    for (unsigned n = 0; n <= 2; ++n) {
      bool d = *prover.decide_bool(approximate_sequent(s, n));
      if (d && lower_failed) {
        ++broken;
        break;
      }
      lower_failed = lower_failed || !d;
    }
  }
  std::ostringstream out;
  out << fixed << " fixpoints, " << moved << " moved; " << checked << " corpus sequents, " << broken
      << " closure violations";
  return {moved == 0 && broken == 0, out.str()};
}

}  // namespace

int main() {
  report(1, "k-step oracle equivalence", lemma_equivalence);
  report(2, "four-step example", example_reproduction);
  report(3, "circular derivations", circular_reproduction);
  report(4, "refutation by approximation", refutation);
  report(5, "cut elimination", cut_elimination);
  report(6, "rank decrease and invertibility", rank_and_invertibility);
  report(7, "soundness in B2", soundness);
  report(8, "approximation fixpoint and downward closure", approximation_laws);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
