#include "commact/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "commact/approximation.hpp"
#include "commact/encoding.hpp"
#include "commact/lattice.hpp"
#include "commact/proof_io.hpp"
#include "commact/search.hpp"

namespace commact {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// Inline text, or the contents of a file when prefixed with '@'.
std::string inline_or_file(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return read_text(arg.substr(1));
  return arg;
}

Configuration parse_config(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 4) throw UsageError("--config expects state,a,b,c");
  Configuration c{parts[0], {}};
  for (unsigned r = 0; r < 3; ++r) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(parts[r + 1], &used);
      if (used != parts[r + 1].size() || v < 0) throw std::invalid_argument(parts[r + 1]);
      c.regs[r] = static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
      throw UsageError("--config: bad counter '" + parts[r + 1] + "'");
    }
  }
  return c;
}

FiniteActionLattice load_lattice(const std::string& arg) {
  if (arg == "builtin:b2") return boolean_lattice();
  return parse_lattice(read_text(arg));
}

Valuation parse_valuation(const std::string& text) {
  Valuation v;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--val expects name=element pairs");
    v[item.substr(0, eq)] = static_cast<unsigned>(std::stoul(item.substr(eq + 1)));
  }
  return v;
}

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int result(int code, const std::string& token) {
    out_ << "RESULT: " << token << "\n";
    return code;
  }

  int prove(const std::string& arg, const std::string& emit, double budget, bool stats) {
    Sequent s = parse_sequent(inline_or_file(arg));
    SearchOptions options;
    if (budget > 0) {
      options.deadline = std::chrono::steady_clock::now() +
                         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(budget));
    }
    SearchOutcome o;
    try {
      o = decide(s, !emit.empty(), options);
    } catch (const SearchAborted&) {
      return result(kExitBudget, "budget-exceeded");
    }
    if (o.verdict == Verdict::Refused) return result(kExitInconclusive, "refused " + o.reason);
    if (stats) {
      out_ << "nodes-expanded " << o.stats.nodes_expanded << "\nmemo-hits " << o.stats.memo_hits
           << "\nmax-depth " << o.stats.max_depth << "\nelapsed-ms "
           << std::chrono::duration<double, std::milli>(o.stats.elapsed).count() << "\n";
    }
    if (o.verdict == Verdict::NotDerivable) return result(kExitNegative, "not-derivable");
    if (!emit.empty()) {
      write_text(emit, write_proof(*o.proof, Calculus::OmegaFin));
      out_ << "proof written to " << emit << " (" << o.proof->size() << " nodes)\n";
    }
    return result(kExitPositive, "derivable");
  }

  int check_file(const std::string& path, const std::string& calculus) {
    ProofFile f = read_proof(read_text(path));
    Calculus c = f.calculus;
    if (!calculus.empty()) c = *calculus_from_name(calculus);
    CheckReport r = check(f.root, c);
    out_ << "conclusion: " << f.root.conclusion() << "\n";
    if (!r.valid) {
      out_ << r.str() << "\n";
      return result(kExitNegative, "invalid");
    }
    return result(kExitPositive, "valid");
  }

  int approx(const std::string& arg, unsigned n, const std::string& emit) {
    Sequent a = approximate_sequent(parse_sequent(inline_or_file(arg)), n);
    out_ << a << "\n";
    if (!emit.empty()) write_text(emit, a.str() + "\n");
    return result(kExitPositive, "approximated n=" + std::to_string(n));
  }

  int refute_cmd(const std::string& arg, unsigned max_n) {
    Sequent s = parse_sequent(inline_or_file(arg));
    ApproxResult r = refute(s, max_n);
    if (r.refuted) {
      out_ << "witness approximation: " << *r.refuting_sequent << "\n";
      return result(kExitNegative, "refuted n=" + std::to_string(r.witness_n));
    }
    return result(kExitInconclusive, "all-derivable-up-to n=" + std::to_string(max_n));
  }

  int cutelim(const std::string& path, const std::string& emit) {
    ProofFile f = read_proof(read_text(path));
    Derivation d = f.root;
    try {
      d = eliminate_cuts(f.root);
    } catch (const InvalidDerivation& e) {
      out_ << e.report().str() << "\n";
      return result(kExitNegative, "invalid");
    }
    out_ << "nodes " << f.root.size() << " -> " << d.size() << "\n";
    if (!emit.empty()) write_text(emit, write_proof(d, Calculus::OmegaFin));
    return result(kExitPositive, "cut-free");
  }

  int minsky(const std::string& mode, const std::string& path, std::uint64_t x, std::uint64_t max_steps) {
    Machine m = parse_machine(read_text(path));
    if (mode == "run") {
      Trace t = run(m, x, max_steps);
      for (const auto& c : t.configs) out_ << c.str() << "\n";
      if (t.halted) return result(kExitPositive, "halted steps=" + std::to_string(t.configs.size() - 1));
      return result(kExitInconclusive, "exceeded bound=" + std::to_string(max_steps));
    }
    RunResult r = classify(m, x, max_steps);
    switch (r.kind) {
      case RunResult::Kind::Halted:
        out_ << "final configuration " << r.config.str() << "\n";
        return result(kExitPositive, "halted steps=" + std::to_string(r.steps));
      case RunResult::Kind::Circular:
        out_ << "repeated configuration " << r.config.str() << "\n";
        return result(kExitPositive,
                      "circular prefix=" + std::to_string(r.prefix) + " period=" + std::to_string(r.period));
      case RunResult::Kind::Exceeded:
        break;
    }
    return result(kExitInconclusive, "exceeded bound=" + std::to_string(max_steps));
  }

  int encode_cmd(const std::string& path, std::optional<std::uint64_t> x, const std::string& config, unsigned k,
                 const std::string& emit) {
    EncodedMachine em = encode(parse_machine(read_text(path)));
    out_ << "E = " << em.E << "\nD = " << em.D << "\n";
    std::optional<Sequent> s;
    if (!config.empty()) {
      s = k_step_sequent(em, parse_config(config), k);
    } else if (x) {
      s = target_sequent(em, *x);
    }
    if (s) {
      out_ << *s << "\n";
      if (!emit.empty()) write_text(emit, s->str() + "\n");
    }
    return result(kExitPositive, "encoded");
  }

  int synth(const std::string& mode, const std::string& path, const std::string& config, unsigned k,
            std::uint64_t x, std::uint64_t max_steps, const std::string& emit, const std::string& emit_circ) {
    EncodedMachine em = encode(parse_machine(read_text(path)));
    if (mode == "kstep") {
      if (config.empty()) throw UsageError("synth kstep needs --config");
      Configuration c = parse_config(config);
      if (!em.machine.has_state(c.state)) throw UsageError("unknown state " + c.state);
      if (!can_perform_k_steps(em.machine, c, k)) {
        return result(kExitNegative, "precondition-failed cannot perform " + std::to_string(k) + " steps");
      }
      Derivation d = synth_k_step(em, c, k);
      return report(d, Calculus::OmegaFin, emit);
    }
    RunResult r = classify(em.machine, x, max_steps);
    if (r.kind == RunResult::Kind::Halted) return result(kExitNegative, "precondition-failed halts");
    if (r.kind == RunResult::Kind::Exceeded) return result(kExitInconclusive, "precondition-failed exceeded");
    CircularSynthesis cs = synth_circular(em, x, max_steps);
    if (!emit_circ.empty()) {
      CheckReport cr = check(cs.circ, Calculus::Circ);
      out_ << "circular witness: " << cr.str() << "\n";
      write_text(emit_circ, write_proof(cs.circ, Calculus::Circ));
    }
    return report(cs.commact, Calculus::CommAct, emit);
  }

  int model(const std::string& mode, const std::string& lattice, const std::string& formula,
            const std::string& val, const std::string& proof, const std::string& sequent, SoundnessOptions so) {
    FiniteActionLattice l = load_lattice(lattice);
    if (mode == "check") {
      auto v = validate_lattice(l);
      auto sc = star_continuity_violations(l);
      for (const auto& s : v) out_ << "violation: " << s << "\n";
      for (const auto& s : sc) out_ << "not *-continuous: " << s << "\n";
      if (!v.empty()) return result(kExitNegative, "invalid violations=" + std::to_string(v.size()));
      return result(kExitPositive, sc.empty() ? "ok star-continuous" : "ok not-star-continuous");
    }
    if (mode == "eval") {
      if (formula.empty()) throw UsageError("model eval needs --formula");
      unsigned e = eval(parse_formula(inline_or_file(formula)), l, parse_valuation(val));
      return result(kExitPositive, "value=" + std::to_string(e));
    }
    Sequent s = Sequent(Formula::one());
    if (!proof.empty()) {
      s = read_proof(read_text(proof)).root.conclusion();
    } else if (!sequent.empty()) {
      s = parse_sequent(inline_or_file(sequent));
    } else {
      throw UsageError("model soundness needs --proof or --sequent");
    }
    SoundnessResult r = soundness_check(s, l, so);
    out_ << (r.exhaustive ? "exhaustive" : "random") << " valuations " << r.valuations << "\n";
    if (!r.ok) return result(kExitNegative, "counterexample " + valuation_str(*r.counterexample));
    return result(kExitPositive, "ok");
  }

  int verify_lemma(const std::string& path, unsigned max_k, unsigned max_counter) {
    Machine m = parse_machine(read_text(path));
    EncodedMachine em = encode(m);
    Prover prover;
    std::uint64_t cases = 0, disagreements = 0;
    for (const auto& state : reachable_states(m)) {
      for (unsigned a = 0; a <= max_counter; ++a) {
        for (unsigned b = 0; b <= max_counter; ++b) {
          for (unsigned c = 0; c <= max_counter; ++c) {
            Configuration cf{state, {a, b, c}};
            for (unsigned k = 0; k <= max_k; ++k) {
              bool machine = can_perform_k_steps(m, cf, k);
              bool logic = prover.decide_bool(k_step_sequent(em, cf, k)).value();
              ++cases;
              if (machine != logic) {
                ++disagreements;
                out_ << "disagree " << cf.str() << " k=" << k << " machine=" << machine << " search=" << logic
                     << "\n";
              }
            }
          }
        }
      }
    }
    out_ << "cases " << cases << "\n";
    if (disagreements) return result(kExitNegative, "disagree count=" + std::to_string(disagreements));
    return result(kExitPositive, "agree");
  }

 private:
  int report(const Derivation& d, Calculus c, const std::string& emit) {
    CheckReport r = check(d, c);
    out_ << "conclusion: " << d.conclusion() << "\nnodes " << d.size() << "\n";
    if (!emit.empty()) write_text(emit, write_proof(d, c));
    if (!r.valid) {
      out_ << r.str() << "\n";
      return result(kExitNegative, "invalid");
    }
    return result(kExitPositive, "valid");
  }

  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commutative action logic workbench", "commact"};
  app.require_subcommand(1);
  Session session(out, err);
  std::function<int()> action;

  std::string text, emit, calculus, mode, path, config, lattice, formula, val, proof, sequent, emit_circ;
  double budget = 0;
  bool stats = false;
  unsigned n = 0, k = 0, max_k = 3, max_counter = 2;
  std::uint64_t x = 0, max_steps = 10000;
  SoundnessOptions so;

  auto* prove = app.add_subcommand("prove", "decide a sequent by proof search");
  prove->add_option("sequent", text, "sequent text or @file")->required();
  prove->add_option("--emit", emit, "write the proof here");
  prove->add_option("--budget", budget, "wall-clock budget in seconds");
  prove->add_flag("--stats", stats, "print search counters");
  prove->callback([&] { action = [&] { return session.prove(text, emit, budget, stats); }; });

  auto* chk = app.add_subcommand("check", "check a proof file");
  chk->add_option("proof", path, "proof file")->required();
  chk->add_option("--calculus", calculus, "omega-fin, commact or circ (default: from the file)")
      ->check(CLI::IsMember({"omega-fin", "commact", "circ"}));
  chk->callback([&] { action = [&] { return session.check_file(path, calculus); }; });

  auto* approx = app.add_subcommand("approx", "n-th approximation of a sequent");
  approx->add_option("sequent", text, "sequent text or @file")->required();
  approx->add_option("-n", n, "approximation index")->required();
  approx->add_option("--emit", emit, "write the approximated sequent here");
  approx->callback([&] { action = [&] { return session.approx(text, n, emit); }; });

  auto* ref = app.add_subcommand("refute", "search for a non-derivable approximation");
  ref->add_option("sequent", text, "sequent text or @file")->required();
  ref->add_option("--max-n", n, "largest approximation index")->required();
  ref->callback([&] { action = [&] { return session.refute_cmd(text, n); }; });

  auto* ce = app.add_subcommand("cutelim", "eliminate cuts from a finite proof");
  ce->add_option("proof", path, "proof file")->required();
  ce->add_option("--emit", emit, "write the cut-free proof here");
  ce->callback([&] { action = [&] { return session.cutelim(path, emit); }; });

  auto* mk = app.add_subcommand("minsky", "run or classify a counter machine");
  mk->add_option("mode", mode, "run or classify")->required()->check(CLI::IsMember({"run", "classify"}));
  mk->add_option("machine", path, "machine file")->required();
  mk->add_option("--input", x, "initial value of register a");
  mk->add_option("--max-steps", max_steps, "step bound");
  mk->callback([&] { action = [&] { return session.minsky(mode, path, x, max_steps); }; });

  std::optional<std::uint64_t> input;
  auto* enc = app.add_subcommand("encode", "print E, D and an encoding sequent");
  enc->add_option("machine", path, "machine file")->required();
  auto* in_opt = enc->add_option("--input", input, "print E^*, q_s, a^x |- D");
  auto* cfg_opt = enc->add_option("--config", config, "state,a,b,c for the k-step sequent");
  enc->add_option("--k", k, "number of steps");
  enc->add_option("--emit", emit, "write the sequent here");
  in_opt->excludes(cfg_opt);
  enc->callback([&] { action = [&] { return session.encode_cmd(path, input, config, k, emit); }; });

  auto* syn = app.add_subcommand("synth", "build a derivation from a machine run");
  syn->add_option("mode", mode, "kstep or circular")->required()->check(CLI::IsMember({"kstep", "circular"}));
  syn->add_option("machine", path, "machine file")->required();
  syn->add_option("--config", config, "state,a,b,c (kstep)");
  syn->add_option("--k", k, "number of steps (kstep)");
  syn->add_option("--input", x, "input x (circular)");
  syn->add_option("--max-steps", max_steps, "cycle detection bound (circular)");
  syn->add_option("--emit", emit, "write the derivation here");
  syn->add_option("--emit-circ", emit_circ, "also write the circular proof (circular)");
  syn->callback([&] {
    action = [&] { return session.synth(mode, path, config, k, x, max_steps, emit, emit_circ); };
  });

  auto* mdl = app.add_subcommand("model", "finite action lattices");
  mdl->add_option("mode", mode, "check, eval or soundness")
      ->required()
      ->check(CLI::IsMember({"check", "eval", "soundness"}));
  mdl->add_option("lattice", lattice, "lattice file, or builtin:b2")->required();
  mdl->add_option("--formula", formula, "formula to evaluate (eval)");
  mdl->add_option("--val", val, "valuation name=element,... (eval)");
  mdl->add_option("--proof", proof, "proof file whose conclusion is tested (soundness)");
  mdl->add_option("--sequent", sequent, "sequent to test (soundness)");
  mdl->add_option("--seed", so.seed, "seed for random trials");
  mdl->add_option("--cap", so.exhaustive_cap, "largest exhaustive valuation count");
  mdl->add_option("--trials", so.trials, "random trials above the cap");
  mdl->callback([&] {
    action = [&] { return session.model(mode, lattice, formula, val, proof, sequent, so); };
  });

  auto* ver = app.add_subcommand("verify", "oracle-equivalence sweeps");
  ver->add_option("mode", mode, "lemma")->required()->check(CLI::IsMember({"lemma"}));
  ver->add_option("machine", path, "machine file")->required();
  ver->add_option("--max-k", max_k, "largest k");
  ver->add_option("--max-counter", max_counter, "largest counter value");
  ver->callback([&] { action = [&] { return session.verify_lemma(path, max_k, max_counter); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return session.result(kExitPositive, "help");
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return session.result(kExitUsage, "usage-error");
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const ProofSyntaxError& e) {
    err << e.what() << "\n";
  } catch (const MachineError& e) {
    err << e.what() << "\n";
  } catch (const EncodingError& e) {
    err << e.what() << "\n";
  } catch (const LatticeError& e) {
    err << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return session.result(kExitUsage, "error");
}

}  // namespace commact
