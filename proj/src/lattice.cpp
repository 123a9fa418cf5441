#include "commact/lattice.hpp"

#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace commact {

FiniteActionLattice boolean_lattice() {
  FiniteActionLattice l;
  l.n = 2;
  l.leq = {{1, 1}, {0, 1}};
  l.dot = {{0, 0}, {0, 1}};
  l.wedge = l.dot;
  l.vee = {{0, 1}, {1, 1}};
  l.imp = {{1, 1}, {0, 1}};
  l.star = {1, 1};
  l.zero = 0;
  l.one = 1;
  return l;
}

FiniteActionLattice parse_lattice(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> words;
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ws(line);
    for (std::string w; ws >> w;) words.push_back(w);
  }
  FiniteActionLattice l;
  std::size_t at = 0;
  auto number = [&](const std::string& what) -> unsigned {
    if (at >= words.size()) throw LatticeError("lattice: missing entries for " + what);
    const std::string& w = words[at++];
    try {
      std::size_t used = 0;
      long v = std::stol(w, &used);
      if (used != w.size() || v < 0) throw std::invalid_argument(w);
      return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw LatticeError("lattice: '" + w + "' is not an index in " + what);
    }
  };
  auto element = [&](const std::string& what) {
    unsigned v = number(what);
    if (v >= l.n) throw LatticeError("lattice: element " + std::to_string(v) + " out of range in " + what);
    return v;
  };
  std::set<std::string> seen;
  while (at < words.size()) {
    std::string key = words[at++];
    if (!seen.insert(key).second) throw LatticeError("lattice: duplicate entry '" + key + "'");
    if (key == "size") {
      l.n = number("size");
      if (l.n == 0) throw LatticeError("lattice: size must be positive");
      continue;
    }
    if (l.n == 0) throw LatticeError("lattice: 'size' must come first");
    if (key == "zero") {
      l.zero = element("zero");
    } else if (key == "one") {
      l.one = element("one");
    } else if (key == "star") {
      for (unsigned i = 0; i < l.n; ++i) l.star.push_back(element("star"));
    } else if (key == "leq" || key == "dot" || key == "vee" || key == "wedge" || key == "imp") {
      Table t(l.n, std::vector<unsigned>(l.n));
      for (auto& row : t) {
        for (auto& cell : row) cell = key == "leq" ? number(key) : element(key);
      }
      if (key == "leq") {
        for (auto& row : t) {
          for (auto cell : row) {
            if (cell > 1) throw LatticeError("lattice: leq entries must be 0 or 1");
          }
        }
        l.leq = t;
      } else if (key == "dot") {
        l.dot = t;
      } else if (key == "vee") {
        l.vee = t;
      } else if (key == "wedge") {
        l.wedge = t;
      } else {
        l.imp = t;
      }
    } else {
      throw LatticeError("lattice: unknown entry '" + key + "'");
    }
  }
  for (const char* need : {"size", "leq", "dot", "vee", "wedge", "imp", "star", "zero", "one"}) {
    if (!seen.count(need)) throw LatticeError(std::string("lattice: missing '") + need + "'");
  }
  return l;
}

std::vector<std::string> validate_lattice(const FiniteActionLattice& l) {
  std::vector<std::string> out;
  const unsigned n = l.n;
  auto report = [&](const std::string& clause, std::initializer_list<unsigned> at) {
    std::string s = clause + " fails at";
    for (auto x : at) s += " " + std::to_string(x);
    out.push_back(s);
  };
  for (unsigned x = 0; x < n; ++x) {
    if (!l.le(x, x)) report("reflexivity of leq", {x});
    if (!l.le(l.zero, x)) report("0 is least", {x});
    for (unsigned y = 0; y < n; ++y) {
      if (x != y && l.le(x, y) && l.le(y, x)) report("antisymmetry of leq", {x, y});
      for (unsigned z = 0; z < n; ++z) {
        if (l.le(x, y) && l.le(y, z) && !l.le(x, z)) report("transitivity of leq", {x, y, z});
      }
    }
  }
  for (unsigned x = 0; x < n; ++x) {
    if (l.dot[x][l.one] != x) report("1 is the unit of the product", {x});
    for (unsigned y = 0; y < n; ++y) {
      if (l.dot[x][y] != l.dot[y][x]) report("commutativity of the product", {x, y});
      for (unsigned z = 0; z < n; ++z) {
        if (l.dot[l.dot[x][y]][z] != l.dot[x][l.dot[y][z]]) report("associativity of the product", {x, y, z});
        if (l.le(l.dot[x][y], z) != l.le(y, l.imp[x][z])) report("residuation", {x, y, z});
      }
    }
  }
  for (unsigned x = 0; x < n; ++x) {
    for (unsigned y = 0; y < n; ++y) {
      unsigned j = l.vee[x][y], m = l.wedge[x][y];
      if (!l.le(x, j) || !l.le(y, j)) report("vee is an upper bound", {x, y});
      if (!l.le(m, x) || !l.le(m, y)) report("wedge is a lower bound", {x, y});
      for (unsigned z = 0; z < n; ++z) {
        if (l.le(x, z) && l.le(y, z) && !l.le(j, z)) report("vee is least", {x, y, z});
        if (l.le(z, x) && l.le(z, y) && !l.le(z, m)) report("wedge is greatest", {x, y, z});
      }
    }
  }
  for (unsigned x = 0; x < n; ++x) {
    unsigned s = l.star[x];
    if (!l.le(l.one, s) || !l.le(l.dot[x][s], s)) {
      report("star is a prefixpoint", {x});
      continue;
    }
    for (unsigned y = 0; y < n; ++y) {
      if (l.le(l.one, y) && l.le(l.dot[x][y], y) && !l.le(s, y)) report("star is the least prefixpoint", {x, y});
    }
  }
  return out;
}

std::vector<std::string> star_continuity_violations(const FiniteActionLattice& l) {
  std::vector<std::string> out;
  for (unsigned x = 0; x < l.n; ++x) {
    unsigned p = l.one, join = l.one;
    for (unsigned i = 1; i <= 2 * l.n; ++i) {
      p = l.dot[p][x];
      join = l.vee[join][p];
    }
    if (join != l.star[x]) {
      out.push_back("star of " + std::to_string(x) + " is " + std::to_string(l.star[x]) + ", join of powers is " +
                    std::to_string(join));
    }
  }
  return out;
}

unsigned eval(Formula f, const FiniteActionLattice& l, const Valuation& v) {
  switch (f.kind()) {
    case Kind::Var: {
      auto it = v.find(f.name());
      if (it == v.end()) throw LatticeError("eval: unbound variable " + f.name());
      return it->second;
    }
    case Kind::Zero: return l.zero;
    case Kind::One: return l.one;
    case Kind::Imp: return l.imp[eval(f.lhs(), l, v)][eval(f.rhs(), l, v)];
    case Kind::Dot: return l.dot[eval(f.lhs(), l, v)][eval(f.rhs(), l, v)];
    case Kind::Vee: return l.vee[eval(f.lhs(), l, v)][eval(f.rhs(), l, v)];
    case Kind::Wedge: return l.wedge[eval(f.lhs(), l, v)][eval(f.rhs(), l, v)];
    case Kind::Star: return l.star[eval(f.body(), l, v)];
  }
  return l.zero;
}

bool sequent_holds(const Sequent& s, const FiniteActionLattice& l, const Valuation& v) {
  unsigned prod = l.one;
  for (auto f : s.antecedent()) prod = l.dot[prod][eval(f, l, v)];
  return l.le(prod, eval(s.succedent(), l, v));
}

std::vector<std::string> variables_of(const Sequent& s) {
  std::set<std::string> names;
  std::function<void(Formula)> walk = [&](Formula f) {
    if (f.is(Kind::Var)) {
      names.insert(f.name());
    } else if (f.is(Kind::Star)) {
      walk(f.body());
    } else if (f.is_binary()) {
      walk(f.lhs());
      walk(f.rhs());
    }
  };
  for (auto f : s.antecedent()) walk(f);
  walk(s.succedent());
  return {names.begin(), names.end()};
}

SoundnessResult soundness_check(const Sequent& s, const FiniteActionLattice& l, SoundnessOptions options) {
  SoundnessResult r;
  auto vars = variables_of(s);
  std::uint64_t total = 1;
  bool over = false;
  for (std::size_t i = 0; i < vars.size() && !over; ++i) {
    if (total > options.exhaustive_cap / l.n) over = true;
    total *= l.n;
  }
  Valuation v;
  auto test = [&]() {
    ++r.valuations;
    if (sequent_holds(s, l, v)) return true;
    r.ok = false;
    r.counterexample = v;
    return false;
  };
  if (!over && total <= options.exhaustive_cap) {
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (const auto& name : vars) {
        v[name] = static_cast<unsigned>(c % l.n);
        c /= l.n;
      }
      if (!test()) return r;
    }
    return r;
  }
  r.exhaustive = false;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<unsigned> pick(0, l.n - 1);
  for (unsigned t = 0; t < options.trials; ++t) {
    for (const auto& name : vars) v[name] = pick(rng);
    if (!test()) return r;
  }
  return r;
}

SoundnessResult soundness_check(const Derivation& d, const FiniteActionLattice& l, SoundnessOptions options) {
  return soundness_check(d.conclusion(), l, options);
}

std::string valuation_str(const Valuation& v) {
  std::string s = "{";
  for (const auto& [name, value] : v) {
    if (s.size() > 1) s += ", ";
    s += name + "->" + std::to_string(value);
  }
  return s + "}";
}

}  // namespace commact
