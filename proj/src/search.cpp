#include "commact/search.hpp"

#include <algorithm>
#include <unordered_map>

namespace commact {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Derivable: return "derivable";
    case Verdict::NotDerivable: return "not-derivable";
    case Verdict::Refused: return "refused";
  }
  return "?";
}

namespace {

// Antecedents inside the engine are sorted by formula id (cheap to compare);
// Sequent values with their text order are only built for emitted proofs.
using Ante = std::vector<Formula>;
using Key = std::vector<std::uint32_t>;

// A goal as seen by the memo table, without building its key.
struct Goal {
  const Ante& ante;
  Formula succ;
  std::uint32_t tag;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h = (h ^ x) * 0x9e3779b97f4a7c15ULL;
  return h ^ (h >> 29);
}

struct KeyHash {
  using is_transparent = void;
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = k.size();
    for (auto x : k) h = mix(h, x);
    return static_cast<std::size_t>(h);
  }
  std::size_t operator()(const Goal& g) const noexcept {
    std::uint64_t h = g.ante.size() + 2;
    for (auto f : g.ante) h = mix(h, f.id());
    h = mix(h, g.succ.id());
    return static_cast<std::size_t>(mix(h, g.tag));
  }
};

struct KeyEq {
  using is_transparent = void;
  bool operator()(const Key& a, const Key& b) const noexcept { return a == b; }
  bool operator()(const Goal& g, const Key& k) const noexcept {
    if (k.size() != g.ante.size() + 2) return false;
    for (std::size_t i = 0; i < g.ante.size(); ++i) {
      if (k[i] != g.ante[i].id()) return false;
    }
    return k[g.ante.size()] == g.succ.id() && k.back() == g.tag;
  }
  bool operator()(const Key& k, const Goal& g) const noexcept { return (*this)(g, k); }
};

enum class Status : std::uint8_t { InProgress, Proved, Refuted };

struct Entry {
  Status status = Status::InProgress;
  std::optional<Derivation> proof;
  std::vector<Derivation> parts;  // cover entries
};

constexpr std::uint32_t kProveTag = 0;
constexpr std::uint32_t kCoverTag = 1;

Key make_key(const Ante& a, Formula succ, std::uint32_t tag) {
  Key k;
  k.reserve(a.size() + 2);
  for (auto f : a) k.push_back(f.id());
  k.push_back(succ.id());
  k.push_back(tag);
  return k;
}

void insert_sorted(Ante& a, Formula f) { a.insert(std::upper_bound(a.begin(), a.end(), f, FormulaIdLess{}), f); }

Ante erase_at(const Ante& a, std::size_t i) {
  Ante out;
  out.reserve(a.size());
  out.insert(out.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.end());
  return out;
}

Ante replace_at(const Ante& a, std::size_t i, std::initializer_list<Formula> with) {
  Ante out = erase_at(a, i);
  for (auto f : with) insert_sorted(out, f);
  return out;
}

std::vector<std::pair<Formula, unsigned>> group(const Ante& a) {
  std::vector<std::pair<Formula, unsigned>> g;
  for (auto f : a) {
    if (!g.empty() && g.back().first == f) {
      ++g.back().second;
    } else {
      g.emplace_back(f, 1);
    }
  }
  return g;
}

// Calls fn(left, right) for every split of `a` into two sub-multisets; stops
// when fn returns true.
template <class Fn>
bool for_each_split(const Ante& a, Fn&& fn) {
  auto g = group(a);
  std::vector<unsigned> take(g.size(), 0);
  Ante left, right;
  left.reserve(a.size());
  right.reserve(a.size());
  while (true) {
    left.clear();
    right.clear();
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (unsigned j = 0; j < g[i].second; ++j) (j < take[i] ? left : right).push_back(g[i].first);
    }
    if (fn(left, right)) return true;
    std::size_t i = 0;
    while (i < g.size() && take[i] == g[i].second) take[i++] = 0;
    if (i == g.size()) return false;
    ++take[i];
  }
}

Rank rank_of(const Ante& a, Formula succ) {
  Rank r;
  for (auto f : a) add_formula_rank(r, f);
  add_formula_rank(r, succ);
  return r;
}

template <bool Emit>
class Engine {
 public:
  Engine(const SearchOptions& options, SearchStats& stats) : options_(options), stats_(stats) {}

  bool prove(const Ante& a, Formula succ, std::uint64_t depth) {
    if (auto hit = memo_.find(Goal{a, succ, kProveTag}); hit != memo_.end()) {
      if (hit->second.status == Status::InProgress) {
        throw std::logic_error("search revisited a goal in progress: the rank measure failed");
      }
      ++stats_.memo_hits;
      return hit->second.status == Status::Proved;
    }
    Entry& entry = memo_.try_emplace(make_key(a, succ, kProveTag)).first->second;
    tick(depth);
    std::optional<Derivation> proof;
    bool ok = expand(a, succ, depth, proof);
    entry.status = ok ? Status::Proved : Status::Refuted;
    if constexpr (Emit) entry.proof = std::move(proof);
    return ok;
  }

  const Derivation& proof_of(const Ante& a, Formula succ) const {
    return *memo_.find(Goal{a, succ, kProveTag})->second.proof;
  }

  void clear() { memo_.clear(); }

 private:
  void tick(std::uint64_t depth) {
    ++stats_.nodes_expanded;
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (options_.deadline && (stats_.nodes_expanded & 1023) == 0 &&
        std::chrono::steady_clock::now() > *options_.deadline) {
      throw SearchAborted();
    }
  }

  void premise_rank(const Ante& pa, Formula ps, const Ante& ca, Formula cs) const {
    if (!options_.check_rank) return;
    if (compare_rank(rank_of(pa, ps), rank_of(ca, cs)) != std::strong_ordering::less) {
      throw std::logic_error("search: premise rank does not decrease");
    }
  }

  // Proves a premise of the goal (a, succ).
  bool sub(const Ante& pa, Formula ps, const Ante& a, Formula succ, std::uint64_t depth) {
    premise_rank(pa, ps, a, succ);
    if (ps.is(Kind::Var) && !(pa.size() == 1 && pa[0] == ps) &&
        std::all_of(pa.begin(), pa.end(), [](Formula f) { return f.is(Kind::Var); })) {
      return false;
    }
    return prove(pa, ps, depth + 1);
  }

  std::optional<Derivation> got(const Ante& a, Formula succ) const {
    if constexpr (Emit) return proof_of(a, succ);
    return std::nullopt;
  }

  bool expand(const Ante& a, Formula succ, std::uint64_t depth, std::optional<Derivation>& proof) {
    // Invertible rules first; each leaves exactly one way forward.
    for (std::size_t i = 0; i < a.size(); ++i) {
      Formula f = a[i];
      switch (f.kind()) {
        case Kind::Zero:
          if constexpr (Emit) proof = build::zero_l(a, succ);
          return true;
        case Kind::One: {
          Ante p = erase_at(a, i);
          if (!sub(p, succ, a, succ, depth)) return false;
          if constexpr (Emit) proof = build::one_l(*got(p, succ));
          return true;
        }
        case Kind::Dot: {
          Ante p = replace_at(a, i, {f.lhs(), f.rhs()});
          if (!sub(p, succ, a, succ, depth)) return false;
          if constexpr (Emit) proof = build::dot_l(*got(p, succ), f.lhs(), f.rhs());
          return true;
        }
        case Kind::Vee: {
          Ante l = replace_at(a, i, {f.lhs()});
          Ante r = replace_at(a, i, {f.rhs()});
          if (!sub(l, succ, a, succ, depth) || !sub(r, succ, a, succ, depth)) return false;
          if constexpr (Emit) proof = build::vee_l(*got(l, succ), *got(r, succ), f.lhs(), f.rhs());
          return true;
        }
        default:
          break;
      }
    }
    if (succ.is(Kind::Imp)) {
      Ante p = a;
      insert_sorted(p, succ.lhs());
      if (!sub(p, succ.rhs(), a, succ, depth)) return false;
      if constexpr (Emit) proof = build::imp_r(*got(p, succ.rhs()), succ.lhs());
      return true;
    }
    if (succ.is(Kind::Wedge)) {
      if (!sub(a, succ.lhs(), a, succ, depth) || !sub(a, succ.rhs(), a, succ, depth)) return false;
      if constexpr (Emit) proof = build::wedge_r(*got(a, succ.lhs()), *got(a, succ.rhs()));
      return true;
    }

    // Axioms.
    if (a.size() == 1 && a[0] == succ) {
      if constexpr (Emit) proof = build::id(succ);
      return true;
    }
    if (a.empty() && succ.is(Kind::One)) {
      if constexpr (Emit) proof = build::one_r();
      return true;
    }

    // Right rules.
    switch (succ.kind()) {
      case Kind::Star:
        if (a.empty()) {
          if constexpr (Emit) proof = build::star_rn(succ.body(), {});
          return true;
        }
        if (cover(a, succ.body(), a, succ, depth)) {
          if constexpr (Emit) {
            proof = build::star_rn(succ.body(), memo_.find(Goal{a, succ.body(), kCoverTag})->second.parts);
          }
          return true;
        }
        break;
      case Kind::Vee:
        for (Formula side : {succ.lhs(), succ.rhs()}) {
          if (sub(a, side, a, succ, depth)) {
            if constexpr (Emit) {
              proof = side == succ.lhs() ? build::vee_r1(*got(a, side), succ.rhs())
                                         : build::vee_r2(*got(a, side), succ.lhs());
            }
            return true;
          }
        }
        break;
      case Kind::Dot: {
        bool ok = for_each_split(a, [&](const Ante& l, const Ante& r) {
          if (!sub(l, succ.lhs(), a, succ, depth) || !sub(r, succ.rhs(), a, succ, depth)) return false;
          if constexpr (Emit) proof = build::dot_r(*got(l, succ.lhs()), *got(r, succ.rhs()));
          return true;
        });
        if (ok) return true;
        break;
      }
      default:
        break;
    }

    // Left rules that need a choice.
    for (std::size_t i = 0; i < a.size(); ++i) {
      Formula f = a[i];
      if (i > 0 && a[i - 1] == f) continue;
      if (f.is(Kind::Wedge)) {
        for (int side = 0; side < 2; ++side) {
          Formula part = side == 0 ? f.lhs() : f.rhs();
          Ante p = replace_at(a, i, {part});
          if (sub(p, succ, a, succ, depth)) {
            if constexpr (Emit) {
              proof = side == 0 ? build::wedge_l1(*got(p, succ), f.lhs(), f.rhs())
                                : build::wedge_l2(*got(p, succ), f.lhs(), f.rhs());
            }
            return true;
          }
        }
      } else if (f.is(Kind::Imp)) {
        Ante rest = erase_at(a, i);
        bool ok = for_each_split(rest, [&](const Ante& pi, const Ante& gamma) {
          if (!sub(pi, f.lhs(), a, succ, depth)) return false;
          Ante right = gamma;
          insert_sorted(right, f.rhs());
          if (!sub(right, succ, a, succ, depth)) return false;
          if constexpr (Emit) proof = build::imp_l(*got(pi, f.lhs()), *got(right, succ), f.rhs());
          return true;
        });
        if (ok) return true;
      }
    }
    return false;
  }

  // Partitions `a` into nonempty parts, each proving `body`. The part holding
  // a[0] is chosen first, so every partition is produced once.
  bool cover(const Ante& a, Formula body, const Ante& ca, Formula cs, std::uint64_t depth) {
    if (auto hit = memo_.find(Goal{a, body, kCoverTag}); hit != memo_.end()) {
      if (hit->second.status == Status::InProgress) throw std::logic_error("search: cover revisited in progress");
      ++stats_.memo_hits;
      return hit->second.status == Status::Proved;
    }
    Entry& entry = memo_.try_emplace(make_key(a, body, kCoverTag)).first->second;
    std::vector<Derivation> parts;
    Formula first = a[0];
    Ante rest = erase_at(a, 0);
    bool ok = for_each_split(rest, [&](const Ante& with, const Ante& remaining) {
      Ante part = with;
      insert_sorted(part, first);
      if (!sub(part, body, ca, cs, depth)) return false;
      if (!remaining.empty() && !cover(remaining, body, ca, cs, depth)) return false;
      if constexpr (Emit) {
        parts.clear();
        parts.push_back(*got(part, body));
        if (!remaining.empty()) {
          const auto& more = memo_.find(Goal{remaining, body, kCoverTag})->second.parts;
          parts.insert(parts.end(), more.begin(), more.end());
        }
      }
      return true;
    });
    entry.status = ok ? Status::Proved : Status::Refuted;
    if constexpr (Emit) entry.parts = std::move(parts);
    return ok;
  }

  const SearchOptions& options_;
  SearchStats& stats_;
  std::unordered_map<Key, Entry, KeyHash, KeyEq> memo_;
};

Ante engine_ante(const Sequent& s) {
  Ante a = s.antecedent();
  std::sort(a.begin(), a.end(), FormulaIdLess{});
  return a;
}

}  // namespace

struct Prover::Impl {
  explicit Impl(SearchOptions o) : options(o), with_proofs(options, totals), bool_only(options, totals) {}
  SearchOptions options;
  SearchStats totals;
  Engine<true> with_proofs;
  Engine<false> bool_only;
};

Prover::Prover(SearchOptions options) : impl_(std::make_unique<Impl>(options)) {}
Prover::~Prover() = default;
Prover::Prover(Prover&&) noexcept = default;
Prover& Prover::operator=(Prover&&) noexcept = default;

const SearchStats& Prover::total_stats() const { return impl_->totals; }

void Prover::clear() {
  impl_->with_proofs.clear();
  impl_->bool_only.clear();
}

SearchOutcome Prover::decide(const Sequent& s, bool emit_proof) {
  SearchOutcome out;
  if (has_negative_star(s)) {
    out.verdict = Verdict::Refused;
    out.reason = "negative-star-present";
    return out;
  }
  SearchStats before = impl_->totals;
  impl_->totals.max_depth = 0;
  auto start = std::chrono::steady_clock::now();
  Ante a = engine_ante(s);
  bool ok = false;
  try {
    if (emit_proof) {
      ok = impl_->with_proofs.prove(a, s.succedent(), 0);
      if (ok) out.proof = impl_->with_proofs.proof_of(a, s.succedent());
    } else {
      ok = impl_->bool_only.prove(a, s.succedent(), 0);
    }
  } catch (...) {
    // Entries left in progress would poison later queries.
    clear();
    throw;
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  impl_->totals.elapsed += elapsed;
  out.verdict = ok ? Verdict::Derivable : Verdict::NotDerivable;
  out.stats.nodes_expanded = impl_->totals.nodes_expanded - before.nodes_expanded;
  out.stats.memo_hits = impl_->totals.memo_hits - before.memo_hits;
  out.stats.max_depth = impl_->totals.max_depth;
  out.stats.elapsed = elapsed;
  return out;
}

std::optional<bool> Prover::decide_bool(const Sequent& s) {
  SearchOutcome out = decide(s, false);
  if (out.verdict == Verdict::Refused) return std::nullopt;
  return out.verdict == Verdict::Derivable;
}

SearchOutcome decide(const Sequent& s, bool emit_proof, SearchOptions options) {
  Prover prover(options);
  return prover.decide(s, emit_proof);
}

std::optional<bool> decide_bool(const Sequent& s) {
  Prover prover;
  return prover.decide_bool(s);
}

}  // namespace commact
