#include "grouplab/checkers.hpp"

#include <unordered_set>

#include "grouplab/error.hpp"

namespace grouplab {

std::string to_string(Status s) {
  switch (s) {
    case Status::witnessed: return "witnessed";
    case Status::refuted: return "refuted";
    case Status::unknown: return "unknown";
  }
  return "?";
}

Status parseStatus(const std::string& s) {
  if (s == "witnessed") return Status::witnessed;
  if (s == "refuted") return Status::refuted;
  if (s == "unknown") return Status::unknown;
  throw InvalidArgument("unknown verdict status '" + s + "'");
}

nlohmann::json Verdict::toJson() const {
  return {{"check", check}, {"status", to_string(status)}, {"evidence", evidence}, {"bound", bound}};
}

std::vector<std::string> checkNames() {
  return {"abelian", "torsion",  "torsion-all", "trivial", "divisible", "nilpotent",
          "solvable", "finite", "wordproblem", "cyclic",  "olf"};
}

namespace {

Value commutatorOf(GroupModel& g, const Value& x, const Value& y) {
  return g.multiply(g.multiply(g.inverse(x), g.inverse(y)), g.multiply(x, y));
}

// Pairs (i, j) ordered by max(i, j), then lexicographically.
struct PairCursor {
  std::size_t m = 0, i = 0, j = 0;

  void next() {
    // within max m: (0,m), (1,m), ..., (m-1,m), (m,0), ..., (m,m)
    if (i < m && j == m) {
      if (++i == m) j = 0;
      return;
    }
    if (++j > m) {
      ++m;
      i = 0;
      j = m;
    }
  }
};

struct EvalCapReached {};

// One level of a lazily built commutator hierarchy.
class Level {
 public:
  // Base level: the sampled elements that are not provably trivial.
  Level(GroupModel& g, std::vector<Value> items) : g_(g) {
    for (auto& v : items)
      if (!g.provablyIdentity(v)) add(std::move(v), 0, 0);
    exhausted_ = true;
  }
  // [x, y] with x from `left`, y from `right`; distinctPairs keeps i < j.
  Level(GroupModel& g, Level* left, Level* right, bool distinctPairs, std::size_t& evals, std::size_t cap)
      : g_(g), left_(left), right_(right), distinct_(distinctPairs), evals_(&evals), cap_(cap) {}

  bool get(std::size_t k) {
    while (items_.size() <= k && !exhausted_) advance();
    return items_.size() > k;
  }
  const Value& at(std::size_t k) const { return items_[k]; }
  std::pair<std::size_t, std::size_t> parents(std::size_t k) const { return from_[k]; }
  bool isBase() const { return left_ == nullptr; }
  Level* left() const { return left_; }
  Level* right() const { return right_; }

 private:
  void add(Value v, std::size_t i, std::size_t j) {
    if (!seen_.insert(v).second) return;
    items_.push_back(std::move(v));
    from_.push_back({i, j});
  }

  void advance() {
    for (;;) {
      const std::size_t m = cur_.m;
      const bool leftHas = left_->get(m), rightHas = right_->get(m);
      if (!leftHas && !rightHas) {
        exhausted_ = true;
        return;
      }
      const std::size_t i = cur_.i, j = cur_.j;
      cur_.next();
      if (distinct_ && i >= j) continue;
      if (!left_->get(i) || !right_->get(j)) continue;
      if (++*evals_ > cap_) throw EvalCapReached{};
      Value c = commutatorOf(g_, left_->at(i), right_->at(j));
      if (g_.provablyIdentity(c)) continue;
      const std::size_t before = items_.size();
      add(std::move(c), i, j);
      if (items_.size() > before) return;
    }
  }

  GroupModel& g_;
  Level* left_ = nullptr;
  Level* right_ = nullptr;
  bool distinct_ = false;
  std::size_t* evals_ = nullptr;
  std::size_t cap_ = 0;
  PairCursor cur_;
  bool exhausted_ = false;
  std::vector<Value> items_;
  std::vector<std::pair<std::size_t, std::size_t>> from_;
  std::unordered_set<Value, ValueHash> seen_;
};

void tupleOf(const Level& l, std::size_t k, std::vector<Value>& out) {
  if (l.isBase()) {
    out.push_back(l.at(k));
    return;
  }
  const auto [i, j] = l.parents(k);
  tupleOf(*l.left(), i, out);
  tupleOf(*l.right(), j, out);
}

nlohmann::json showAll(const GroupModel& g, const std::vector<Value>& vs) {
  auto arr = nlohmann::json::array();
  for (const auto& v : vs) arr.push_back(g.show(v));
  return arr;
}

// Shared driver for the nilpotent and solvable hierarchies.
Verdict commutatorCheck(GroupModel& g, const char* name, std::size_t n, std::size_t sampleBound,
                        std::size_t evalCap, bool derived) {
  Verdict v;
  v.check = name;
  v.bound = {{"n", n}, {"sample", sampleBound}, {"eval_cap", evalCap}};
  const auto sample = g.sample(sampleBound);
  std::size_t evals = 0;
  std::vector<std::unique_ptr<Level>> levels;
  levels.push_back(std::make_unique<Level>(g, sample));
  // nilpotent: tuples of length n are n-1 commutator steps; solvable: n steps
  const std::size_t steps = derived ? n : (n == 0 ? 0 : n - 1);
  for (std::size_t k = 0; k < steps; ++k) {
    Level* prev = levels.back().get();
    Level* right = derived ? prev : levels.front().get();
    levels.push_back(std::make_unique<Level>(g, prev, right, derived, evals, evalCap));
  }
  Level& last = *levels.back();
  try {
    for (std::size_t k = 0; last.get(k); ++k) {
      std::vector<Value> tuple;
      tupleOf(last, k, tuple);
      if (g.provablyNonIdentity(last.at(k))) {
        v.status = Status::refuted;
        v.evidence = {{"tuple", showAll(g, tuple)}, {"commutator", g.show(last.at(k))}};
        v.bound["evaluations"] = evals;
        return v;
      }
      if (!g.exact()) {
        v.status = Status::unknown;
        v.evidence = {{"unresolved", showAll(g, tuple)}};
        v.bound["evaluations"] = evals;
        return v;
      }
    }
  } catch (const EvalCapReached&) {
    v.status = Status::unknown;
    v.bound["evaluations"] = evals;
    return v;
  }
  v.status = Status::witnessed;
  v.evidence = {{"sampled", sample.size()}, {"exhaustive", g.exact() && sample.size() < sampleBound}};
  v.bound["evaluations"] = evals;
  return v;
}

}  // namespace

Verdict checkAbelian(GroupModel& g, std::size_t bound) {
  Verdict v;
  v.check = "abelian";
  v.bound = {{"sample", bound}};
  const auto s = g.sample(bound);
  bool allProved = true;
  // pairs by max index, then lexicographic
  for (std::size_t m = 0; m < s.size(); ++m)
    for (std::size_t i = 0; i < m; ++i) {
      const Value c = commutatorOf(g, s[i], s[m]);
      if (g.provablyNonIdentity(c)) {
        v.status = Status::refuted;
        v.evidence = {{"w", g.show(s[i])}, {"v", g.show(s[m])}, {"commutator", g.show(c)}};
        return v;
      }
      if (!g.provablyIdentity(c)) allProved = false;
    }
  v.status = allProved ? Status::witnessed : Status::unknown;
  if (allProved) v.evidence = {{"sampled", s.size()}, {"exhaustive", g.exact() && s.size() < bound}};
  return v;
}

Verdict findTorsion(GroupModel& g, std::size_t bound) {
  Verdict v;
  v.check = "torsion";
  v.bound = {{"sample", bound}, {"exponent", bound}};
  for (const auto& x : g.sample(bound)) {
    if (g.provablyIdentity(x)) continue;
    Value p = x;
    for (std::size_t n = 2; n <= bound; ++n) {
      p = g.multiply(p, x);
      if (g.provablyIdentity(p)) {
        v.status = Status::witnessed;
        v.evidence = {{"element", g.show(x)}, {"exponent", n}};
        if (auto* pm = dynamic_cast<PresentationModel*>(&g)) {
          const Word w = PresentationModel::decode(p);
          const auto cert = pm->presentation().oracle().prove(w, pm->stage());
          const auto rels = pm->presentation().oracle().visibleRelators(pm->stage());
          v.evidence["stage"] = pm->stage();
          v.evidence["certificate"] = cert->toJson(rels);
        }
        return v;
      }
    }
  }
  return v;
}

Verdict checkTorsionUpTo(GroupModel& g, std::size_t sampleBound, std::size_t orderBound) {
  Verdict v;
  v.check = "torsion-all";
  v.bound = {{"sample", sampleBound}, {"exponent", orderBound}};
  const auto s = g.sample(sampleBound);
  auto orders = nlohmann::json::array();
  for (const auto& x : s) {
    Value p = x;
    std::size_t n = 1;
    while (!g.provablyIdentity(p) && n < orderBound) {
      p = g.multiply(p, x);
      ++n;
    }
    if (!g.provablyIdentity(p)) {
      v.status = Status::unknown;
      v.evidence = {{"no_order_found", g.show(x)}};
      return v;
    }
    orders.push_back(n);
  }
  v.status = Status::witnessed;
  v.evidence = {{"orders", orders}};
  return v;
}

Verdict checkTrivialUpTo(GroupModel& g, std::size_t generators) {
  Verdict v;
  v.check = "trivial";
  v.bound = {{"generators", generators}};
  auto gens = g.generators();
  if (gens.size() > generators) gens.resize(generators);
  auto killed = nlohmann::json::array();
  for (const auto& x : gens) {
    if (g.provablyNonIdentity(x)) {
      v.status = Status::refuted;
      v.evidence = {{"nontrivial", g.show(x)}};
      return v;
    }
    if (!g.provablyIdentity(x)) {
      v.evidence = {{"unresolved", g.show(x)}};
      return v;
    }
    killed.push_back(g.show(x));
  }
  v.status = Status::witnessed;
  v.evidence = {{"trivial_generators", killed}};
  if (auto* pm = dynamic_cast<PresentationModel*>(&g)) v.evidence["stage"] = pm->stage();
  return v;
}

Verdict checkDivisibleUpTo(AtomicDiagram& d, std::size_t nMax, std::size_t codeMax, std::size_t searchCodes) {
  Verdict v;
  v.check = "divisible";
  v.bound = {{"n_max", nMax}, {"codes", codeMax}, {"search_codes", searchCodes}};
  auto powerOf = [&](const Value& x, std::size_t n) {
    Value out = d.valueOf(0);
    for (std::size_t k = 0; k < n; ++k) out = d.mulValues(out, x);
    return out;
  };
  auto roots = nlohmann::json::array();
  for (AtomicDiagram::Code gc = 0; gc < codeMax; ++gc) {
    const Value gv = d.valueOf(gc);
    for (std::size_t n = 2; n <= nMax; ++n) {
      std::optional<AtomicDiagram::Code> found;
      for (AtomicDiagram::Code h = 0; h < searchCodes && !found; ++h) {
        Value hv;
        try {
          hv = d.valueOf(h);
        } catch (const BudgetExceeded&) {
          break;
        }
        if (powerOf(hv, n) == gv) found = h;
      }
      if (!found) {
        v.status = Status::refuted;
        v.evidence = {{"g", gc}, {"g_value", d.showValue(gv)}, {"n", n}, {"exhaustive", false}};
        return v;
      }
      roots.push_back({gc, n, *found});
    }
  }
  v.status = Status::witnessed;
  v.evidence = {{"roots", roots}};
  return v;
}

Verdict checkNilpotentUpTo(GroupModel& g, std::size_t n, std::size_t sampleBound, std::size_t evalCap) {
  if (n == 0) throw InvalidArgument("nilpotent check needs tuple length n >= 1");
  return commutatorCheck(g, "nilpotent", n, sampleBound, evalCap, false);
}

Verdict checkSolvableUpTo(GroupModel& g, std::size_t n, std::size_t sampleBound, std::size_t evalCap) {
  return commutatorCheck(g, "solvable", n, sampleBound, evalCap, true);
}

Verdict checkFiniteUpTo(PresentationModel& g, std::size_t n, std::size_t wordLength) {
  Verdict v;
  v.check = "finite";
  v.bound = {{"n", n}, {"word_length", wordLength}, {"stage", g.stage()}};
  const auto words = wordsUpTo(g.alphabet(), wordLength);
  std::vector<Word> reps;
  auto assignment = nlohmann::json::array();
  for (const auto& w : words) {
    std::optional<std::size_t> hit;
    for (std::size_t r = 0; r < reps.size() && !hit; ++r)
      if (g.provablyIdentity(PresentationModel::encode(mul(w, inv(reps[r]))))) hit = r;
    if (!hit) {
      if (reps.size() == n) {
        auto shown = nlohmann::json::array();
        for (const auto& r : reps) shown.push_back(r.str());
        v.evidence = {{"representatives", shown}, {"unmatched", w.str()}};
        return v;
      }
      hit = reps.size();
      reps.push_back(w);
    }
    assignment.push_back({w.str(), *hit});
  }
  auto shown = nlohmann::json::array();
  for (const auto& r : reps) shown.push_back(r.str());
  v.status = Status::witnessed;
  v.evidence = {{"representatives", shown}, {"assignment", assignment}};
  return v;
}

Verdict auditWordProblemDecider(PresentationModel& g, const WordDecider& candidate, std::size_t wordLength) {
  Verdict v;
  v.check = "wordproblem";
  v.bound = {{"word_length", wordLength}, {"stage", g.stage()}};
  std::size_t identities = 0, total = 0;
  for (const auto& w : wordsUpTo(g.alphabet(), wordLength)) {
    const auto said = candidate(w);
    if (!said) {
      v.status = Status::unknown;
      v.evidence = {{"diverged", w.str()}};
      return v;
    }
    const bool proved = g.provablyIdentity(PresentationModel::encode(w));
    if (proved != *said) {
      v.status = Status::refuted;
      v.evidence = {{"word", w.str()},
                    {"decider", *said},
                    {"enumerated", proved},
                    // a proved identity is certified; the other direction is up to the stage
                    {"certified", proved}};
      return v;
    }
    identities += proved;
    ++total;
  }
  v.status = Status::witnessed;
  v.evidence = {{"words", total}, {"identities", identities}};
  return v;
}

Verdict checkCyclicUpTo(GroupModel& g, std::size_t bound, std::size_t exponentBound) {
  Verdict v;
  v.check = "cyclic";
  v.bound = {{"sample", bound}, {"exponent", exponentBound}};
  if (g.exact()) {
    const Verdict ab = checkAbelian(g, bound);
    if (ab.status == Status::refuted) {
      v.status = Status::refuted;
      v.evidence = {{"non_abelian", ab.evidence}};
      return v;
    }
  }
  const auto s = g.sample(bound);
  for (const auto& w : s) {
    // powers w^k, k = 0, 1, -1, 2, -2, ...
    std::vector<std::pair<long, Value>> powers{{0, g.identity()}};
    Value up = g.identity(), down = g.identity();
    const Value wi = g.inverse(w);
    for (std::size_t k = 1; k <= exponentBound; ++k) {
      up = g.multiply(up, w);
      down = g.multiply(down, wi);
      powers.push_back({static_cast<long>(k), up});
      powers.push_back({-static_cast<long>(k), down});
    }
    auto exps = nlohmann::json::array();
    bool covers = true;
    for (const auto& x : s) {
      std::optional<long> e;
      for (const auto& [k, p] : powers)
        if (g.provablyIdentity(g.multiply(x, g.inverse(p)))) {
          e = k;
          break;
        }
      if (!e) {
        covers = false;
        break;
      }
      exps.push_back({g.show(x), *e});
    }
    if (covers) {
      v.status = Status::witnessed;
      v.evidence = {{"generator", g.show(w)}, {"exponents", exps}};
      return v;
    }
  }
  // a finite group sampled in full with no generator is not cyclic
  if (g.exact() && s.size() < bound && exponentBound >= s.size()) {
    v.status = Status::refuted;
    v.evidence = {{"exhaustive", true}, {"order", s.size()}};
  }
  return v;
}

}  // namespace grouplab
