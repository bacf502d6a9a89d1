#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>

#include "grouplab/error.hpp"
#include "grouplab/groups.hpp"
#include "grouplab/reductions.hpp"

namespace grouplab {

namespace {

void addRelator(PresentationStage& st, const Word& w) {
  if (!w.empty()) st.relators.push_back(w);
}

Word gen(GeneratorId g) { return Word::generator(g); }

// Renames a witness's generators by their position in its generator list.
class PositionalRename {
 public:
  explicit PositionalRename(RecursivePresentation p) : p_(std::move(p)) {}

  std::uint32_t position(GeneratorId g, Natural stage) {
    auto it = pos_.find(g);
    if (it != pos_.end()) return it->second;
    const auto& gens = p_.generatorsAt(stage);
    for (std::size_t k = 0; k < gens.size(); ++k) pos_.emplace(gens[k], static_cast<std::uint32_t>(k));
    it = pos_.find(g);
    if (it == pos_.end()) throw InvalidArgument(p_.name() + ": relator uses an undeclared generator");
    return it->second;
  }

  Word rename(const Word& w, Natural stage, const std::function<GeneratorId(std::uint32_t)>& target) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter l : w.letters()) out.push_back(letter(target(position(generatorOfLetter(l), stage)), signOf(l)));
    return Word::reduce(out);
  }

  const RecursivePresentation& presentation() const { return p_; }

 private:
  RecursivePresentation p_;
  std::unordered_map<GeneratorId, std::uint32_t> pos_;
};

// Items of `p` that are new at stage t, renamed through `target`.
void appendNewItems(PositionalRename& r, Natural t, const std::function<GeneratorId(std::uint32_t)>& target,
                    PresentationStage& st) {
  const auto& now = r.presentation().at(t);
  std::size_t oldGens = 0, oldRels = 0;
  if (t > 0) {
    const auto& before = r.presentation().at(t - 1);
    oldGens = before.generators.size();
    oldRels = before.relators.size();
  }
  for (std::size_t k = oldGens; k < now.generators.size(); ++k) st.generators.push_back(target(static_cast<std::uint32_t>(k)));
  for (std::size_t k = oldRels; k < now.relators.size(); ++k) addRelator(st, r.rename(now.relators[k], t, target));
}

// Kills values of W whose generator block is already visible; pending
// values are killed at the stage their block appears.
template <class Kill>
void killVisible(const StagedCeSet& w, Natural s, std::set<Natural>& killed, Kill kill) {
  for (Natural n : w.atStage(s)) {
    if (n > s) break;
    if (killed.insert(n).second) kill(n);
  }
}

}  // namespace

RecursivePresentation pruferTwo() {
  return RecursivePresentation::incremental("Z(2^inf)", [](Natural s, PresentationStage& st) {
    const auto x = [](Natural k) { return intern("x", {static_cast<std::uint32_t>(k)}); };
    st.generators.push_back(x(s + 1));
    if (s == 0) addRelator(st, Word::power(x(1), 2));
    else addRelator(st, mul(Word::power(x(s + 1), 2), Word::generator(x(s), -1)));
  });
}

std::vector<std::string> markovProperties() {
  return {"abelian", "torsion-free", "trivial", "divisible", "torsion", "orderable"};
}

MarkovWitnessPair witnessPairRp(const std::string& property) {
  using RP = RecursivePresentation;
  if (property == "abelian") return {RP::parse("<x|>", "x", ""), RP::parse("<x,y|>", "x,y", "")};
  if (property == "torsion-free") return {RP::parse("<x|>", "x", ""), RP::parse("<y|y^2>", "y", "y^2")};
  if (property == "trivial") return {RP::parse("<x|x>", "x", "x"), RP::parse("<y|>", "y", "")};
  if (property == "divisible") return {pruferTwo(), RP::parse("<x|>", "x", "")};
  if (property == "torsion") return {RP::parse("<x|x^2>", "x", "x^2"), RP::parse("<y|>", "y", "")};
  if (property == "orderable") return {RP::parse("<x|>", "x", ""), RP::parse("<y|y^2>", "y", "y^2")};
  throw InvalidArgument("no witness pair for property '" + property + "'");
}

RecursivePresentation markovRp(const MarkovWitnessPair& w, const StagedCeSet& s) {
  struct State {
    PositionalRename pos, neg;
    StagedCeSet set;
    std::vector<std::size_t> killedGens;  // per killed block: generators already killed
  };
  auto state = std::make_shared<State>(State{PositionalRename(w.positive), PositionalRename(w.negative), s, {}});
  const std::string name = "markov(" + w.positive.name() + ", " + w.negative.name() + ")";
  return RecursivePresentation::incremental(name, [state](Natural t, PresentationStage& st) {
    auto x = [](std::uint32_t k) { return intern("x", {k}); };
    auto y = [](Natural block) {
      return [block](std::uint32_t k) { return intern("y", {static_cast<std::uint32_t>(block), k}); };
    };
    appendNewItems(state->pos, t, x, st);
    for (Natural i = 0; i < t; ++i) appendNewItems(state->neg, t - i, y(i), st);
    appendNewItems(state->neg, 0, y(t), st);
    const std::size_t killedBlocks = t == 0 ? 0 : state->set.sizeAtStage(t);
    state->killedGens.resize(killedBlocks, 0);
    for (std::size_t i = 0; i < killedBlocks; ++i) {
      const auto visible = state->neg.presentation().generatorsAt(t - i).size();
      for (auto& k = state->killedGens[i]; k < visible; ++k) addRelator(st, gen(y(i)(static_cast<std::uint32_t>(k))));
    }
  });
}

RecursivePresentation finitenessRp(const StagedCeSet& s) {
  auto killed = std::make_shared<std::set<Natural>>();
  return RecursivePresentation::incremental("finiteness", [s, killed](Natural t, PresentationStage& st) {
    auto x = [](Natural k) { return intern("x", {static_cast<std::uint32_t>(k)}); };
    st.generators.push_back(x(t));
    addRelator(st, Word::power(x(t), 2));
    for (Natural i = 0; i < t; ++i) addRelator(st, commutator(gen(x(i)), gen(x(t))));
    killVisible(s, t, *killed, [&](Natural n) { addRelator(st, gen(x(n))); });
  });
}

RecursivePresentation wordProblemRp(const StagedCeSet& s) {
  return RecursivePresentation::incremental("wordproblem", [s](Natural t, PresentationStage& st) {
    const auto a = intern("a"), b = intern("b"), c = intern("c"), d = intern("d");
    if (t == 0) {
      st.generators = {a, b, c, d};
      return;
    }
    if (auto n = s.newElement(t)) {
      const auto k = static_cast<long>(*n);
      const Word lhs = mul(mul(Word::power(a, k), gen(b)), Word::power(a, k));
      const Word rhs = mul(mul(Word::power(c, k), gen(d)), Word::power(c, k));
      addRelator(st, mul(lhs, inv(rhs)));
    }
  });
}

RecursivePresentation cyclicRp(const StagedCeSet& s) {
  auto killed = std::make_shared<std::set<Natural>>();
  return RecursivePresentation::incremental("cyclic", [s, killed](Natural t, PresentationStage& st) {
    auto x = [](Natural k) { return intern("x", {static_cast<std::uint32_t>(k)}); };
    st.generators.push_back(x(t));
    addRelator(st, Word::power(x(t), static_cast<long>(prime(t + 1))));
    for (Natural i = 0; i < t; ++i) addRelator(st, commutator(gen(x(i)), gen(x(t))));
    killVisible(s, t, *killed, [&](Natural n) { addRelator(st, gen(x(n))); });
  });
}

RecursivePresentation nilpotentRp(const StagedCeSet& s) {
  auto killed = std::make_shared<std::set<Natural>>();
  return RecursivePresentation::incremental("nilpotent", [s, killed](Natural t, PresentationStage& st) {
    auto a = [](Natural n) { return intern("a", {static_cast<std::uint32_t>(n)}); };
    auto tt = [](Natural n) { return intern("t", {static_cast<std::uint32_t>(n)}); };
    const long p = prime(t + 1);
    const Word A = gen(a(t)), T = gen(tt(t));
    st.generators.push_back(a(t));
    st.generators.push_back(tt(t));
    // Z_p wr Z_p: the conjugates a^(t^i) commute and generate the base.
    addRelator(st, pow(A, p));
    addRelator(st, pow(T, p));
    for (long i = 1; i < p; ++i) addRelator(st, commutator(A, mul(mul(pow(T, i), A), pow(T, -i))));
    for (Natural m = 0; m < t; ++m)
      for (const Word& g : {A, T})
        for (const Word& h : {gen(a(m)), gen(tt(m))}) addRelator(st, commutator(g, h));
    killVisible(s, t, *killed, [&](Natural n) {
      addRelator(st, gen(a(n)));
      addRelator(st, gen(tt(n)));
    });
  });
}

namespace {

// Tuples of 2^n word indices in order of max index, then lexicographic.
class TupleCursor {
 public:
  explicit TupleCursor(std::size_t arity) : tuple_(arity, 0) {}

  const std::vector<std::size_t>& current() const { return tuple_; }

  void next() {
    do {
      std::size_t i = tuple_.size();
      while (i > 0) {
        --i;
        if (tuple_[i] < max_) {
          ++tuple_[i];
          std::fill(tuple_.begin() + static_cast<std::ptrdiff_t>(i) + 1, tuple_.end(), 0);
          break;
        }
        if (i == 0) {
          ++max_;
          std::fill(tuple_.begin(), tuple_.end(), 0);
          tuple_.back() = max_;
          return;
        }
      }
    } while (*std::max_element(tuple_.begin(), tuple_.end()) != max_);
  }

 private:
  std::vector<std::size_t> tuple_;
  std::size_t max_ = 0;
};

// Nonempty reduced words over two generators in shortlex order, on demand.
class WordList {
 public:
  WordList(GeneratorId a, GeneratorId b) : alphabet_{a, b} {}
  const Word& at(std::size_t i) {
    while (words_.size() <= i) {
      ++length_;
      words_.clear();
      for (auto& w : wordsUpTo(alphabet_, length_))
        if (!w.empty()) words_.push_back(std::move(w));
    }
    return words_[i];
  }

 private:
  std::vector<GeneratorId> alphabet_;
  std::size_t length_ = 0;
  std::vector<Word> words_;
};

struct SolvableBlock {
  unsigned depth;
  WordList words;
  TupleCursor cursor;
  std::set<std::vector<Letter>> released;
  std::optional<Word> pending;  // next relator, waiting for the length bound
};

}  // namespace

RecursivePresentation solvableRp(const StagedCeSet& s) {
  struct State {
    std::vector<SolvableBlock> blocks;
    std::set<Natural> killed;
  };
  auto state = std::make_shared<State>();
  return RecursivePresentation::incremental("solvable", [s, state](Natural t, PresentationStage& st) {
    auto a = [](Natural n) { return intern("a", {static_cast<std::uint32_t>(n)}); };
    auto b = [](Natural n) { return intern("b", {static_cast<std::uint32_t>(n)}); };
    st.generators.push_back(a(t));
    st.generators.push_back(b(t));
    for (Natural m = 0; m < t; ++m)
      for (const Word& g : {gen(a(t)), gen(b(t))})
        for (const Word& h : {gen(a(m)), gen(b(m))}) addRelator(st, commutator(g, h));
    state->blocks.push_back(SolvableBlock{static_cast<unsigned>(t), WordList(a(t), b(t)), TupleCursor(1), {}, {}});
    // Depth-n relators are products of 2^n arguments and have length about
    // 4^n; a block starts once 2^n <= t+1 and releases words of length at
    // most 4(t+1), so every stage stays finite and small.
    const std::size_t lengthBound = 4 * (t + 1);
    for (Natural n = 0; n < state->blocks.size(); ++n) {
      auto& blk = state->blocks[n];
      if (state->killed.count(n) || blk.depth >= 63 || (Natural{1} << blk.depth) > t + 1) continue;
      if (blk.cursor.current().size() != (std::size_t{1} << blk.depth)) blk.cursor = TupleCursor(std::size_t{1} << blk.depth);
      std::size_t released = 0;
      for (int attempts = 0; released < kSolvableReleasePerStage && attempts < 20000; ++attempts) {
        if (!blk.pending) {
          std::vector<Word> args;
          for (auto i : blk.cursor.current()) args.push_back(blk.words.at(i));
          blk.cursor.next();
          Word r = derivedCommutator(blk.depth, args);
          if (r.empty() || !blk.released.insert(r.letters()).second) continue;
          blk.pending = std::move(r);
        }
        if (blk.pending->size() > lengthBound) break;
        addRelator(st, *blk.pending);
        blk.pending.reset();
        ++released;
      }
    }
    killVisible(s, t, state->killed, [&](Natural n) {
      addRelator(st, gen(a(n)));
      addRelator(st, gen(b(n)));
    });
  });
}

RecursivePresentation biorderRp(const StagedCeSet& s) {
  return RecursivePresentation::incremental("biorder", [s](Natural t, PresentationStage& st) {
    auto x = [](Natural k) { return intern("x", {static_cast<std::uint32_t>(k)}); };
    auto y = [](Natural k) { return intern("y", {static_cast<std::uint32_t>(k)}); };
    auto squares = [&](Natural k) { return mul(Word::power(x(k), 2), Word::power(y(k), -2)); };
    st.generators.push_back(x(t));
    st.generators.push_back(y(t));
    if (t == 0) {
      addRelator(st, squares(0));
      return;
    }
    if (s.newElement(t)) {
      const Natural k = s.sizeAtStage(t);
      addRelator(st, gen(x(k - 1)));
      addRelator(st, gen(y(k - 1)));
      addRelator(st, squares(k));
    }
  });
}

std::vector<std::string> constructionNames() {
  return {"markov-rp",  "finiteness-rp", "wordproblem-rp", "cyclic-rp",    "nilpotent-rp",
          "solvable-rp", "biorder-rp",   "markov-cg",      "torsion-cg",   "divisible-cg",
          "nilpotent-cg", "solvable-cg", "biorder-cg"};
}

bool isDiagramConstruction(const std::string& name) {
  return name.size() > 3 && name.compare(name.size() - 3, 3, "-cg") == 0;
}

}  // namespace grouplab
