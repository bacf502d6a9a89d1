#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "grouplab/equal_powers.hpp"
#include "grouplab/error.hpp"
#include "grouplab/free_solvable.hpp"
#include "grouplab/reductions.hpp"

namespace grouplab {

MarkovDiagramPair witnessPairCg(const std::string& property) {
  if (property == "abelian") return {integers(), free2()};
  if (property == "torsion-free" || property == "orderable") return {integers(), cyclic(2)};
  if (property == "trivial") return {cyclic(1), integers()};
  if (property == "divisible") return {rationalsFull(), integers()};
  if (property == "torsion") return {cyclic(2), integers()};
  throw InvalidArgument("no witness pair for property '" + property + "'");
}

// ---------------------------------------------------------------- markov

MarkovDiagram::MarkovDiagram(DiagramPtr positive, DiagramPtr negative, HaltingScenario h, bool augment)
    : AtomicDiagram("markov(" + positive->name() + ", " + (augment ? negative->name() + " x Z" : negative->name()) + ")"),
      pos_(std::move(positive)),
      neg_(augment ? directProduct(std::move(negative), integers()) : std::move(negative)),
      h_(h) {}

Value MarkovDiagram::pair(std::size_t i, std::size_t j) { return ProductDiagram::pack(pos_->valueOf(i), neg_->valueOf(j)); }

namespace {

// Finite witnesses run out of codes.
bool hasCode(AtomicDiagram& d, AtomicDiagram::Code c) {
  try {
    d.valueOf(c);
    return true;
  } catch (const BudgetExceeded&) {
    return false;
  }
}

}  // namespace

Value MarkovDiagram::mulValues(const Value& x, const Value& y) const {
  auto [x1, x2] = ProductDiagram::unpack(x);
  auto [y1, y2] = ProductDiagram::unpack(y);
  return ProductDiagram::pack(pos_->mulValues(x1, y1), neg_->mulValues(x2, y2));
}

Value MarkovDiagram::inverseValue(const Value& x) const {
  auto [x1, x2] = ProductDiagram::unpack(x);
  return ProductDiagram::pack(pos_->inverseValue(x1), neg_->inverseValue(x2));
}

std::string MarkovDiagram::showValue(const Value& v) const {
  auto [x1, x2] = ProductDiagram::unpack(v);
  return "(" + pos_->showValue(x1) + ", " + neg_->showValue(x2) + ")";
}

std::vector<Value> MarkovDiagram::generatorValues() {
  std::vector<Value> out;
  const Value e1 = pos_->valueOf(0), e2 = neg_->valueOf(0);
  for (const auto& g : pos_->generatorValues()) out.push_back(ProductDiagram::pack(g, e2));
  if (h_.halts())
    for (const auto& g : neg_->generatorValues()) out.push_back(ProductDiagram::pack(e1, g));
  return out;
}

void MarkovDiagram::step(Natural s) {
  if (s == 0) {
    assign(pair(0, 0));
    return;
  }
  const bool halted = h_.haltedBy(s), haltedBefore = h_.haltedBy(s - 1);
  if (!halted) {
    // Case 1: code the least uncoded (g_i, 1), then close off the least j
    // whose products with all g_k, k <= j, are not yet in the diagram.
    while (hasCode(*pos_, nextPositive_) && isCoded(pair(nextPositive_, 0))) ++nextPositive_;
    if (hasCode(*pos_, nextPositive_)) assign(pair(nextPositive_, 0));
    for (;; ++closedUpTo_) {
      const std::size_t j = closedUpTo_;
      if (!hasCode(*pos_, j)) break;
      const Value gj = pair(j, 0);
      bool missing = !isCoded(gj);
      for (std::size_t k = 0; k <= j && !missing; ++k) {
        const Value gk = pair(k, 0);
        missing = !isCoded(gk) || !isCoded(mulValues(gj, gk)) || !isCoded(mulValues(gk, gj));
      }
      if (!missing) continue;
      assign(gj);
      for (std::size_t k = 0; k <= j; ++k) {
        const Value gk = pair(k, 0);
        assign(gk);
        assign(mulValues(gj, gk));
        assign(mulValues(gk, gj));
      }
      ++closedUpTo_;
      break;
    }
    return;
  }
  if (!haltedBefore) {
    // Case 2: open the second coordinate with h_1 next to every coded g_i.
    const Value e1 = pos_->valueOf(0), e2 = neg_->valueOf(0);
    std::vector<AtomicDiagram::Code> indices;
    for (Code c = 0; c < assignedSoFar(); ++c) {
      auto [g, h] = ProductDiagram::unpack(valueAtCode(c));
      if (h == e2 && g != e1) indices.push_back(pos_->codeFor(g));
    }
    std::sort(indices.begin(), indices.end());
    for (auto i : indices) assign(pair(i, 1));
    return;
  }
  // Case 3: fill in G+ x G- on the least uncoded indices.
  while (hasCode(*pos_, nextPositive_) && isCoded(pair(nextPositive_, 0))) ++nextPositive_;
  while (hasCode(*neg_, nextNegative_) && isCoded(pair(0, nextNegative_))) ++nextNegative_;
  const std::size_t i = hasCode(*pos_, nextPositive_) ? nextPositive_ : nextPositive_ - 1;
  const std::size_t j = hasCode(*neg_, nextNegative_) ? nextNegative_ : nextNegative_ - 1;
  assign(pair(i, 0));
  assign(pair(0, j));
  for (std::size_t u = 0; u <= i; ++u)
    for (std::size_t v = 0; v <= j; ++v) {
      const Value a = pair(u, v);
      assign(a);
      for (std::size_t x = 0; x <= i; ++x)
        for (std::size_t y = 0; y <= j; ++y) {
          const Value b = pair(x, y);
          assign(b);
          assign(mulValues(a, b));
        }
    }
}

std::shared_ptr<MarkovDiagram> markovCg(const MarkovDiagramPair& w, const HaltingScenario& h, bool augment) {
  return std::make_shared<MarkovDiagram>(w.positive, w.negative, h, augment);
}

// ---------------------------------------------------------------- torsion

namespace {

void trimZeros(Value& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Shifted residue in [-M/2, M/2 - 1].
std::int64_t shifted(std::int64_t v, std::int64_t modulus) {
  const std::int64_t half = modulus / 2;
  std::int64_t r = (v + half) % modulus;
  if (r < 0) r += modulus;
  return r - half;
}

std::string showTuple(const Value& v) {
  std::ostringstream os;
  os << '(';
  if (v.empty()) os << 0;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

TorsionDiagram::TorsionDiagram(StagedCeSet s) : AtomicDiagram("torsion"), s_(std::move(s)) {}

Value TorsionDiagram::add(const Value& x, const Value& y) const {
  Value r(std::max(x.size(), y.size()), 0);
  for (std::size_t k = 0; k < r.size(); ++k) {
    r[k] = (k < x.size() ? x[k] : 0) + (k < y.size() ? y[k] : 0);
    if (k < moduli_.size()) r[k] = shifted(r[k], moduli_[k]);
  }
  trimZeros(r);
  return r;
}

void TorsionDiagram::step(Natural s) {
  if (s == 0) {
    assign({});
    assign({1});
    assign({-1});
    return;
  }
  const std::size_t count = assignedSoFar();
  std::size_t n = 0;
  for (Code c = 0; c < count; ++c) n = std::max(n, valueAtCode(c).size());
  std::int64_t m = 0;
  for (Code c = 0; c < count; ++c) {
    const auto& v = valueAtCode(c);
    if (v.size() == n) m = std::max(m, v[n - 1]);
  }
  const bool event = s_.newElement(s).has_value();
  // Case 2 closes the last component off modulo 4m before summing.
  if (event) moduli_.push_back(4 * m);
  for (Code i = 0; i < count; ++i)
    for (Code j = i; j < count; ++j) assign(add(valueAtCode(i), valueAtCode(j)));
  if (event) {
    Value unit(n + 1, 0);
    unit[n] = 1;
    assign(unit);
    unit[n] = -1;
    assign(unit);
  }
}

std::optional<Natural> TorsionDiagram::closeStage(std::size_t k) const {
  const Natural wanted = k + 1;
  if (s_.isFinite()) {
    const auto last = s_.lastEventStage();
    if (!last || s_.sizeAtStage(*last) < wanted) return std::nullopt;
  }
  for (Natural s = 1;; ++s)
    if (s_.sizeAtStage(s) >= wanted) return s;
}

std::int64_t TorsionDiagram::limitModulus(std::size_t k) {
  const auto stage = closeStage(k);
  if (!stage) return 0;
  codeCount(*stage);
  return moduli_.at(k);
}

std::vector<std::int64_t> TorsionDiagram::moduli() {
  stagesBuilt();
  return moduli_;
}

Value TorsionDiagram::mulValues(const Value& x, const Value& y) const {
  auto* self = const_cast<TorsionDiagram*>(this);
  Value r(std::max(x.size(), y.size()), 0);
  for (std::size_t k = 0; k < r.size(); ++k) {
    r[k] = (k < x.size() ? x[k] : 0) + (k < y.size() ? y[k] : 0);
    if (const auto mod = self->limitModulus(k)) r[k] = shifted(r[k], mod);
  }
  trimZeros(r);
  return r;
}

Value TorsionDiagram::inverseValue(const Value& x) const {
  auto* self = const_cast<TorsionDiagram*>(this);
  Value r(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    r[k] = -x[k];
    if (const auto mod = self->limitModulus(k)) r[k] = shifted(r[k], mod);
  }
  trimZeros(r);
  return r;
}

std::string TorsionDiagram::showValue(const Value& v) const { return showTuple(v); }

std::vector<Value> TorsionDiagram::generatorValues() { return {{1}}; }

std::shared_ptr<TorsionDiagram> torsionCg(const StagedCeSet& s) { return std::make_shared<TorsionDiagram>(s); }

// ---------------------------------------------------------------- divisible

namespace {

Value rational(std::int64_t p, std::int64_t q) {
  if (q < 0) p = -p, q = -q;
  const auto g = std::gcd(p, q);
  return {p / g, q / g};
}

class DivisibleDiagram : public AtomicDiagram {
 public:
  explicit DivisibleDiagram(StagedCeSet s) : AtomicDiagram("divisible"), s_(std::move(s)) {}
  Value mulValues(const Value& a, const Value& b) const override { return rational(a[0] * b[1] + b[0] * a[1], a[1] * b[1]); }
  Value inverseValue(const Value& a) const override { return {-a[0], a[1]}; }
  std::string showValue(const Value& v) const override {
    return v[1] == 1 ? std::to_string(v[0]) : std::to_string(v[0]) + "/" + std::to_string(v[1]);
  }
  std::vector<Value> generatorValues() override { return {{1, 1}}; }

 protected:
  void step(Natural s) override {
    if (s == 0) {
      assign({0, 1});
      assign({1, 1});
      assign({-1, 1});
      return;
    }
    // Dovetailed closure: stage s+1 adds g_i + g_s for every i <= s.
    const Code k = s - 1;
    if (k < assignedSoFar())
      for (Code i = 0; i <= k; ++i) assign(mulValues(valueAtCode(i), valueAtCode(k)));
    if (s_.newElement(s)) assign({1, static_cast<std::int64_t>(s_.sizeAtStage(s))});
  }

 private:
  StagedCeSet s_;
};

// ---------------------------------------------------------------- nilpotent

class NilpotentDiagram : public AtomicDiagram {
 public:
  explicit NilpotentDiagram(StagedCeSet s) : AtomicDiagram("nilpotent"), s_(std::move(s)) {}

  Value mulValues(const Value& x, const Value& y) const override {
    Value r(std::max(x.size(), y.size()), 0);
    r[0] = x[0] + y[0];
    for (std::size_t k = 1; k < r.size(); ++k)
      r[k] = wreathMul(prime(k), k < x.size() ? x[k] : 0, k < y.size() ? y[k] : 0);
    return trim(std::move(r));
  }
  Value inverseValue(const Value& x) const override {
    Value r(x.size());
    r[0] = -x[0];
    for (std::size_t k = 1; k < r.size(); ++k) r[k] = wreathInverse(prime(k), x[k]);
    return r;
  }
  std::string showValue(const Value& v) const override {
    std::ostringstream os;
    os << '(' << v[0];
    for (std::size_t k = 1; k < v.size(); ++k) os << (k == 1 ? "; " : ", ") << v[k];
    os << ')';
    return os.str();
  }
  std::vector<Value> generatorValues() override {
    std::vector<Value> out{{1}};
    for (std::size_t k = 1; k <= blocks_; ++k) {
      const std::int64_t p = prime(k);
      Value a(k + 1, 0), t(k + 1, 0);
      a[k] = 1;
      t[k] = wreathOrder(static_cast<std::uint32_t>(p)) / p;
      out.push_back(a);
      out.push_back(t);
    }
    return out;
  }

 protected:
  void step(Natural s) override {
    if (s == 0) {
      assign({0});
      assign({1});
      assign({-1});
      return;
    }
    const Code k = s - 1;
    if (k < assignedSoFar())
      for (Code i = 0; i <= k; ++i) {
        assign(mulValues(valueAtCode(i), valueAtCode(k)));
        assign(mulValues(valueAtCode(k), valueAtCode(i)));
      }
    if (!s_.newElement(s)) return;
    // Case 2: name all of W(n) at once.
    const std::size_t n = s_.sizeAtStage(s);
    const auto order = wreathOrder(prime(n));
    if (assignedSoFar() + static_cast<std::size_t>(order) > kNameLimit)
      throw BudgetExceeded("nilpotent: W(" + std::to_string(n) + ") has " + std::to_string(order) + " elements");
    blocks_ = n;
    for (std::int64_t w = 1; w < order; ++w) {
      Value v(n + 1, 0);
      v[n] = w;
      assign(v);
    }
  }

 private:
  static constexpr std::size_t kNameLimit = 2000000;
  static Value trim(Value v) {
    while (v.size() > 1 && v.back() == 0) v.pop_back();
    return v;
  }
  StagedCeSet s_;
  std::size_t blocks_ = 0;
};

// ---------------------------------------------------------------- solvable

// Z x H_1 x H_2 x ... with H_k = F2 / F2^(k). A value is [z] followed by one
// length-prefixed block per H_k (empty block for the identity), trailing
// empty blocks trimmed. Multiplication goes through representative words.
class SolvableDiagram : public AtomicDiagram {
 public:
  explicit SolvableDiagram(StagedCeSet s) : AtomicDiagram("solvable"), s_(std::move(s)) {}

  static constexpr std::size_t kReleasePerStage = 2;

  Value mulValues(const Value& x, const Value& y) const override {
    auto bx = split(x), by = split(y);
    Value r{x[0] + y[0]};
    std::vector<Value> blocks(std::max(bx.size(), by.size()));
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const Value* u = k < bx.size() ? &bx[k] : nullptr;
      const Value* v = k < by.size() ? &by[k] : nullptr;
      if (!u || u->empty()) blocks[k] = v ? *v : Value{};
      else if (!v || v->empty()) blocks[k] = *u;
      else blocks[k] = component(k + 1, grouplab::mul(rep(k + 1, *u), rep(k + 1, *v)));
    }
    return join(r[0], blocks);
  }
  Value inverseValue(const Value& x) const override {
    auto bx = split(x);
    for (std::size_t k = 0; k < bx.size(); ++k)
      if (!bx[k].empty()) bx[k] = component(k + 1, inv(rep(k + 1, bx[k])));
    return join(-x[0], bx);
  }
  std::string showValue(const Value& v) const override {
    auto bx = split(v);
    std::ostringstream os;
    os << '(' << v[0];
    for (std::size_t k = 0; k < bx.size(); ++k) os << (k ? ", " : "; ") << (bx[k].empty() ? "1" : rep(k + 1, bx[k]).str());
    os << ')';
    return os.str();
  }
  std::vector<Value> generatorValues() override {
    std::vector<Value> out{{1}};
    for (std::size_t k = 1; k <= opened_; ++k)
      for (GeneratorId g : {intern("a"), intern("b")}) out.push_back(element(k, Word::generator(g)));
    return out;
  }

 protected:
  void step(Natural s) override {
    if (s == 0) {
      assign({0});
      assign({1});
      assign({-1});
      return;
    }
    const Code k = s - 1;
    if (k < assignedSoFar())
      for (Code i = 0; i <= k; ++i) {
        assign(mulValues(valueAtCode(i), valueAtCode(k)));
        assign(mulValues(valueAtCode(k), valueAtCode(i)));
      }
    // Dovetailed release of further elements of each open factor.
    for (std::size_t b = 1; b <= opened_; ++b) {
      std::size_t released = 0;
      while (released < kReleasePerStage) {
        const Value v = element(b, nextWord(b));
        if (isCoded(v)) continue;
        assign(v);
        ++released;
      }
    }
    if (!s_.newElement(s)) return;
    opened_ = s_.sizeAtStage(s);
    cursor_.resize(opened_ + 1, 0);
    for (int i = 0; i < 4; ++i) assign(element(opened_, nextWord(opened_)));
  }

 private:
  // The next nonempty reduced word over a, b in shortlex order for block b.
  Word nextWord(std::size_t b) {
    const std::size_t i = cursor_[b]++;
    while (words_.size() <= i) {
      ++wordLength_;
      const std::vector<GeneratorId> alphabet{intern("a"), intern("b")};
      words_.clear();
      for (auto& w : wordsUpTo(alphabet, wordLength_))
        if (!w.empty()) words_.push_back(std::move(w));
    }
    return words_[i];
  }

  const FreeSolvable& group(std::size_t k) const {
    std::lock_guard lock(cacheMutex_);
    while (groups_.size() < k) groups_.push_back(std::make_unique<FreeSolvable>(static_cast<unsigned>(groups_.size() + 1)));
    return *groups_[k - 1];
  }

  // Canonical block of w in H_k, remembering w as its representative.
  Value component(std::size_t k, const Word& w) const {
    const auto& g = group(k);
    Value c = g.canonical(w);
    if (c == g.identity()) return {};
    std::lock_guard lock(cacheMutex_);
    if (reps_.size() < k) reps_.resize(k);
    auto [it, inserted] = reps_[k - 1].emplace(c, w);
    if (!inserted && w.size() < it->second.size()) it->second = w;
    return c;
  }

  Word rep(std::size_t k, const Value& c) const {
    std::lock_guard lock(cacheMutex_);
    return reps_.at(k - 1).at(c);
  }

  Value element(std::size_t k, const Word& w) const {
    std::vector<Value> blocks(k);
    blocks[k - 1] = component(k, w);
    return join(0, blocks);
  }

  static std::vector<Value> split(const Value& v) {
    std::vector<Value> out;
    for (std::size_t i = 1; i < v.size();) {
      const auto n = static_cast<std::size_t>(v[i]);
      out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(i + 1), v.begin() + static_cast<std::ptrdiff_t>(i + 1 + n));
      i += 1 + n;
    }
    return out;
  }

  static Value join(std::int64_t z, std::vector<Value> blocks) {
    while (!blocks.empty() && blocks.back().empty()) blocks.pop_back();
    Value v{z};
    for (const auto& b : blocks) {
      v.push_back(static_cast<std::int64_t>(b.size()));
      v.insert(v.end(), b.begin(), b.end());
    }
    return v;
  }

  StagedCeSet s_;
  std::size_t opened_ = 0;
  std::vector<std::size_t> cursor_;
  std::vector<Word> words_;
  std::size_t wordLength_ = 0;
  mutable std::mutex cacheMutex_;
  mutable std::vector<std::unique_ptr<FreeSolvable>> groups_;
  mutable std::vector<std::map<Value, Word>> reps_;
};

// ---------------------------------------------------------------- biorder

class BiorderDiagram : public AtomicDiagram {
 public:
  explicit BiorderDiagram(HaltingScenario h)
      : AtomicDiagram(h.halts() ? "biorder(halts at " + std::to_string(*h.stage()) + ")" : "biorder(never)"),
        halt_(h.stage()),
        a_(intern("a")),
        b_(intern("b")) {
    if (halt_) nf_.emplace(static_cast<unsigned>(*halt_));
  }

  Value mulValues(const Value& x, const Value& y) const override {
    if (nf_) return nf_->multiply(x, y);
    return PresentationModel::encode(grouplab::mul(PresentationModel::decode(x), PresentationModel::decode(y)));
  }
  Value inverseValue(const Value& x) const override {
    if (nf_) return nf_->inverse(x);
    return PresentationModel::encode(inv(PresentationModel::decode(x)));
  }
  std::string showValue(const Value& v) const override {
    return nf_ ? nf_->show(v) : PresentationModel::decode(v).str();
  }
  std::vector<Value> generatorValues() override { return {valueOfWord(Word::generator(a_)), valueOfWord(Word::generator(b_))}; }

  // Before the halting stage the stage diagrams are those of F2: products
  // are recorded only when the reduced product is short enough.
  std::optional<Code> productAt(Code a, Code b, Natural s) override {
    if (halt_ && s >= *halt_) return AtomicDiagram::productAt(a, b, s);
    const auto n = codeCount(s);
    if (a >= n || b >= n) return std::nullopt;
    const Word r = grouplab::mul(wordOf(a), wordOf(b));
    if (r.size() > s) return std::nullopt;
    auto c = codeOfValue(valueOfWord(r));
    if (!c || *c >= n) return std::nullopt;
    return c;
  }

  Word wordOf(Code c) {
    valueOf(c);
    std::lock_guard lock(wordsMutex_);
    return words_.at(c);
  }

 protected:
  void step(Natural s) override {
    const std::vector<GeneratorId> alphabet{a_, b_};
    for (const auto& w : wordsUpTo(alphabet, static_cast<std::size_t>(s))) {
      if (w.size() != s) continue;
      const Value v = valueOfWord(w);
      if (isCoded(v)) {
        if (!halt_ || s < *halt_)
          throw std::logic_error("biorder: distinct words of length < t collapsed in <a,b|a^t=b^t>");
        continue;
      }
      assign(v);
      std::lock_guard lock(wordsMutex_);
      words_.push_back(w);
    }
  }

 private:
  Value valueOfWord(const Word& w) const { return nf_ ? nf_->fromWord(w) : PresentationModel::encode(w); }

  std::optional<Natural> halt_;
  std::optional<EqualPowersNormalForm> nf_;
  GeneratorId a_, b_;
  std::mutex wordsMutex_;
  std::vector<Word> words_;
};

}  // namespace

DiagramPtr divisibleCg(const StagedCeSet& s) { return std::make_shared<DivisibleDiagram>(s); }
DiagramPtr nilpotentCg(const StagedCeSet& s) { return std::make_shared<NilpotentDiagram>(s); }
DiagramPtr solvableCg(const StagedCeSet& s) { return std::make_shared<SolvableDiagram>(s); }
DiagramPtr biorderCg(const HaltingScenario& h) { return std::make_shared<BiorderDiagram>(h); }

}  // namespace grouplab
