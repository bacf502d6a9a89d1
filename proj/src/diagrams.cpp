#include "grouplab/diagrams.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "grouplab/equal_powers.hpp"
#include "grouplab/error.hpp"

namespace grouplab {

void AtomicDiagram::advance() {
  const Natural s = stageSizes_.size();
  if (s >= stageBudget_) throw BudgetExceeded(name_ + ": stage budget of " + std::to_string(stageBudget_) + " exhausted");
  step(s);
  stageSizes_.push_back(values_.size());
}

void AtomicDiagram::advanceUntil(const std::function<bool()>& done, const char* what) {
  while (!done()) {
    if (exhausted()) throw BudgetExceeded(name_ + ": finite group has no " + what);
    if (values_.size() > codeBudget_)
      throw BudgetExceeded(name_ + ": code budget exhausted while looking for " + what);
    advance();
  }
}

AtomicDiagram::Code AtomicDiagram::assign(const Value& v) {
  auto [it, inserted] = codes_.emplace(v, values_.size());
  if (inserted) values_.push_back(v);
  return it->second;
}

std::size_t AtomicDiagram::codeCount(Natural s) {
  std::lock_guard lock(mutex_);
  advanceUntil([&] { return stageSizes_.size() > s; }, "a stage");
  return stageSizes_[s];
}

Natural AtomicDiagram::stageOfCode(Code c) {
  std::lock_guard lock(mutex_);
  advanceUntil([&] { return values_.size() > c && !stageSizes_.empty() && stageSizes_.back() > c; }, "a code");
  auto it = std::upper_bound(stageSizes_.begin(), stageSizes_.end(), c);
  return static_cast<Natural>(it - stageSizes_.begin());
}

Value AtomicDiagram::valueOf(Code c) {
  std::lock_guard lock(mutex_);
  advanceUntil([&] { return values_.size() > c; }, "a code");
  return values_[c];
}

std::optional<AtomicDiagram::Code> AtomicDiagram::codeOfValue(const Value& v) {
  std::lock_guard lock(mutex_);
  auto it = codes_.find(v);
  if (it == codes_.end()) return std::nullopt;
  return it->second;
}

AtomicDiagram::Code AtomicDiagram::codeFor(const Value& v) {
  std::lock_guard lock(mutex_);
  advanceUntil([&] { return isCoded(v); }, "a value");
  return codes_.at(v);
}

AtomicDiagram::Code AtomicDiagram::mul(Code a, Code b) { return codeFor(mulValues(valueOf(a), valueOf(b))); }
AtomicDiagram::Code AtomicDiagram::inverse(Code a) { return codeFor(inverseValue(valueOf(a))); }

AtomicDiagram::Code AtomicDiagram::power(Code a, long n) {
  Value base = n < 0 ? inverseValue(valueOf(a)) : valueOf(a);
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Value out = valueOf(0);
  while (e) {
    if (e & 1) out = mulValues(out, base);
    e >>= 1;
    if (e) base = mulValues(base, base);
  }
  return codeFor(out);
}

std::optional<AtomicDiagram::Code> AtomicDiagram::productAt(Code a, Code b, Natural s) {
  const auto n = codeCount(s);
  if (a >= n || b >= n) return std::nullopt;
  auto c = codeOfValue(mulValues(valueOf(a), valueOf(b)));
  if (!c || *c >= n) return std::nullopt;
  return c;
}

std::vector<AtomicDiagram::Triple> AtomicDiagram::triplesAt(Natural s, Code below) {
  std::vector<Triple> out;
  const Code n = std::min<Code>(codeCount(s), below);
  for (Code a = 0; a < n; ++a)
    for (Code b = 0; b < n; ++b)
      if (auto c = productAt(a, b, s)) out.push_back({a, b, *c});
  return out;
}

std::optional<Natural> AtomicDiagram::elementOrder(Code a, Natural bound) {
  const Value e = valueOf(0);
  const Value g = valueOf(a);
  Value x = g;
  for (Natural n = 1; n <= bound; ++n) {
    if (x == e) return n;
    x = mulValues(x, g);
  }
  return std::nullopt;
}

Natural AtomicDiagram::stagesBuilt() {
  std::lock_guard lock(mutex_);
  return stageSizes_.size();
}

std::string AtomicDiagram::showValue(const Value& v) const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::vector<Value> AtomicDiagram::generatorValues() {
  std::vector<Value> out;
  for (Code c = 1; c <= 4; ++c) {
    try {
      out.push_back(valueOf(c));
    } catch (const BudgetExceeded&) {
      break;
    }
  }
  return out;
}

std::vector<Value> ValueModel::sample(std::size_t bound) {
  std::vector<Value> out;
  for (AtomicDiagram::Code c = 0; c < bound; ++c) {
    try {
      out.push_back(d_->valueOf(c));
    } catch (const BudgetExceeded&) {
      break;  // finite groups run out of codes
    }
  }
  return out;
}

// ---------------------------------------------------------------- tables

TableDiagram::TableDiagram(FiniteGroupTable t) : AtomicDiagram(t.name()), t_(std::move(t)) {}

Value TableDiagram::mulValues(const Value& a, const Value& b) const {
  return {t_.mul(static_cast<std::uint32_t>(a[0]), static_cast<std::uint32_t>(b[0]))};
}

Value TableDiagram::inverseValue(const Value& a) const { return {t_.inverse(static_cast<std::uint32_t>(a[0]))}; }

void TableDiagram::step(Natural s) {
  if (s > 0) return;
  for (std::uint32_t i = 0; i < t_.order(); ++i) assign({i});
}

// ---------------------------------------------------------------- products

ProductDiagram::ProductDiagram(DiagramPtr a, DiagramPtr b)
    : AtomicDiagram(a->name() + " x " + b->name()), a_(std::move(a)), b_(std::move(b)) {}

Value ProductDiagram::pack(const Value& a, const Value& b) {
  Value v{static_cast<std::int64_t>(a.size())};
  v.insert(v.end(), a.begin(), a.end());
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

std::pair<Value, Value> ProductDiagram::unpack(const Value& v) {
  const auto n = static_cast<std::size_t>(v.at(0));
  return {Value(v.begin() + 1, v.begin() + 1 + static_cast<std::ptrdiff_t>(n)),
          Value(v.begin() + 1 + static_cast<std::ptrdiff_t>(n), v.end())};
}

Value ProductDiagram::mulValues(const Value& x, const Value& y) const {
  auto [x1, x2] = unpack(x);
  auto [y1, y2] = unpack(y);
  return pack(a_->mulValues(x1, y1), b_->mulValues(x2, y2));
}

Value ProductDiagram::inverseValue(const Value& x) const {
  auto [x1, x2] = unpack(x);
  return pack(a_->inverseValue(x1), b_->inverseValue(x2));
}

std::string ProductDiagram::showValue(const Value& v) const {
  auto [x1, x2] = unpack(v);
  return "(" + a_->showValue(x1) + ", " + b_->showValue(x2) + ")";
}

std::vector<Value> ProductDiagram::generatorValues() {
  std::vector<Value> out;
  const Value ea = a_->valueOf(0), eb = b_->valueOf(0);
  for (const auto& g : a_->generatorValues()) out.push_back(pack(g, eb));
  for (const auto& h : b_->generatorValues()) out.push_back(pack(ea, h));
  return out;
}

void ProductDiagram::step(Natural s) {
  const std::size_t na = a_->codeCount(s), nb = b_->codeCount(s);
  const std::size_t m = std::max(na, nb);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j <= k; ++j) {
        if (std::max(i, j) != k || i >= na || j >= nb) continue;
        const Value v = pack(a_->valueOf(i), b_->valueOf(j));
        if (!isCoded(v)) assign(v);
      }
}

// ---------------------------------------------------------------- builtins

namespace {

class IntegersDiagram : public AtomicDiagram {
 public:
  IntegersDiagram() : AtomicDiagram("Z") {}
  Value mulValues(const Value& a, const Value& b) const override { return {a[0] + b[0]}; }
  Value inverseValue(const Value& a) const override { return {-a[0]}; }
  std::string showValue(const Value& v) const override { return std::to_string(v[0]); }
  std::vector<Value> generatorValues() override { return {{1}}; }

 protected:
  void step(Natural s) override {
    const auto k = static_cast<std::int64_t>(s);
    assign({k});
    if (k) assign({-k});
  }
};

class RationalsDiagram : public AtomicDiagram {
 public:
  RationalsDiagram() : AtomicDiagram("Q") {}
  Value mulValues(const Value& a, const Value& b) const override {
    return normalize(a[0] * b[1] + b[0] * a[1], a[1] * b[1]);
  }
  Value inverseValue(const Value& a) const override { return {-a[0], a[1]}; }
  std::string showValue(const Value& v) const override {
    return v[1] == 1 ? std::to_string(v[0]) : std::to_string(v[0]) + "/" + std::to_string(v[1]);
  }
  std::vector<Value> generatorValues() override { return {{1, 1}, {1, 2}, {1, 3}}; }

  static Value normalize(std::int64_t p, std::int64_t q) {
    if (q < 0) p = -p, q = -q;
    const auto g = std::gcd(p, q);
    return {p / g, q / g};
  }

 protected:
  // Stage s codes every p/q in lowest terms with max(|p|, q) = s.
  void step(Natural s) override {
    const auto k = static_cast<std::int64_t>(s);
    if (k == 0) {
      assign({0, 1});
      return;
    }
    for (std::int64_t q = 1; q <= k; ++q)
      for (std::int64_t p = -k; p <= k; ++p) {
        if (std::max(p < 0 ? -p : p, q) != k || std::gcd(p, q) != 1) continue;
        assign({p, q});
      }
  }
};

class Free2Diagram : public AtomicDiagram {
 public:
  Free2Diagram() : AtomicDiagram("F2"), a_(intern("a")), b_(intern("b")) {}
  Value mulValues(const Value& x, const Value& y) const override {
    return PresentationModel::encode(grouplab::mul(PresentationModel::decode(x), PresentationModel::decode(y)));
  }
  Value inverseValue(const Value& x) const override {
    return PresentationModel::encode(inv(PresentationModel::decode(x)));
  }
  std::string showValue(const Value& v) const override { return PresentationModel::decode(v).str(); }
  std::vector<Value> generatorValues() override {
    return {PresentationModel::encode(Word::generator(a_)), PresentationModel::encode(Word::generator(b_))};
  }

 protected:
  void step(Natural s) override {
    const std::vector<GeneratorId> alphabet{a_, b_};
    for (const auto& w : wordsUpTo(alphabet, static_cast<std::size_t>(s)))
      if (w.size() == s) assign(PresentationModel::encode(w));
  }

 private:
  GeneratorId a_, b_;
};

class EqualPowersDiagram : public AtomicDiagram {
 public:
  explicit EqualPowersDiagram(unsigned n)
      : AtomicDiagram("<a,b|a^" + std::to_string(n) + "=b^" + std::to_string(n) + ">"), nf_(n) {}
  Value mulValues(const Value& x, const Value& y) const override { return nf_.multiply(x, y); }
  Value inverseValue(const Value& x) const override { return nf_.inverse(x); }
  std::string showValue(const Value& v) const override { return nf_.show(v); }
  std::vector<Value> generatorValues() override {
    return {nf_.fromWord(Word::generator(nf_.a())), nf_.fromWord(Word::generator(nf_.b()))};
  }

 protected:
  // Stage s codes the normal forms of the length-s words, in shortlex order.
  void step(Natural s) override {
    const std::vector<GeneratorId> alphabet{nf_.a(), nf_.b()};
    for (const auto& w : wordsUpTo(alphabet, static_cast<std::size_t>(s)))
      if (w.size() == s) assign(nf_.fromWord(w));
  }

 private:
  EqualPowersNormalForm nf_;
};

}  // namespace

DiagramPtr cyclic(std::size_t n) { return std::make_shared<TableDiagram>(cyclicTable(n)); }
DiagramPtr integers() { return std::make_shared<IntegersDiagram>(); }
DiagramPtr wreathPP(std::uint32_t p) { return std::make_shared<TableDiagram>(wreathTable(p)); }
DiagramPtr rationalsFull() { return std::make_shared<RationalsDiagram>(); }
DiagramPtr free2() { return std::make_shared<Free2Diagram>(); }
DiagramPtr oneRelatorEqualPowers(unsigned n) {
  if (n < 1) throw InvalidArgument("oneRelatorEqualPowers: n must be >= 1");
  return std::make_shared<EqualPowersDiagram>(n);
}
DiagramPtr directProduct(DiagramPtr a, DiagramPtr b) {
  return std::make_shared<ProductDiagram>(std::move(a), std::move(b));
}

DiagramPtr builtinDiagram(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  auto arg = [&]() -> unsigned long {
    if (colon == std::string::npos) throw InvalidArgument("builtin '" + head + "' needs a parameter, e.g. " + head + ":3");
    try {
      return std::stoul(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("builtin '" + spec + "': bad parameter");
    }
  };
  if (head == "cyclic") return cyclic(arg());
  if (head == "integers") return integers();
  if (head == "wreath") return wreathPP(static_cast<std::uint32_t>(arg()));
  if (head == "rationals") return rationalsFull();
  if (head == "free2") return free2();
  if (head == "equal-powers") return oneRelatorEqualPowers(static_cast<unsigned>(arg()));
  throw InvalidArgument("unknown builtin diagram '" + spec + "'");
}

}  // namespace grouplab
