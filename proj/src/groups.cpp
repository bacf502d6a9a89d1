#include "grouplab/groups.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "grouplab/error.hpp"

namespace grouplab {

std::size_t ValueHash::operator()(const Value& v) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : v) {
    h ^= static_cast<std::uint64_t>(x);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::string GroupModel::show(const Value& a) const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ']';
  return os.str();
}

Value GroupModel::power(const Value& a, long n) {
  Value base = n < 0 ? inverse(a) : a;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Value out = identity();
  while (e) {
    if (e & 1) out = multiply(out, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return out;
}

FiniteGroupTable::FiniteGroupTable(std::size_t order, std::vector<std::uint32_t> table, std::string name)
    : order_(order), table_(std::move(table)), name_(std::move(name)) {
  if (order_ == 0 || table_.size() != order_ * order_) throw InvalidArgument("group table: wrong size");
  for (auto x : table_)
    if (x >= order_) throw InvalidArgument("group table: entry out of range");
  for (std::uint32_t a = 0; a < order_; ++a)
    if (mul(0, a) != a || mul(a, 0) != a) throw InvalidArgument("group table: element 0 is not the identity");
  for (std::uint32_t a = 0; a < order_; ++a)
    for (std::uint32_t b = 0; b < order_; ++b)
      for (std::uint32_t c = 0; c < order_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw InvalidArgument("group table: not associative");
  inverse_.assign(order_, 0);
  for (std::uint32_t a = 0; a < order_; ++a) {
    bool found = false;
    for (std::uint32_t b = 0; b < order_ && !found; ++b)
      if (mul(a, b) == 0 && mul(b, a) == 0) {
        inverse_[a] = b;
        found = true;
      }
    if (!found) throw InvalidArgument("group table: element without inverse");
  }
}

std::uint32_t FiniteGroupTable::elementOrder(std::uint32_t a) const {
  std::uint32_t n = 1;
  for (std::uint32_t x = a; x != 0; x = mul(x, a)) ++n;
  return n;
}

bool FiniteGroupTable::isAbelian() const {
  for (std::uint32_t a = 0; a < order_; ++a)
    for (std::uint32_t b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroupTable::Subset FiniteGroupTable::closure(const std::vector<std::uint32_t>& gens) const {
  Subset in(order_, false);
  std::deque<std::uint32_t> queue{0};
  in[0] = true;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (auto g : gens) {
      auto y = mul(x, g);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  }
  return in;  // finite: the monoid generated is already a group
}

FiniteGroupTable::Subset FiniteGroupTable::commutatorSubgroup(const Subset& a, const Subset& b) const {
  std::vector<bool> seen(order_, false);
  std::vector<std::uint32_t> gens;
  for (std::uint32_t x = 0; x < order_; ++x) {
    if (!a[x]) continue;
    for (std::uint32_t y = 0; y < order_; ++y) {
      if (!b[y]) continue;
      auto c = mul(mul(inverse(x), inverse(y)), mul(x, y));
      if (!seen[c]) {
        seen[c] = true;
        gens.push_back(c);
      }
    }
  }
  return closure(gens);
}

namespace {

std::size_t count(const FiniteGroupTable::Subset& s) {
  std::size_t n = 0;
  for (bool b : s) n += b;
  return n;
}

template <class Next>
std::optional<std::size_t> seriesLength(const FiniteGroupTable& t, Next next) {
  FiniteGroupTable::Subset whole(t.order(), true);
  FiniteGroupTable::Subset cur = whole;
  std::size_t steps = 0;
  while (count(cur) > 1) {
    auto nxt = next(cur, whole);
    if (count(nxt) == count(cur)) return std::nullopt;
    cur = std::move(nxt);
    ++steps;
  }
  return steps;
}

}  // namespace

std::optional<std::size_t> nilpotencyClass(const FiniteGroupTable& t) {
  return seriesLength(t, [&](const auto& cur, const auto& whole) { return t.commutatorSubgroup(cur, whole); });
}

std::optional<std::size_t> solvabilityDegree(const FiniteGroupTable& t) {
  return seriesLength(t, [&](const auto& cur, const auto&) { return t.commutatorSubgroup(cur, cur); });
}

FiniteGroupTable cyclicTable(std::size_t n) {
  if (n < 1) throw InvalidArgument("cyclic: n must be >= 1");
  std::vector<std::uint32_t> tab(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) tab[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
  return FiniteGroupTable(n, std::move(tab), "Z_" + std::to_string(n));
}

namespace {
bool isPrime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
}  // namespace

namespace {

struct WreathElement {
  std::vector<std::int64_t> f;
  std::int64_t t = 0;
};

WreathElement wreathSplit(std::uint32_t p, std::int64_t idx) {
  WreathElement e;
  e.f.resize(p);
  for (std::uint32_t i = 0; i < p; ++i) {
    e.f[i] = idx % p;
    idx /= p;
  }
  e.t = idx;
  return e;
}

std::int64_t wreathJoin(std::uint32_t p, const WreathElement& e) {
  std::int64_t idx = e.t;
  for (std::uint32_t i = p; i-- > 0;) idx = idx * p + e.f[i];
  return idx;
}

}  // namespace

std::int64_t wreathOrder(std::uint32_t p) {
  std::int64_t n = 1;
  for (std::uint32_t i = 0; i <= p; ++i) n *= p;
  return n;
}

std::int64_t wreathMul(std::uint32_t p, std::int64_t x, std::int64_t y) {
  const auto a = wreathSplit(p, x), b = wreathSplit(p, y);
  WreathElement c;
  c.f.resize(p);
  for (std::uint32_t i = 0; i < p; ++i) c.f[i] = (a.f[i] + b.f[(i + p - a.t) % p]) % p;
  c.t = (a.t + b.t) % p;
  return wreathJoin(p, c);
}

std::int64_t wreathInverse(std::uint32_t p, std::int64_t x) {
  // (f,t)^-1 = (-shift_{-t} f, -t)
  const auto a = wreathSplit(p, x);
  WreathElement c;
  c.f.resize(p);
  c.t = (p - a.t) % p;
  for (std::uint32_t i = 0; i < p; ++i) c.f[i] = (p - a.f[(i + a.t) % p]) % p;
  return wreathJoin(p, c);
}

FiniteGroupTable wreathTable(std::uint32_t p) {
  if (!isPrime(p)) throw InvalidArgument("wreathPP: p must be prime");
  if (p > 3) throw InvalidArgument("wreathPP: table too large for p > 3");
  const auto n = static_cast<std::size_t>(wreathOrder(p));
  std::vector<std::uint32_t> tab(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      tab[a * n + b] = static_cast<std::uint32_t>(wreathMul(p, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)));
  return FiniteGroupTable(n, std::move(tab), "Z_" + std::to_string(p) + " wr Z_" + std::to_string(p));
}

FiniteGroupTable directProduct(const FiniteGroupTable& a, const FiniteGroupTable& b) {
  const std::size_t n = a.order() * b.order();
  std::vector<std::uint32_t> tab(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto x1 = static_cast<std::uint32_t>(x % a.order()), x2 = static_cast<std::uint32_t>(x / a.order());
      const auto y1 = static_cast<std::uint32_t>(y % a.order()), y2 = static_cast<std::uint32_t>(y / a.order());
      tab[x * n + y] = a.mul(x1, y1) + static_cast<std::uint32_t>(a.order()) * b.mul(x2, y2);
    }
  return FiniteGroupTable(n, std::move(tab), a.name() + " x " + b.name());
}

std::uint32_t prime(std::size_t n) {
  if (n < 1) throw InvalidArgument("prime: index is 1-based");
  std::uint32_t c = 1;
  while (n) {
    ++c;
    if (isPrime(c)) --n;
  }
  return c;
}

PresentationModel::PresentationModel(RecursivePresentation p, Natural stage, std::size_t sampleLength,
                                     std::size_t alphabetLimit)
    : p_(std::move(p)), stage_(stage), sampleLength_(sampleLength), alphabetLimit_(alphabetLimit) {}

std::vector<GeneratorId> PresentationModel::alphabet() const {
  auto gens = p_.generatorsAt(stage_);
  if (alphabetLimit_ && gens.size() > alphabetLimit_) gens.resize(alphabetLimit_);
  return gens;
}

std::string PresentationModel::describe() const { return p_.name() + " @ stage " + std::to_string(stage_); }

Value PresentationModel::encode(const Word& w) { return Value(w.letters().begin(), w.letters().end()); }

Word PresentationModel::decode(const Value& v) {
  std::vector<Letter> l(v.begin(), v.end());
  return Word::reduce(l);
}

Value PresentationModel::multiply(const Value& a, const Value& b) { return encode(mul(decode(a), decode(b))); }
Value PresentationModel::inverse(const Value& a) { return encode(inv(decode(a))); }
bool PresentationModel::provablyIdentity(const Value& a) { return p_.oracle().contains(decode(a), stage_); }

std::vector<Value> PresentationModel::sample(std::size_t bound) {
  // Shortlex, one length at a time, so a small bound never builds the
  // whole ball over a large alphabet.
  std::vector<Letter> letters;
  for (auto g : alphabet()) {
    letters.push_back(letter(g, 1));
    letters.push_back(letter(g, -1));
  }
  std::sort(letters.begin(), letters.end(), letterLess);
  std::vector<Value> out;
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 0; out.size() < bound; ++len) {
    for (const auto& w : layer) {
      if (out.size() >= bound) break;
      out.push_back(encode(w));
    }
    if (len == sampleLength_ || out.size() >= bound) break;
    std::vector<Word> next;
    for (const auto& w : layer)
      for (auto l : letters)
        if (w.empty() || w.letters().back() != -l) {
          auto ls = w.letters();
          ls.push_back(l);
          next.push_back(Word::reduce(ls));
        }
    layer = std::move(next);
  }
  return out;
}

std::vector<Value> PresentationModel::generators() {
  std::vector<Value> out;
  for (auto g : p_.generatorsAt(stage_)) out.push_back(encode(Word::generator(g)));
  return out;
}

std::string PresentationModel::show(const Value& a) const { return decode(a).str(); }

}  // namespace grouplab
