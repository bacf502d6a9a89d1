#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <unordered_map>

#include "grouplab/error.hpp"
#include "grouplab/presentations.hpp"

namespace grouplab {

SearchBudget SearchBudget::forStage(Natural s) {
  const auto lg = static_cast<std::size_t>(std::bit_width(s + 1) - 1);  // floor(log2(s+1))
  SearchBudget b;
  b.relators = static_cast<std::size_t>(s);
  b.wordLength = std::min<std::size_t>(static_cast<std::size_t>(s), 2 + lg);
  b.moves = std::min<std::size_t>(static_cast<std::size_t>(s), 1 + lg);
  b.lengthCap = b.wordLength + 4;
  return b;
}

namespace {

// A cyclic conjugate c of r^sign, inserted as a block. With q such that
// c = q^-1 r^sign q, removing the block again is conjugation by q^-1.
struct Insertion {
  Word block;
  Word qInverse;
  std::size_t relator;
  int sign;
};

// Integer row lattice spanned by relator exponent vectors, kept in echelon
// form. A word whose exponent vector lies outside it is not an identity word,
// whatever the search budget.
class AbelianLattice {
 public:
  using Vec = std::map<GeneratorId, long>;

  void add(Vec v) {
    while (!v.empty()) {
      auto [col, val] = *v.begin();
      auto it = rows_.find(col);
      if (it == rows_.end()) {
        if (val < 0) negate(v);
        rows_.emplace(col, std::move(v));
        return;
      }
      Vec& r = it->second;
      // gcd step on column col between r and v
      long a = r.at(col), b = val;
      long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
      while (b != 0) {
        const long q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
      }
      // a = x0*r[col] + y0*v[col]; x1*r + y1*v has zero in col
      Vec g = combine(r, x0, v, y0);
      Vec rest = combine(r, x1, v, y1);
      if (g.at(col) < 0) negate(g);
      r = std::move(g);
      v = std::move(rest);
    }
  }

  bool contains(Vec v) const {
    while (!v.empty()) {
      auto [col, val] = *v.begin();
      auto it = rows_.find(col);
      if (it == rows_.end() || val % it->second.at(col) != 0) return false;
      v = combine(v, 1, it->second, -(val / it->second.at(col)));
    }
    return true;
  }

  static Vec of(const Word& w) {
    Vec v;
    for (Letter l : w.letters()) v[generatorOfLetter(l)] += signOf(l);
    std::erase_if(v, [](const auto& e) { return e.second == 0; });
    return v;
  }

 private:
  static void negate(Vec& v) {
    for (auto& e : v) e.second = -e.second;
  }
  static Vec combine(const Vec& a, long x, const Vec& b, long y) {
    Vec out;
    for (const auto& [k, val] : a) out[k] += x * val;
    for (const auto& [k, val] : b) out[k] += y * val;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
  }
  std::map<GeneratorId, Vec> rows_;
};

struct SearchTables {
  AbelianLattice lattice;
  std::size_t visible = 0;
  std::size_t maxBlock = 1;
  std::unordered_map<Letter, std::vector<Insertion>> byFirstLetter;
  // Failure memo: word -> largest move budget known to be insufficient.
  std::unordered_map<Word, std::size_t, WordHash> failed;
  // Success memo: word -> certificate reaching the empty word.
  std::unordered_map<Word, std::vector<IdentityFactor>, WordHash> solved;

  void addRelator(const Word& r, std::size_t index) {
    lattice.add(AbelianLattice::of(r));
    for (int sign : {1, -1}) {
      const Word rs = pow(r, sign);
      const Word c = rs.cyclicallyReduced();
      if (c.empty()) continue;
      // rs = p c p^-1
      const std::size_t strip = (rs.size() - c.size()) / 2;
      const Word p = rs.prefix(strip);
      std::vector<Word> seen;
      for (std::size_t t = 0; t < c.size(); ++t) {
        Word block = mul(c.suffix(t), c.prefix(t));
        if (std::find(seen.begin(), seen.end(), block) != seen.end()) continue;
        seen.push_back(block);
        const Word q = mul(p, c.prefix(t));
        maxBlock = std::max(maxBlock, block.size());
        byFirstLetter[block[0]].push_back(Insertion{block, inv(q), index, sign});
      }
    }
  }
};

}  // namespace

struct IdentityOracle::Impl {
  StageLookup stages;
  std::mutex mutex;
  std::map<std::pair<std::size_t, std::size_t>, SearchTables> tables;  // (visible, cap)

  SearchTables& tablesFor(std::size_t visible, std::size_t cap, const std::vector<Word>& relators) {
    auto& t = tables[{visible, cap}];
    while (t.visible < visible) {
      t.addRelator(relators[t.visible], t.visible);
      ++t.visible;
    }
    return t;
  }

  static bool dfs(SearchTables& t, const Word& z, std::size_t k, std::size_t cap, std::vector<IdentityFactor>& out) {
    if (z.empty()) return true;
    if (k == 0 || z.size() > k * t.maxBlock) return false;
    if (auto it = t.solved.find(z); it != t.solved.end() && it->second.size() <= k) {
      out.insert(out.end(), it->second.begin(), it->second.end());
      return true;
    }
    if (auto it = t.failed.find(z); it != t.failed.end() && it->second >= k) return false;
    const auto& letters = z.letters();
    for (std::size_t i = 1; i <= z.size(); ++i) {
      auto bucket = t.byFirstLetter.find(-letters[i - 1]);
      if (bucket == t.byFirstLetter.end()) continue;
      for (const auto& ins : bucket->second) {
        std::vector<Letter> raw(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(i));
        raw.insert(raw.end(), ins.block.letters().begin(), ins.block.letters().end());
        raw.insert(raw.end(), letters.begin() + static_cast<std::ptrdiff_t>(i), letters.end());
        Word next = Word::reduce(raw);
        if (next.size() > cap) continue;
        const std::size_t mark = out.size();
        out.push_back(IdentityFactor{mul(z.prefix(i), ins.qInverse), ins.relator, -ins.sign});
        if (dfs(t, next, k - 1, cap, out)) {
          t.solved.emplace(z, std::vector<IdentityFactor>(out.begin() + static_cast<std::ptrdiff_t>(mark), out.end()));
          return true;
        }
        out.resize(mark);
      }
    }
    auto& f = t.failed[z];
    f = std::max(f, k);
    return false;
  }
};

IdentityOracle::IdentityOracle(StageLookup stages) : impl_(std::make_unique<Impl>()) {
  impl_->stages = std::move(stages);
}

IdentityOracle::~IdentityOracle() = default;

std::vector<Word> IdentityOracle::visibleRelators(Natural s) const {
  const auto& rels = impl_->stages(s).relators;
  const auto n = std::min(rels.size(), SearchBudget::forStage(s).relators);
  return {rels.begin(), rels.begin() + static_cast<std::ptrdiff_t>(n)};
}

std::optional<IdentityCertificate> IdentityOracle::prove(const Word& w, Natural s) {
  if (w.empty()) return IdentityCertificate{};
  const auto budget = SearchBudget::forStage(s);
  if (w.size() > budget.wordLength) return std::nullopt;
  const auto& rels = impl_->stages(s).relators;
  const auto visible = std::min(rels.size(), budget.relators);
  if (visible == 0) return std::nullopt;

  std::lock_guard lock(impl_->mutex);
  auto& t = impl_->tablesFor(visible, budget.lengthCap, rels);
  if (!t.lattice.contains(AbelianLattice::of(w))) return std::nullopt;
  const std::size_t start = (w.size() + t.maxBlock - 1) / t.maxBlock;
  for (std::size_t k = std::max<std::size_t>(start, 1); k <= budget.moves; ++k) {
    std::vector<IdentityFactor> factors;
    if (Impl::dfs(t, w, k, budget.lengthCap, factors)) return IdentityCertificate{std::move(factors)};
  }
  return std::nullopt;
}

IdentityApprox identityWords(const RecursivePresentation& p, Natural s, std::optional<std::size_t> maxLength) {
  const auto budget = SearchBudget::forStage(s);
  std::size_t len = budget.wordLength;
  if (maxLength) len = std::min(len, *maxLength);
  const auto& gens = p.generatorsAt(s);
  // 2k(2k-1)^(len-1) words of length len: refuse hopeless enumerations.
  double count = 1, layer = 1;
  for (std::size_t i = 1; i <= len; ++i) {
    layer *= (i == 1 ? 2.0 * gens.size() : 2.0 * gens.size() - 1);
    count += layer;
  }
  if (count > 5e6) throw BudgetExceeded("identityWords: too many candidate words at this stage");
  IdentityApprox out;
  out.stage = s;
  auto& oracle = p.oracle();
  for (const auto& w : wordsUpTo(gens, len)) {
    if (auto cert = oracle.prove(w, s)) {
      out.words.push_back(w);
      out.certificates.push_back(std::move(*cert));
    }
  }
  return out;
}

bool equalAtStage(const RecursivePresentation& p, const Word& w, const Word& v, Natural s) {
  return p.oracle().contains(mul(w, inv(v)), s);
}

}  // namespace grouplab
