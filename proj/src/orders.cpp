#include "grouplab/orders.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "grouplab/error.hpp"

namespace grouplab {

bool TermLess::operator()(const Monomial& x, const Monomial& y) const {
  if (x.size() != y.size()) return x.size() < y.size();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), generatorLess);
}

std::int64_t MagnusSeries::coefficient(const Monomial& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? 0 : it->second;
}

std::string MagnusSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    const auto a = c < 0 ? -c : c;
    if (m.empty() || a != 1) os << a;
    for (auto g : m) os << "X_" << generatorOf(g).str();
  }
  if (first) os << '0';
  return os.str();
}

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::less: return "less";
    case Comparison::equal: return "equal";
    case Comparison::greater: return "greater";
  }
  return "?";
}

namespace {

using Component = std::map<Monomial, std::int64_t, TermLess>;

// Homogeneous components of the expansion, built one degree at a time for
// every prefix of the word, so comparisons stop at the first differing degree.
class Expansion {
 public:
  explicit Expansion(const Word& w) : letters_(w.letters()), table_(letters_.size() + 1) {
    table_[0].push_back({{Monomial{}, 1}});
    for (std::size_t i = 1; i <= letters_.size(); ++i) table_[i].push_back({{Monomial{}, 1}});
  }

  const Component& degree(std::size_t d) {
    while (table_[0].size() <= d) extend();
    return table_.back()[d];
  }

 private:
  void extend() {
    const std::size_t d = table_[0].size();
    table_[0].push_back({});
    for (std::size_t i = 1; i <= letters_.size(); ++i) {
      const GeneratorId g = generatorOfLetter(letters_[i - 1]);
      const bool positive = letters_[i - 1] > 0;
      Component out;
      // X_g^k with coefficient 1 for k <= 1 (positive) or (-1)^k (inverse)
      for (std::size_t k = 0; k <= d; ++k) {
        if (positive && k > 1) break;
        const std::int64_t c = positive || k % 2 == 0 ? 1 : -1;
        for (const auto& [m, coef] : table_[i - 1][d - k]) {
          Monomial mm = m;
          mm.insert(mm.end(), k, g);
          auto& slot = out[mm];
          slot += c * coef;
          if (slot == 0) out.erase(mm);
        }
      }
      table_[i].push_back(std::move(out));
    }
  }

  std::vector<Letter> letters_;
  std::vector<std::vector<Component>> table_;  // prefix -> degree -> component
};

}  // namespace

MagnusSeries magnusExpand(const Word& w, std::size_t degree) {
  if (degree == 0) throw InvalidArgument("magnus expansion needs degree >= 1");
  Expansion e(w);
  MagnusSeries out;
  out.degreeBound = degree;
  for (std::size_t d = 0; d <= degree; ++d)
    for (const auto& [m, c] : e.degree(d)) out.terms.emplace(m, c);
  return out;
}

Comparison magnusCompare(const Word& w, const Word& v, std::size_t degree) {
  if (degree == 0) throw InvalidArgument("magnus comparison needs degree >= 1");
  Expansion ew(w), ev(v);
  for (std::size_t d = 1; d <= degree; ++d) {
    const auto& x = ew.degree(d);
    const auto& y = ev.degree(d);
    auto i = x.begin();
    auto j = y.begin();
    TermLess less;
    while (i != x.end() || j != y.end()) {
      std::int64_t cx = 0, cy = 0;
      if (j == y.end() || (i != x.end() && less(i->first, j->first))) {
        cx = i->second;
        ++i;
      } else if (i == x.end() || less(j->first, i->first)) {
        cy = j->second;
        ++j;
      } else {
        cx = i->second;
        cy = j->second;
        ++i;
        ++j;
      }
      if (cx != cy) return cx > cy ? Comparison::greater : Comparison::less;
    }
  }
  return Comparison::equal;
}

bool positiveConeMember(const Word& w, std::size_t degree) {
  return magnusCompare(w, Word{}, degree) == Comparison::greater;
}

// ---------------------------------------------------------------- closures

namespace {

constexpr std::size_t kClosureLimit = 3000000;

struct Node {
  Value value;
  std::int64_t parent;  // -1 for a single factor
  std::size_t factor;   // index into the factor list
};

struct Search {
  GroupModel& g;
  std::vector<ClosureFactor> factors;  // conjugates (or plain generators)
  std::vector<Value> factorValues;
  std::vector<std::size_t> factorCost;
  std::vector<Node> nodes;
  std::unordered_map<Value, std::size_t, ValueHash> index;
  std::vector<std::vector<std::size_t>> byCost;  // cost -> node ids

  explicit Search(GroupModel& model) : g(model) {}

  std::vector<ClosureFactor> trace(std::size_t id) const {
    std::vector<ClosureFactor> out;
    for (std::int64_t n = static_cast<std::int64_t>(id); n >= 0; n = nodes[n].parent)
      out.push_back(factors[nodes[n].factor]);
    std::reverse(out.begin(), out.end());
    return out;
  }

  // Returns true when the new node is the identity.
  bool add(Value v, std::int64_t parent, std::size_t factor, std::size_t cost, ClosureResult& r) {
    if (index.count(v)) return false;
    if (nodes.size() >= kClosureLimit) throw BudgetExceeded("closure exceeded " + std::to_string(kClosureLimit) + " elements");
    const std::size_t id = nodes.size();
    index.emplace(v, id);
    nodes.push_back({std::move(v), parent, factor});
    if (byCost.size() <= cost) byCost.resize(cost + 1);
    byCost[cost].push_back(id);
    if (g.provablyIdentity(nodes[id].value)) {
      r.containsIdentity = true;
      r.identityProduct = trace(id);
      return true;
    }
    return false;
  }

  ClosureResult run(std::size_t depth) {
    ClosureResult r;
    r.depth = depth;
    for (std::size_t c = 1; c <= depth && !r.containsIdentity; ++c) {
      for (std::size_t f = 0; f < factors.size() && !r.containsIdentity; ++f)
        if (factorCost[f] == c) r.containsIdentity = add(factorValues[f], -1, f, c, r);
      for (std::size_t f = 0; f < factors.size() && !r.containsIdentity; ++f) {
        const std::size_t fc = factorCost[f];
        if (fc >= c || c - fc >= byCost.size()) continue;
        const auto ids = byCost[c - fc];
        for (auto id : ids) {
          if (add(g.multiply(nodes[id].value, factorValues[f]), static_cast<std::int64_t>(id), f, c, r)) break;
        }
      }
    }
    r.elements.reserve(nodes.size());
    for (const auto& n : nodes) r.elements.push_back(n.value);
    return r;
  }
};

}  // namespace

ClosureResult sgrClosure(GroupModel& g, const std::vector<Value>& gens, std::size_t depth) {
  Search s(g);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    s.factors.push_back({g.identity(), i});
    s.factorValues.push_back(gens[i]);
    s.factorCost.push_back(1);
  }
  return s.run(depth);
}

ClosureResult normalSgrClosure(GroupModel& g, const std::vector<Value>& gens, std::size_t depth) {
  Search s(g);
  if (depth == 0) return s.run(0);
  // conjugators by word length, deduplicated as group elements
  std::vector<Value> steps;
  for (const auto& x : g.generators()) {
    steps.push_back(x);
    steps.push_back(g.inverse(x));
  }
  std::unordered_map<Value, bool, ValueHash> seen{{g.identity(), true}};
  std::vector<Value> layer{g.identity()};
  std::unordered_map<Value, bool, ValueHash> conjugates;
  for (std::size_t len = 0; len + 1 <= depth; ++len) {
    for (const auto& u : layer)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Value c = g.multiply(g.multiply(u, gens[i]), g.inverse(u));
        if (conjugates.emplace(c, true).second) {
          s.factors.push_back({u, i});
          s.factorValues.push_back(std::move(c));
          s.factorCost.push_back(len + 1);
        }
      }
    if (len + 2 > depth) break;
    std::vector<Value> next;
    for (const auto& u : layer)
      for (const auto& x : steps) {
        Value v = g.multiply(u, x);
        if (seen.emplace(v, true).second) next.push_back(std::move(v));
      }
    layer = std::move(next);
  }
  return s.run(depth);
}

OrderMode parseOrderMode(const std::string& s) {
  if (s == "left") return OrderMode::left;
  if (s == "bi") return OrderMode::bi;
  throw InvalidArgument("order mode must be 'left' or 'bi', got '" + s + "'");
}

nlohmann::json OlfResult::toJson(const GroupModel& g) const {
  nlohmann::json j;
  j["status"] = refuted ? "refuted" : "survives";
  j["depth"] = depth;
  if (refuted) {
    j["signs"] = signs;
    auto& ps = j["products"] = nlohmann::json::array();
    for (const auto& p : products) {
      auto arr = nlohmann::json::array();
      for (const auto& f : p) arr.push_back({{"conjugator", g.show(f.conjugator)}, {"element", f.generator}});
      ps.push_back(arr);
    }
  } else {
    j["surviving_signs"] = survivingSigns;
  }
  return j;
}

OlfResult olfRefute(GroupModel& g, const std::vector<Value>& elements, std::size_t depth, OrderMode mode) {
  if (elements.empty()) throw InvalidArgument("olf refutation needs a nonempty tuple");
  if (elements.size() > 20) throw InvalidArgument("olf refutation supports at most 20 elements");
  OlfResult out;
  out.depth = depth;
  const std::size_t n = elements.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> signs(n);
    std::vector<Value> gens(n);
    for (std::size_t i = 0; i < n; ++i) {
      signs[i] = (mask >> i) & 1 ? -1 : 1;
      gens[i] = signs[i] > 0 ? elements[i] : g.inverse(elements[i]);
    }
    const auto r = mode == OrderMode::bi ? normalSgrClosure(g, gens, depth) : sgrClosure(g, gens, depth);
    if (!r.containsIdentity) {
      out.refuted = false;
      out.signs.clear();
      out.products.clear();
      out.survivingSigns = signs;
      return out;
    }
    out.signs.push_back(signs);
    out.products.push_back(r.identityProduct);
  }
  out.refuted = true;
  return out;
}

std::optional<std::vector<Value>> findOlfObstruction(GroupModel& g, const std::vector<Value>& candidates,
                                                     std::size_t maxTuple, std::size_t depth, OrderMode mode) {
  std::vector<Value> pool;
  for (const auto& c : candidates)
    if (!g.provablyIdentity(c)) pool.push_back(c);
  if (maxTuple >= 1)
    for (const auto& c : pool)
      if (olfRefute(g, {c}, depth, mode).refuted) return std::vector<Value>{c};
  if (maxTuple >= 2)
    for (std::size_t j = 1; j < pool.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (olfRefute(g, {pool[i], pool[j]}, depth, mode).refuted) return std::vector<Value>{pool[i], pool[j]};
  return std::nullopt;
}

}  // namespace grouplab
