#include <map>

#include "doctest.h"
#include "grouplab/diagrams.hpp"
#include "grouplab/error.hpp"
#include "oracles.hpp"

using namespace grouplab;
using Code = AtomicDiagram::Code;

namespace {

void checkGroupAxioms(AtomicDiagram& d, Code n) {
  for (Code a = 0; a < n; ++a) {
    CHECK(d.mul(0, a) == a);
    CHECK(d.mul(a, 0) == a);
    CHECK(d.mul(a, d.inverse(a)) == 0);
    for (Code b = 0; b < n; ++b)
      for (Code c = 0; c < n; c += 3) CHECK(d.mul(d.mul(a, b), c) == d.mul(a, d.mul(b, c)));
  }
}

// Value of a string over aAbB using the diagram's own generators.
Value evaluate(AtomicDiagram& d, const std::string& w) {
  const auto gens = d.generatorValues();
  Value x = d.valueOf(0);
  for (char c : w) {
    const Value& g = gens.at(c == 'a' || c == 'A' ? 0 : 1);
    x = d.mulValues(x, std::isupper(static_cast<unsigned char>(c)) ? d.inverseValue(g) : g);
  }
  return x;
}

}  // namespace

TEST_CASE("group axioms on small codes") {
  for (const auto& name : {"cyclic:7", "integers", "wreath:2", "rationals", "free2", "equal-powers:2"}) {
    CAPTURE(name);
    auto d = builtinDiagram(name);
    Code n = 0;
    try {
      for (; n < 25; ++n) d->valueOf(n);
    } catch (const BudgetExceeded&) {
    }
    checkGroupAxioms(*d, n);
  }
}

TEST_CASE("codes form an initial segment and never change") {
  auto d = integers();
  std::vector<Value> seen;
  for (Natural s = 0; s < 10; ++s) {
    const auto n = d->codeCount(s);
    CHECK(n >= seen.size());
    for (Code c = 0; c < seen.size(); ++c) CHECK(d->valueOf(c) == seen[c]);
    for (Code c = seen.size(); c < n; ++c) seen.push_back(d->valueOf(c));
  }
  CHECK(d->valueOf(1) == d->inverseValue(d->valueOf(2)));
}

TEST_CASE("stage diagrams only grow") {
  auto d = free2();
  const auto small = d->triplesAt(2, 10), big = d->triplesAt(3, 10);
  for (const auto& t : small) CHECK(std::find(big.begin(), big.end(), t) != big.end());
  for (const auto& t : big) CHECK(d->mul(t.a, t.b) == t.c);
}

TEST_CASE("equal powers agrees with the Klein bottle action") {
  auto d = oneRelatorEqualPowers(2);
  const auto words = oracle::reducedWords(8);
  std::map<std::tuple<long, long, long>, Value> byAction;
  for (const auto& w : words) {
    const auto act = oracle::klein(w);
    const Value v = evaluate(*d, w);
    CHECK_MESSAGE((v == d->valueOf(0)) == act.identity(), w);
    // same action <=> same value, checked on a thinned pairing
    auto [it, fresh] = byAction.emplace(std::tuple{act.m, act.s, act.n}, v);
    if (!fresh) CHECK_MESSAGE(it->second == v, w);
  }
  std::set<Value> distinct;
  for (const auto& [k, v] : byAction) distinct.insert(v);
  CHECK(distinct.size() == byAction.size());
}

TEST_CASE("wreath tables match the permutation wreath product") {
  for (int p : {2, 3}) {
    CAPTURE(p);
    auto d = wreathPP(static_cast<std::uint32_t>(p));
    const auto perms = oracle::closure(oracle::wreathGenerators(p), p * p);
    CHECK(d->codeCount(0) == perms.size());
    CHECK(d->exhausted());

    std::map<Natural, std::size_t> diagramOrders, permOrders;
    for (Code c = 0; c < d->codeCount(0); ++c) ++diagramOrders[*d->elementOrder(c, 100)];
    for (const auto& x : perms) {
      Natural k = 1;
      for (auto y = x; y != *perms.begin(); y = oracle::compose(y, x)) ++k;
      ++permOrders[k];
    }
    CHECK(diagramOrders == permOrders);
    CHECK(oracle::nilpotencyClass(oracle::wreathGenerators(p), p * p) == p);
  }
}

TEST_CASE("integers and rationals") {
  auto z = integers();
  CHECK(z->mul(1, 1) == 3);  // 1 + 1 = 2 has code 3
  CHECK(z->power(1, -2) == 4);
  CHECK(!z->elementOrder(1, 50));
  auto q = rationalsFull();
  for (Code c = 1; c < 20; ++c) {
    const Value v = q->valueOf(c);
    const Value half{v[0] % 2 == 0 ? v[0] / 2 : v[0], v[0] % 2 == 0 ? v[1] : 2 * v[1]};
    CHECK(q->mul(q->codeFor(half), q->codeFor(half)) == c);
  }
}

TEST_CASE("budgets and bad names") {
  auto d = integers();
  d->setCodeBudget(5);
  CHECK_THROWS_AS(d->valueOf(40), BudgetExceeded);
  CHECK_THROWS_AS(builtinDiagram("wreath"), InvalidArgument);
  CHECK_THROWS_AS(builtinDiagram("nope:1"), InvalidArgument);
  auto c = cyclic(4);
  CHECK_THROWS_AS(c->valueOf(4), BudgetExceeded);
}
