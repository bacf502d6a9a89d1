#include "doctest.h"
#include "grouplab/diagrams.hpp"
#include "grouplab/error.hpp"
#include "grouplab/orders.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace grouplab;

namespace {

std::string monomialString(const Monomial& m) {
  std::string s;
  for (auto g : m) s += generatorOf(g).family;
  return s;
}

// Replays an identity product from an OLF refutation.
bool productIsIdentity(GroupModel& g, const std::vector<Value>& elems, const std::vector<int>& signs,
                       const std::vector<ClosureFactor>& factors) {
  Value x = g.identity();
  for (const auto& f : factors) {
    Value e = elems.at(f.generator);
    if (signs.at(f.generator) < 0) e = g.inverse(e);
    const Value u = f.conjugator.empty() ? g.identity() : f.conjugator;
    x = g.multiply(x, g.multiply(g.multiply(u, e), g.inverse(u)));
  }
  return !factors.empty() && x == g.identity();
}

}  // namespace

TEST_CASE("Magnus expansion matches the naive polynomial product") {
  for (const auto& w : oracle::reducedWords(4)) {
    const auto fast = magnusExpand(toWord(w), 5);
    const auto slow = oracle::magnus(w, 5);
    std::map<std::string, long long> got;
    for (const auto& [m, c] : fast.terms) got[monomialString(m)] = c;
    CHECK_MESSAGE(got == slow, w);
  }
  CHECK_THROWS_AS(magnusExpand(parseWord("a"), 0), InvalidArgument);
}

TEST_CASE("Magnus comparison matches the naive comparison") {
  const auto words = oracle::reducedWords(3);
  for (const auto& w : words)
    for (const auto& v : words) {
      const int expected = oracle::magnusCompare(w, v, 6);
      const auto got = magnusCompare(toWord(w), toWord(v), 6);
      CHECK_MESSAGE(got == (expected > 0 ? Comparison::greater : expected < 0 ? Comparison::less : Comparison::equal),
                    w << " vs " << v);
    }
}

TEST_CASE("positive cone axioms on short words") {
  const auto words = oracle::reducedWords(3);
  const std::size_t D = 8;
  for (const auto& w : words) {
    const Word x = toWord(w);
    const bool pos = positiveConeMember(x, D), neg = positiveConeMember(inv(x), D);
    // totality and antisymmetry
    CHECK((pos ? 1 : 0) + (neg ? 1 : 0) + (x.empty() ? 1 : 0) == 1);
    for (const auto& v : words) {
      const Word y = toWord(v);
      if (pos && positiveConeMember(y, D)) CHECK(positiveConeMember(mul(x, y), D));
      // normality
      if (pos && v.size() <= 2) CHECK(positiveConeMember(mul(mul(y, x), inv(y)), D));
    }
  }
}

TEST_CASE("comparison is equality exactly on equal words") {
  for (const auto& w : oracle::reducedWords(3))
    for (const auto& v : oracle::reducedWords(3))
      CHECK((magnusCompare(toWord(w), toWord(v), 6) == Comparison::equal) == (w == v));
}

TEST_CASE("Z3 is not left-orderable and the refutation replays") {
  ValueModel g(cyclic(3));
  const std::vector<Value> tuple{g.generators().at(0)};
  CHECK(!olfRefute(g, tuple, 2, OrderMode::left).refuted);
  const auto r = olfRefute(g, tuple, 3, OrderMode::left);
  REQUIRE(r.refuted);
  REQUIRE(r.signs.size() == 2);
  for (std::size_t i = 0; i < r.signs.size(); ++i) CHECK(productIsIdentity(g, tuple, r.signs[i], r.products[i]));
  CHECK(r.toJson(g)["status"] == "refuted");
}

TEST_CASE("refutation is monotone in the depth") {
  ValueModel g(cyclic(5));
  const std::vector<Value> tuple{g.generators().at(0)};
  bool seen = false;
  for (std::size_t d = 1; d <= 8; ++d) {
    const bool r = olfRefute(g, tuple, d, OrderMode::left).refuted;
    if (seen) CHECK(r);
    seen = seen || r;
  }
  CHECK(seen);
}

TEST_CASE("the integers and F2 survive") {
  ValueModel z(integers());
  CHECK(!olfRefute(z, {z.generators().at(0)}, 8, OrderMode::bi).refuted);
  ValueModel f(free2());
  const auto gens = f.generators();
  const auto r = olfRefute(f, {gens[0], gens[1]}, 6, OrderMode::left);
  CHECK(!r.refuted);
  CHECK(r.survivingSigns.size() == 2);
  CHECK_THROWS_AS(olfRefute(f, {}, 3, OrderMode::left), InvalidArgument);
}

TEST_CASE("Klein bottle: bi-order obstruction found by search") {
  ValueModel g(oneRelatorEqualPowers(2));
  auto cands = g.sample(30);
  const auto t = findOlfObstruction(g, cands, 2, 6, OrderMode::bi);
  REQUIRE(t);
  const auto r = olfRefute(g, *t, 6, OrderMode::bi);
  CHECK(r.refuted);
  for (std::size_t i = 0; i < r.signs.size(); ++i) CHECK(productIsIdentity(g, *t, r.signs[i], r.products[i]));
}

TEST_CASE("closures") {
  ValueModel g(cyclic(4));
  const auto gen = g.generators().at(0);
  const auto c = sgrClosure(g, {gen}, 4);
  CHECK(c.containsIdentity);
  CHECK(c.elements.size() == 4);
  const auto d = sgrClosure(g, {gen}, 3);
  CHECK(!d.containsIdentity);
  CHECK(parseOrderMode("bi") == OrderMode::bi);
  CHECK_THROWS_AS(parseOrderMode("right"), InvalidArgument);
}
