#include <set>

#include "doctest.h"
#include "grouplab/error.hpp"
#include "grouplab/presentations.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace grouplab;

namespace {

RecursivePresentation klein() { return RecursivePresentation::parse("klein", "a,b", "a^2*b^-2"); }

}  // namespace

TEST_CASE("stage lists are prefix monotone") {
  const auto p = RecursivePresentation::incremental("grow", [](Natural s, PresentationStage& st) {
    st.generators.push_back(intern("x", {static_cast<std::uint32_t>(s)}));
    if (s % 2 == 0) st.relators.push_back(Word::power(intern("x", {static_cast<std::uint32_t>(s)}), 2));
  });
  for (Natural s = 1; s < 12; ++s) {
    const auto& a = p.at(s - 1);
    const auto& b = p.at(s);
    REQUIRE(a.generators.size() <= b.generators.size());
    REQUIRE(a.relators.size() <= b.relators.size());
    CHECK(std::equal(a.generators.begin(), a.generators.end(), b.generators.begin()));
    CHECK(std::equal(a.relators.begin(), a.relators.end(), b.relators.begin()));
  }
}

TEST_CASE("search budgets grow with the stage") {
  for (Natural s = 1; s < 300; ++s) {
    const auto a = SearchBudget::forStage(s - 1), b = SearchBudget::forStage(s);
    CHECK(a.relators <= b.relators);
    CHECK(a.wordLength <= b.wordLength);
    CHECK(a.moves <= b.moves);
    CHECK(b.lengthCap == b.wordLength + 4);
  }
  CHECK(SearchBudget::forStage(63).wordLength >= 8);
}

TEST_CASE("identity approximations are sound against the Klein bottle action") {
  const auto p = klein();
  const auto approx = identityWords(p, 63, 6);
  REQUIRE(approx.words.size() == approx.certificates.size());
  CHECK(!approx.words.empty());
  const auto rels = p.oracle().visibleRelators(63);
  for (std::size_t i = 0; i < approx.words.size(); ++i) {
    CHECK(oracle::klein(toString(approx.words[i])).identity());
    CHECK(approx.certificates[i].verifies(approx.words[i], rels));
  }
}

TEST_CASE("identity approximations are monotone in the stage") {
  const auto p = klein();
  std::set<std::string> prev;
  for (Natural s : {3, 7, 15, 31}) {
    std::set<std::string> cur;
    for (const auto& w : identityWords(p, s, 4).words) cur.insert(toString(w));
    for (const auto& w : prev) CHECK(cur.count(w) == 1);
    prev = std::move(cur);
  }
}

TEST_CASE("short identities are found and non-identities are not") {
  const auto p = klein();
  for (const auto& w : oracle::reducedWords(4)) {
    const bool trivial = oracle::klein(w).identity();
    const bool found = p.oracle().contains(toWord(w), 63);
    // all Klein identities of length <= 4 are reachable with the stage-63 moves
    CHECK_MESSAGE(found == trivial, w);
  }
  CHECK(equalAtStage(p, parseWord("a^2"), parseWord("b^2"), 15));
  CHECK(!equalAtStage(p, parseWord("a"), parseWord("b"), 63));
}

TEST_CASE("relators become visible only once their index is below the stage") {
  const auto p = RecursivePresentation::fromJson(
      {{"generators", {"a"}}, {"relators", {"a^5", nlohmann::json{{"stage", 4}, {"word", "a^3"}}}}});
  CHECK(!p.oracle().contains(parseWord("a^2"), 1));
  CHECK(p.relatorsAt(4).size() == 2);
}

TEST_CASE("certificates multiply out") {
  const std::vector<Word> rels{parseWord("a^2*b^-2")};
  IdentityCertificate c{{{parseWord("b"), 0, 1}, {Word{}, 0, -1}}};
  const Word expected = mul(mul(parseWord("b"), mul(rels[0], parseWord("b^-1"))), inv(rels[0]));
  CHECK(c.product(rels) == expected);
  CHECK(c.verifies(expected, rels));
  CHECK(!c.verifies(parseWord("a"), rels));
}

TEST_CASE("free products rename colliding generators") {
  const auto f = freeProduct({klein(), klein()});
  const auto& st = f.at(5);
  CHECK(st.generators.size() == 4);
  CHECK(std::set<GeneratorId>(st.generators.begin(), st.generators.end()).size() == 4);
  CHECK(st.relators.size() == 2);
}

TEST_CASE("JSON snapshots round trip") {
  const auto p = klein();
  const auto j = p.toJson(10);
  const auto q = RecursivePresentation::fromJson(j);
  CHECK(q.toJson(10)["relators"] == j["relators"]);
  CHECK_THROWS_AS(RecursivePresentation::parse("bad", "a", "a^"), InvalidArgument);
}
