#include "doctest.h"
#include "grouplab/error.hpp"
#include "grouplab/words.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace grouplab;

TEST_CASE("free reduction cancels adjacent inverse letters") {
  const auto a = intern("a");
  CHECK(Word::reduce({letter(a), letter(a, -1)}).empty());
  CHECK(mul(parseWord("a*b"), parseWord("b^-1*a^-1")).empty());
  CHECK(parseWord("a b a^-1").str() == "a*b*a^-1");
}

TEST_CASE("reduction agrees with a stack reducer on all short letter strings") {
  // every string of length <= 6 over aAbB, reduced or not
  std::vector<std::string> strings{""};
  for (int len = 1; len <= 6; ++len) {
    std::vector<std::string> next;
    for (const auto& s : strings)
      if (static_cast<int>(s.size()) == len - 1)
        for (char c : std::string("aAbB")) next.push_back(s + c);
    strings.insert(strings.end(), next.begin(), next.end());
  }
  for (const auto& s : strings) CHECK(toString(toWord(s)) == oracle::freeReduce(s));
}

TEST_CASE("group laws in the free group") {
  const auto words = oracle::reducedWords(3);
  for (const auto& x : words)
    for (const auto& y : words) {
      const Word w = toWord(x), v = toWord(y);
      CHECK(mul(w, inv(w)).empty());
      CHECK(inv(mul(w, v)) == mul(inv(v), inv(w)));
    }
}

TEST_CASE("parser accepts indexed generators, powers and commutators") {
  CHECK(parseWord("y_{2,3}^2").str() == "y_{2,3}^2");
  CHECK(parseWord("x_3").str() == "x_3");
  CHECK(parseWord("[a,b]") == commutator(parseWord("a"), parseWord("b")));
  CHECK(parseWord("1").empty());
  CHECK(parseWordList("a, [a,b], b^2").size() == 3);
  CHECK_THROWS_AS(parseWord("a^"), InvalidArgument);
  CHECK_THROWS_AS(parseWord("(a"), InvalidArgument);
}

TEST_CASE("commutator conventions") {
  CHECK(commutator(parseWord("a"), parseWord("b")).str() == "a^-1*b^-1*a*b");
  const std::vector<Word> three{parseWord("a"), parseWord("b"), parseWord("a")};
  CHECK(leftNormedCommutator(three) == commutator(commutator(three[0], three[1]), three[2]));
  const std::vector<Word> four{parseWord("a"), parseWord("b"), parseWord("b"), parseWord("a")};
  CHECK(derivedCommutator(2, four) == commutator(commutator(four[0], four[1]), commutator(four[2], four[3])));
  CHECK_THROWS_AS(derivedCommutator(2, std::span<const Word>(four).first(3)), InvalidArgument);
}

TEST_CASE("generator order is by family, then index tuple") {
  CHECK(generatorLess(intern("a"), intern("b")));
  CHECK(generatorLess(intern("x", {2}), intern("x", {10})));
  CHECK(generatorLess(intern("x", {9}), intern("y", {0, 0})));
}

TEST_CASE("wordsUpTo enumerates reduced words in shortlex order") {
  const std::vector<GeneratorId> ab{intern("a"), intern("b")};
  const auto ws = wordsUpTo(ab, 4);
  CHECK(ws.size() == oracle::reducedWords(4).size());
  for (std::size_t i = 1; i < ws.size(); ++i) CHECK(ws[i - 1].shortlexLess(ws[i]));
}
