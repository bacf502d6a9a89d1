#pragma once

#include <string>

#include "grouplab/words.hpp"

// "aAbB" strings <-> library words over a, b.
inline grouplab::Word toWord(const std::string& s) {
  const auto a = grouplab::intern("a"), b = grouplab::intern("b");
  std::vector<grouplab::Letter> ls;
  for (char c : s) {
    const auto g = (c == 'a' || c == 'A') ? a : b;
    ls.push_back(grouplab::letter(g, (c == 'a' || c == 'b') ? 1 : -1));
  }
  return grouplab::Word::reduce(ls);
}

inline std::string toString(const grouplab::Word& w) {
  std::string s;
  for (auto l : w.letters()) {
    const bool isA = grouplab::generatorOf(grouplab::generatorOfLetter(l)).family == "a";
    s.push_back(l > 0 ? (isA ? 'a' : 'b') : (isA ? 'A' : 'B'));
  }
  return s;
}
