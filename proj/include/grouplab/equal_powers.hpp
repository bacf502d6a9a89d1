#pragma once

#include "grouplab/groups.hpp"
#include "grouplab/words.hpp"

namespace grouplab {

/// Normal forms in <a, b | a^n = b^n>, the amalgam <a> *_{a^n = b^n} <b>.
///
/// z = a^n = b^n is central, so every element is uniquely z^k s_1 ... s_m
/// with syllables alternating between powers a^e and b^e, 1 <= e <= n-1.
/// Encoding: [k, s_1, ..., s_m] with a^e stored as +e and b^e as -e.
class EqualPowersNormalForm {
 public:
  explicit EqualPowersNormalForm(unsigned n);

  unsigned n() const { return n_; }
  GeneratorId a() const { return a_; }
  GeneratorId b() const { return b_; }

  Value identity() const { return {0}; }
  Value multiply(const Value& x, const Value& y) const;
  Value inverse(const Value& x) const;
  /// Words over a, b only; other generators throw InvalidArgument.
  Value fromWord(const Word& w) const;
  Word toWord(const Value& x) const;
  bool isIdentity(const Word& w) const { return fromWord(w) == identity(); }
  std::string show(const Value& x) const;

 private:
  unsigned n_;
  GeneratorId a_, b_;
};

}  // namespace grouplab
