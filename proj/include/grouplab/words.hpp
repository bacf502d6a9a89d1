#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grouplab {

/// A generator symbol: a family name plus a (possibly empty) tuple of
/// natural-number indices, e.g. `a`, `x_3`, `y_{2,3}`.
struct Generator {
  std::string family;
  std::vector<std::uint32_t> index;

  auto operator<=>(const Generator&) const = default;
  bool operator==(const Generator&) const = default;

  std::string str() const;
};

/// Generators are interned into a process-wide table so that words are plain
/// integer sequences. Ids are stable for the lifetime of the process; they do
/// not carry the canonical order, use `generatorLess` for that.
using GeneratorId = std::uint32_t;

GeneratorId intern(const Generator& g);
GeneratorId intern(std::string_view family, std::vector<std::uint32_t> index = {});
const Generator& generatorOf(GeneratorId id);
bool generatorLess(GeneratorId a, GeneratorId b);

/// A letter is a generator id with a sign: +(id+1) or -(id+1).
using Letter = std::int32_t;

inline Letter letter(GeneratorId g, int sign = 1) {
  const auto v = static_cast<Letter>(g) + 1;
  return sign >= 0 ? v : -v;
}
inline GeneratorId generatorOfLetter(Letter l) { return static_cast<GeneratorId>((l > 0 ? l : -l) - 1); }
inline int signOf(Letter l) { return l > 0 ? 1 : -1; }

/// Canonical order on letters: generator order first, positive before inverse.
bool letterLess(Letter a, Letter b);

/// A freely reduced word. The empty word is the identity of the free group.
class Word {
 public:
  Word() = default;

  /// Freely reduces an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> letters);
  static Word reduce(std::initializer_list<Letter> letters) {
    return reduce(std::span<const Letter>(letters.begin(), letters.size()));
  }
  static Word generator(GeneratorId g, int sign = 1) { return Word({letter(g, sign)}, Trusted{}); }
  static Word power(GeneratorId g, long exponent);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word prefix(std::size_t n) const;
  Word suffix(std::size_t from) const;

  /// Cyclically reduced conjugate (strips matching first/last letters).
  Word cyclicallyReduced() const;
  /// All distinct cyclic rotations of this word (assumed cyclically reduced).
  std::vector<Word> rotations() const;

  std::vector<GeneratorId> support() const;
  long exponentSum(GeneratorId g) const;

  std::string str() const;

  bool operator==(const Word&) const = default;
  /// Shortlex with the canonical letter order.
  bool shortlexLess(const Word& other) const;

 private:
  struct Trusted {};
  Word(std::vector<Letter> letters, Trusted) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;

  friend Word mul(const Word&, const Word&);
  friend Word inv(const Word&);
};

Word mul(const Word& w, const Word& v);
Word inv(const Word& w);
Word pow(const Word& w, long n);

/// w^-1 v^-1 w v
Word commutator(const Word& w, const Word& v);
/// [[...[g0,g1],g2]...],gn]; requires a nonempty list.
Word leftNormedCommutator(std::span<const Word> gs);
/// Balanced depth-n commutator over 2^n arguments:
/// depth 0 is the argument itself, depth n is [left half, right half].
Word derivedCommutator(unsigned depth, std::span<const Word> gs);

/// Parses `a`, `a^-1`, `x_3`, `y_{2,3}^2`, products joined by `*` or
/// juxtaposition separated by spaces, `[u,v]` commutators and `1` / `e` for
/// the identity.
Word parseWord(std::string_view text);
/// Splits a comma-separated list of words, respecting brackets.
std::vector<Word> parseWordList(std::string_view text);

/// All reduced words of length <= maxLength over the given generators, in
/// shortlex order.
std::vector<Word> wordsUpTo(std::span<const GeneratorId> alphabet, std::size_t maxLength);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace grouplab
