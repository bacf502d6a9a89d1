#include "grouplab/words.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "grouplab/error.hpp"

namespace grouplab {

namespace {

class GeneratorTable {
 public:
  GeneratorId intern(const Generator& g) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(g); it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = ids_.find(g); it != ids_.end()) return it->second;
    const auto id = static_cast<GeneratorId>(generators_.size());
    generators_.push_back(g);
    ids_.emplace(g, id);
    return id;
  }

  const Generator& get(GeneratorId id) const {
    std::shared_lock lock(mutex_);
    return generators_.at(id);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::deque<Generator> generators_;
  std::map<Generator, GeneratorId> ids_;
};

GeneratorTable& table() {
  static GeneratorTable t;
  return t;
}

}  // namespace

std::string Generator::str() const {
  std::string out = family;
  if (index.empty()) return out;
  out += '_';
  if (index.size() == 1) return out + std::to_string(index[0]);
  out += '{';
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(index[i]);
  }
  return out + '}';
}

GeneratorId intern(const Generator& g) { return table().intern(g); }

GeneratorId intern(std::string_view family, std::vector<std::uint32_t> index) {
  return table().intern(Generator{std::string(family), std::move(index)});
}

const Generator& generatorOf(GeneratorId id) { return table().get(id); }

bool generatorLess(GeneratorId a, GeneratorId b) {
  if (a == b) return false;
  return generatorOf(a) < generatorOf(b);
}

bool letterLess(Letter a, Letter b) {
  const auto ga = generatorOfLetter(a), gb = generatorOfLetter(b);
  if (ga != gb) return generatorLess(ga, gb);
  return a > b;  // positive letter first
}

Word Word::reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out), Trusted{});
}

Word Word::power(GeneratorId g, long exponent) {
  std::vector<Letter> out(static_cast<std::size_t>(exponent < 0 ? -exponent : exponent),
                          letter(g, exponent < 0 ? -1 : 1));
  return Word(std::move(out), Trusted{});
}

Word Word::prefix(std::size_t n) const {
  return Word({letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size()))},
              Trusted{});
}

Word Word::suffix(std::size_t from) const {
  return Word({letters_.begin() + static_cast<std::ptrdiff_t>(std::min(from, size())), letters_.end()},
              Trusted{});
}

Word Word::cyclicallyReduced() const {
  std::size_t lo = 0, hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word({letters_.begin() + static_cast<std::ptrdiff_t>(lo),
               letters_.begin() + static_cast<std::ptrdiff_t>(hi)},
              Trusted{});
}

std::vector<Word> Word::rotations() const {
  std::vector<Word> out;
  const auto n = letters_.size();
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<Letter> r;
    r.reserve(n);
    r.insert(r.end(), letters_.begin() + static_cast<std::ptrdiff_t>(t), letters_.end());
    r.insert(r.end(), letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(t));
    Word w(std::move(r), Trusted{});
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  }
  return out;
}

std::vector<GeneratorId> Word::support() const {
  std::vector<GeneratorId> out;
  for (Letter l : letters_) out.push_back(generatorOfLetter(l));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

long Word::exponentSum(GeneratorId g) const {
  long s = 0;
  for (Letter l : letters_)
    if (generatorOfLetter(l) == g) s += signOf(l);
  return s;
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < letters_.size()) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    const long e = static_cast<long>(j - i) * signOf(letters_[i]);
    if (!first) os << '*';
    first = false;
    os << generatorOf(generatorOfLetter(letters_[i])).str();
    if (e != 1) os << '^' << e;
    i = j;
  }
  return os.str();
}

bool Word::shortlexLess(const Word& other) const {
  if (size() != other.size()) return size() < other.size();
  for (std::size_t i = 0; i < size(); ++i) {
    if (letters_[i] == other.letters_[i]) continue;
    return letterLess(letters_[i], other.letters_[i]);
  }
  return false;
}

Word mul(const Word& w, const Word& v) {
  std::size_t k = 0;
  const auto& a = w.letters_;
  const auto& b = v.letters_;
  while (k < a.size() && k < b.size() && a[a.size() - 1 - k] == -b[k]) ++k;
  std::vector<Letter> out;
  out.reserve(a.size() + b.size() - 2 * k);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(k));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
  return Word(std::move(out), Word::Trusted{});
}

Word inv(const Word& w) {
  std::vector<Letter> out(w.letters_.rbegin(), w.letters_.rend());
  for (auto& l : out) l = -l;
  return Word(std::move(out), Word::Trusted{});
}

Word pow(const Word& w, long n) {
  Word base = n < 0 ? inv(w) : w;
  Word out;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) out = mul(out, base);
  return out;
}

Word commutator(const Word& w, const Word& v) { return mul(mul(inv(w), inv(v)), mul(w, v)); }

Word leftNormedCommutator(std::span<const Word> gs) {
  if (gs.empty()) throw InvalidArgument("leftNormedCommutator: empty argument list");
  Word acc = gs[0];
  for (std::size_t i = 1; i < gs.size(); ++i) acc = commutator(acc, gs[i]);
  return acc;
}

Word derivedCommutator(unsigned depth, std::span<const Word> gs) {
  if (depth >= 31 || gs.size() != (std::size_t{1} << depth))
    throw InvalidArgument("derivedCommutator: depth " + std::to_string(depth) + " needs " +
                          "2^depth arguments, got " + std::to_string(gs.size()));
  if (depth == 0) return gs[0];
  const auto half = gs.size() / 2;
  return commutator(derivedCommutator(depth - 1, gs.first(half)),
                    derivedCommutator(depth - 1, gs.subspan(half)));
}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  Word parseAll() {
    Word w = product();
    skipSpace();
    if (pos_ != s_.size()) fail("unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("word syntax: " + what + " at offset " + std::to_string(pos_) + " in '" +
                          std::string(s_) + "'");
  }

  void skipSpace() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool atTermStart() {
    skipSpace();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '[' || c == '(' || c == '1';
  }

  Word product() {
    Word acc;
    if (!atTermStart()) {
      skipSpace();
      if (pos_ < s_.size() && s_[pos_] != ']' && s_[pos_] != ')' && s_[pos_] != ',')
        fail("expected a term");
      return acc;
    }
    acc = term();
    for (;;) {
      skipSpace();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        acc = mul(acc, term());
      } else if (atTermStart()) {
        acc = mul(acc, term());
      } else {
        return acc;
      }
    }
  }

  long integer() {
    skipSpace();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
    return neg ? -v : v;
  }

  Word term() {
    Word a = atom();
    skipSpace();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      a = pow(a, integer());
    }
    return a;
  }

  Word atom() {
    skipSpace();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '1') {
      ++pos_;
      return {};
    }
    if (c == '(') {
      ++pos_;
      Word w = product();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      std::vector<Word> parts{product()};
      skipSpace();
      while (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        parts.push_back(product());
      }
      expect(']');
      if (parts.size() < 2) fail("commutator needs two entries");
      return leftNormedCommutator(parts);
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected generator");
    std::string family(1, c);
    ++pos_;
    std::vector<std::uint32_t> index;
    if (pos_ < s_.size() && s_[pos_] == '_') {
      ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '{') {
        ++pos_;
        index.push_back(static_cast<std::uint32_t>(natural()));
        while (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          index.push_back(static_cast<std::uint32_t>(natural()));
        }
        expect('}');
      } else {
        index.push_back(static_cast<std::uint32_t>(natural()));
      }
    }
    return Word::generator(intern(family, std::move(index)));
  }

  long natural() {
    skipSpace();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected index");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
    skipSpace();
    return v;
  }

  void expect(char c) {
    skipSpace();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parseWord(std::string_view text) { return WordParser(text).parseAll(); }

std::vector<Word> parseWordList(std::string_view text) {
  std::vector<Word> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      auto piece = text.substr(start, i - start);
      if (piece.find_first_not_of(" \t") != std::string_view::npos) out.push_back(parseWord(piece));
      start = i + 1;
    } else if (text[i] == '[' || text[i] == '(' || text[i] == '{') {
      ++depth;
    } else if (text[i] == ']' || text[i] == ')' || text[i] == '}') {
      --depth;
    }
  }
  return out;
}

std::vector<Word> wordsUpTo(std::span<const GeneratorId> alphabet, std::size_t maxLength) {
  std::vector<Letter> letters;
  for (auto g : alphabet) {
    letters.push_back(letter(g, 1));
    letters.push_back(letter(g, -1));
  }
  std::sort(letters.begin(), letters.end(), letterLess);
  std::vector<Word> out{Word{}};
  std::size_t layerStart = 0;
  for (std::size_t len = 1; len <= maxLength; ++len) {
    const std::size_t layerEnd = out.size();
    for (std::size_t i = layerStart; i < layerEnd; ++i) {
      for (Letter l : letters) {
        const Word& base = out[i];
        if (!base.empty() && base.letters().back() == -l) continue;
        std::vector<Letter> next = base.letters();
        next.push_back(l);
        out.push_back(Word::reduce(next));
      }
    }
    layerStart = layerEnd;
  }
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::uint32_t>(l);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace grouplab
