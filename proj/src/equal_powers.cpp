#include "grouplab/equal_powers.hpp"

#include "grouplab/error.hpp"

namespace grouplab {

EqualPowersNormalForm::EqualPowersNormalForm(unsigned n) : n_(n), a_(intern("a")), b_(intern("b")) {
  if (n < 1) throw InvalidArgument("equal powers: n must be >= 1");
}

Value EqualPowersNormalForm::multiply(const Value& x, const Value& y) const {
  Value out = x;
  out[0] += y[0];
  const auto n = static_cast<std::int64_t>(n_);
  for (std::size_t i = 1; i < y.size(); ++i) {
    std::int64_t s = y[i];
    while (s != 0) {
      if (out.size() > 1 && (out.back() > 0) == (s > 0)) {
        // same factor: add exponents, carrying full powers into z
        const std::int64_t sign = s > 0 ? 1 : -1;
        std::int64_t e = out.back() * sign + s * sign;
        out.pop_back();
        if (e >= n) {
          e -= n;
          out[0] += 1;
        }
        s = e * sign;
        if (e == 0) break;
        continue;
      }
      out.push_back(s);
      break;
    }
  }
  return out;
}

Value EqualPowersNormalForm::inverse(const Value& x) const {
  const auto n = static_cast<std::int64_t>(n_);
  const auto m = static_cast<std::int64_t>(x.size()) - 1;
  Value out{-x[0] - m};
  for (std::size_t i = x.size() - 1; i >= 1; --i) {
    const std::int64_t s = x[i];
    out.push_back(s > 0 ? n - s : -(n + s));
  }
  return out;
}

Value EqualPowersNormalForm::fromWord(const Word& w) const {
  Value out = identity();
  for (Letter l : w.letters()) {
    const auto g = generatorOfLetter(l);
    if (g != a_ && g != b_) throw InvalidArgument("equal powers: word uses a generator other than a, b");
    const std::int64_t unit = g == a_ ? 1 : -1;
    if (n_ == 1) {
      out[0] += signOf(l);
      continue;
    }
    if (l > 0) {
      out = multiply(out, Value{0, unit});
    } else {
      // x^-1 = z^-1 x^(n-1)
      out = multiply(out, Value{-1, unit * static_cast<std::int64_t>(n_ - 1)});
    }
  }
  return out;
}

Word EqualPowersNormalForm::toWord(const Value& x) const {
  Word w = Word::power(a_, static_cast<long>(x[0]) * static_cast<long>(n_));
  for (std::size_t i = 1; i < x.size(); ++i)
    w = mul(w, x[i] > 0 ? Word::power(a_, static_cast<long>(x[i])) : Word::power(b_, static_cast<long>(-x[i])));
  return w;
}

std::string EqualPowersNormalForm::show(const Value& x) const { return toWord(x).str(); }

}  // namespace grouplab
