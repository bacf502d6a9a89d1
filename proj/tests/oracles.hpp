#pragma once

// Independent reference implementations. None of these call into the
// library's algorithms; they exist so tests compare two unrelated paths.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Words as strings over a, A (= a^-1), b, B.
inline std::string freeReduce(const std::string& w) {
  std::string out;
  for (char c : w) {
    const char inv = static_cast<char>(std::islower(static_cast<unsigned char>(c)) ? std::toupper(c) : std::tolower(c));
    if (!out.empty() && out.back() == inv) out.pop_back();
    else out.push_back(c);
  }
  return out;
}

inline std::string inverse(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (auto& c : out) c = static_cast<char>(std::islower(static_cast<unsigned char>(c)) ? std::toupper(c) : std::tolower(c));
  return out;
}

// All reduced words of length <= n over a, A, b, B.
inline std::vector<std::string> reducedWords(std::size_t n) {
  std::vector<std::string> all{""}, layer{""};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : std::string("aAbB")) {
        std::string v = w + c;
        if (freeReduce(v).size() == v.size()) next.push_back(v);
      }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

// <a, b | a^2 = b^2> is the Klein bottle group; it acts faithfully on the
// plane by the glide reflections a(u,v) = (u+1, -v), b(u,v) = (u+1, 1-v).
// An element (u,v) -> (u+m, s v + n) is stored as {m, s, n}.
struct Affine {
  long m = 0, s = 1, n = 0;
  bool identity() const { return m == 0 && s == 1 && n == 0; }
  Affine then(const Affine& g) const {  // this o g
    return {m + g.m, s * g.s, s * g.n + n};
  }
  Affine inv() const { return {-m, s, -s * n}; }
};

inline Affine klein(const std::string& w) {
  const Affine a{1, -1, 0}, b{1, -1, 1};
  Affine x;
  for (char c : w) {
    Affine g = c == 'a' ? a : c == 'A' ? a.inv() : c == 'b' ? b : b.inv();
    x = x.then(g);
  }
  return x;
}

// Permutation groups given by generators, closed by brute force.
using Perm = std::vector<int>;

inline Perm compose(const Perm& x, const Perm& y) {  // x then y
  Perm r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
  return r;
}

inline Perm invert(const Perm& x) {
  Perm r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[x[i]] = static_cast<int>(i);
  return r;
}

inline std::set<Perm> closure(const std::vector<Perm>& gens, std::size_t points) {
  Perm id(points);
  for (std::size_t i = 0; i < points; ++i) id[i] = static_cast<int>(i);
  std::set<Perm> seen{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Perm y = compose(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

// Z_p wr Z_p acting on (i, x) in Z_p x Z_p, point i*p + x: the base
// generator adds 1 to x on the fibre i = 0, the top generator shifts i.
inline std::vector<Perm> wreathGenerators(int p) {
  Perm base(p * p), top(p * p);
  for (int i = 0; i < p; ++i)
    for (int x = 0; x < p; ++x) {
      base[i * p + x] = i * p + (i == 0 ? (x + 1) % p : x);
      top[i * p + x] = ((i + 1) % p) * p + x;
    }
  return {base, top};
}

inline Perm commutator(const Perm& x, const Perm& y) {
  return compose(compose(compose(invert(x), invert(y)), x), y);
}

// Length of the lower central series: least c with gamma_{c+1} trivial.
inline int nilpotencyClass(const std::vector<Perm>& gens, std::size_t points) {
  const auto g = closure(gens, points);
  std::set<Perm> gamma = g;
  for (int c = 0; c < 64; ++c) {
    if (gamma.size() == 1) return c;
    std::vector<Perm> comms;
    for (const auto& x : gamma)
      for (const auto& y : g) comms.push_back(commutator(x, y));
    auto next = closure(comms, points);
    if (next.size() == gamma.size()) return -1;
    gamma = std::move(next);
  }
  return -1;
}

// Naive truncated Magnus expansion: monomials are strings over a, b.
using Series = std::map<std::string, long long>;

inline Series magnus(const std::string& w, std::size_t degree) {
  Series acc{{"", 1}};
  for (char c : w) {
    const char var = static_cast<char>(std::tolower(c));
    Series factor{{"", 1}};
    if (std::islower(static_cast<unsigned char>(c))) factor[std::string(1, var)] = 1;
    else
      for (std::size_t k = 1; k <= degree; ++k) factor[std::string(k, var)] = k % 2 ? -1 : 1;
    Series next;
    for (const auto& [m1, c1] : acc)
      for (const auto& [m2, c2] : factor)
        if (m1.size() + m2.size() <= degree) next[m1 + m2] += c1 * c2;
    acc.clear();
    for (const auto& [m, c] : next)
      if (c) acc[m] = c;
  }
  return acc;
}

// Sign of the first differing term, terms ordered by degree then lexicographically.
inline int magnusCompare(const std::string& w, const std::string& v, std::size_t degree) {
  const auto x = magnus(w, degree), y = magnus(v, degree);
  std::set<std::string> keys;
  for (const auto& [m, c] : x) keys.insert(m);
  for (const auto& [m, c] : y) keys.insert(m);
  std::vector<std::string> order(keys.begin(), keys.end());
  std::sort(order.begin(), order.end(), [](const std::string& p, const std::string& q) {
    return p.size() != q.size() ? p.size() < q.size() : p < q;
  });
  for (const auto& m : order) {
    const long long cx = x.count(m) ? x.at(m) : 0, cy = y.count(m) ? y.at(m) : 0;
    if (cx != cy) return cx > cy ? 1 : -1;
  }
  return 0;
}

}  // namespace oracle
