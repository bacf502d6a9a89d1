#pragma once

#include <memory>

#include "grouplab/groups.hpp"
#include "grouplab/words.hpp"

namespace grouplab {

/// The free solvable group F2 / F2^(n) on a, b.
///
/// Canonical forms follow the flow description of free solvable groups: two
/// words agree modulo [N, N] exactly when they agree modulo N and trace the
/// same net flow through the Cayley graph of F2 / N. Applied level by level
/// with N = F2^(k-1) this decides equality. Lower-level vertices are interned
/// to integer ids, so a canonical Value is only meaningful within the
/// FreeSolvable instance (and its copies) that produced it.
class FreeSolvable {
 public:
  explicit FreeSolvable(unsigned n);

  unsigned derivedLength() const { return n_; }
  GeneratorId a() const { return a_; }
  GeneratorId b() const { return b_; }

  /// Canonical form of w; words over a, b only.
  Value canonical(const Word& w) const;
  bool isIdentity(const Word& w) const { return canonical(w) == identity(); }
  bool equal(const Word& w, const Word& v) const { return isIdentity(mul(w, inv(v))); }
  Value identity() const;

 private:
  struct Tables;
  std::vector<std::uint64_t> prefixIds(unsigned level, const Word& w) const;

  unsigned n_;
  GeneratorId a_, b_;
  std::shared_ptr<Tables> tables_;
};

}  // namespace grouplab
