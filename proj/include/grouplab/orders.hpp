#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grouplab/groups.hpp"
#include "grouplab/words.hpp"
#include "json.hpp"

namespace grouplab {

/// A non-commuting monomial X_{g_1} ... X_{g_k}.
using Monomial = std::vector<GeneratorId>;

/// Term order: total degree first, then lexicographic in the variables
/// (X_a < X_b, following generatorLess).
struct TermLess {
  bool operator()(const Monomial& x, const Monomial& y) const;
};

/// Truncated image of a word under a -> 1 + X_a, a^-1 -> 1 - X_a + X_a^2 - ...
struct MagnusSeries {
  std::size_t degreeBound = 0;
  std::map<Monomial, std::int64_t, TermLess> terms;  // no zero coefficients

  std::int64_t coefficient(const Monomial& m) const;
  std::string str() const;
};

enum class Comparison { less, equal, greater };
std::string to_string(Comparison c);

/// Throws InvalidArgument when degree == 0.
MagnusSeries magnusExpand(const Word& w, std::size_t degree);
/// Compares coefficients on the first term (in term order) where the two
/// expansions differ. Certified when degree >= |w| + |v|.
Comparison magnusCompare(const Word& w, const Word& v, std::size_t degree);
bool positiveConeMember(const Word& w, std::size_t degree);

/// One factor u g_i^e u^-1 of a closure element (u empty for plain products).
struct ClosureFactor {
  Value conjugator;
  std::size_t generator = 0;
};

struct ClosureResult {
  bool containsIdentity = false;
  std::vector<Value> elements;
  std::size_t depth = 0;
  /// When containsIdentity: factors whose product is the identity.
  std::vector<ClosureFactor> identityProduct;
};

/// Products of 1..depth factors from gens.
ClosureResult sgrClosure(GroupModel& g, const std::vector<Value>& gens, std::size_t depth);
/// Products of conjugates u g u^-1, u a word in the group's generators. A
/// conjugate costs 1 + |u| and a product costs the sum over its factors;
/// the closure keeps everything of cost <= depth.
ClosureResult normalSgrClosure(GroupModel& g, const std::vector<Value>& gens, std::size_t depth);

enum class OrderMode { left, bi };
OrderMode parseOrderMode(const std::string& s);

struct OlfResult {
  bool refuted = false;
  std::size_t depth = 0;
  /// Refuted: one identity product per sign vector, in sign-vector order.
  std::vector<std::vector<int>> signs;
  std::vector<std::vector<ClosureFactor>> products;
  /// Survives: a sign vector whose closure avoided the identity.
  std::vector<int> survivingSigns;

  nlohmann::json toJson(const GroupModel& g) const;
};

/// Refuted iff for every sign vector the (normal, in bi mode) closure of
/// g_i^(e_i) at this depth contains the identity. Throws InvalidArgument on
/// an empty tuple.
OlfResult olfRefute(GroupModel& g, const std::vector<Value>& elements, std::size_t depth, OrderMode mode);

/// Tries tuples of up to maxTuple candidates (singletons first, then pairs
/// in index order) and returns the first one olfRefute refutes.
std::optional<std::vector<Value>> findOlfObstruction(GroupModel& g, const std::vector<Value>& candidates,
                                                     std::size_t maxTuple, std::size_t depth, OrderMode mode);

}  // namespace grouplab
