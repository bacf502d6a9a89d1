#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grouplab/cesets.hpp"
#include "grouplab/presentations.hpp"

namespace grouplab {

/// Canonical encoding of a group element inside one model.
using Value = std::vector<std::int64_t>;

struct ValueHash {
  std::size_t operator()(const Value& v) const noexcept;
};

/// Uniform element-level view of a group used by checkers and orders.
/// Exact models decide equality; presentation models only semi-decide it.
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual std::string describe() const = 0;
  virtual bool exact() const = 0;
  virtual Value identity() const = 0;
  virtual Value multiply(const Value& a, const Value& b) = 0;
  virtual Value inverse(const Value& a) = 0;
  /// Sound: true only if a equals the identity (exact models decide it).
  virtual bool provablyIdentity(const Value& a) = 0;
  /// Sound: true only if a differs from the identity.
  virtual bool provablyNonIdentity(const Value& a) = 0;
  /// The first `bound` elements in the model's enumeration order.
  virtual std::vector<Value> sample(std::size_t bound) = 0;
  /// Generating elements (conjugators for normal closures).
  virtual std::vector<Value> generators() = 0;
  virtual std::string show(const Value& a) const;

  Value power(const Value& a, long n);
};

/// A finite group as a full multiplication table; element 0 is the identity.
class FiniteGroupTable {
 public:
  /// Checks the group axioms exhaustively; throws InvalidArgument otherwise.
  FiniteGroupTable(std::size_t order, std::vector<std::uint32_t> table, std::string name = "table");

  std::size_t order() const { return order_; }
  const std::string& name() const { return name_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a * order_ + b]; }
  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
  std::uint32_t elementOrder(std::uint32_t a) const;
  bool isAbelian() const;

  using Subset = std::vector<bool>;
  Subset closure(const std::vector<std::uint32_t>& gens) const;
  /// Subgroup generated by all [a,b] with a in A, b in B.
  Subset commutatorSubgroup(const Subset& a, const Subset& b) const;

 private:
  std::size_t order_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::string name_;
};

FiniteGroupTable cyclicTable(std::size_t n);
/// Regular wreath product Z_p wr Z_p. Element (f, t) has index
/// sum_i f(i) p^i + p^p t, and (f,t)(g,u) = (f + shift_t g, t + u).
FiniteGroupTable wreathTable(std::uint32_t p);
/// Product and inverse of Z_p wr Z_p elements in the wreathTable indexing,
/// without building a table (usable for any prime p).
std::int64_t wreathMul(std::uint32_t p, std::int64_t x, std::int64_t y);
std::int64_t wreathInverse(std::uint32_t p, std::int64_t x);
/// p^(p+1)
std::int64_t wreathOrder(std::uint32_t p);
FiniteGroupTable directProduct(const FiniteGroupTable& a, const FiniteGroupTable& b);

/// Length of the lower central series; nullopt when it stalls above 1.
std::optional<std::size_t> nilpotencyClass(const FiniteGroupTable& t);
/// Length of the derived series; nullopt when it stalls above 1.
std::optional<std::size_t> solvabilityDegree(const FiniteGroupTable& t);

/// n-th prime, 1-indexed: prime(1) = 2.
std::uint32_t prime(std::size_t n);

/// Words over a presentation, with equality semi-decided at a fixed stage.
class PresentationModel : public GroupModel {
 public:
  /// Samples words of length <= sampleLength over the first alphabetLimit
  /// generators visible at the stage (all of them when alphabetLimit is 0).
  PresentationModel(RecursivePresentation p, Natural stage, std::size_t sampleLength = 3,
                    std::size_t alphabetLimit = 0);

  std::string describe() const override;
  bool exact() const override { return false; }
  Value identity() const override { return {}; }
  Value multiply(const Value& a, const Value& b) override;
  Value inverse(const Value& a) override;
  bool provablyIdentity(const Value& a) override;
  bool provablyNonIdentity(const Value&) override { return false; }
  std::vector<Value> sample(std::size_t bound) override;
  std::vector<Value> generators() override;
  std::string show(const Value& a) const override;

  const RecursivePresentation& presentation() const { return p_; }
  Natural stage() const { return stage_; }
  std::vector<GeneratorId> alphabet() const;
  static Value encode(const Word& w);
  static Word decode(const Value& v);

 private:
  RecursivePresentation p_;
  Natural stage_;
  std::size_t sampleLength_;
  std::size_t alphabetLimit_;
};

}  // namespace grouplab
