#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grouplab/groups.hpp"

namespace grouplab {

/// A computable group given by an atomic diagram built in stages.
///
/// Codes are assigned to element values ("decode" is valueOf) in a fixed
/// sweep, so the codes present at any stage form an initial segment and code
/// 0 is the identity. The stage-s diagram is the set of triples (a,b,c) with
/// a, b, c all coded by stage s; since a code never changes its value, the
/// diagram only grows and a defined product never changes.
///
/// Instances own a mutable stage cache guarded by an internal mutex.
class AtomicDiagram {
 public:
  using Code = std::uint64_t;
  struct Triple {
    Code a, b, c;
    bool operator==(const Triple&) const = default;
  };

  explicit AtomicDiagram(std::string name) : name_(std::move(name)) {}
  virtual ~AtomicDiagram() = default;
  AtomicDiagram(const AtomicDiagram&) = delete;
  AtomicDiagram& operator=(const AtomicDiagram&) = delete;

  const std::string& name() const { return name_; }

  /// Number of codes present at stage s.
  std::size_t codeCount(Natural s);
  /// First stage at which code c is present.
  Natural stageOfCode(Code c);
  /// The decode map [c].
  Value valueOf(Code c);
  /// Code of v if v has already been coded (no stage is run).
  std::optional<Code> codeOfValue(const Value& v);
  /// Runs stages until v is coded. Throws BudgetExceeded.
  Code codeFor(const Value& v);

  /// The c with (a,b,c) in the diagram, running stages as needed.
  Code mul(Code a, Code b);
  Code inverse(Code a);
  Code power(Code a, long n);
  /// c if (a,b,c) is already in the stage-s diagram. By default the stage-s
  /// diagram is the limit product restricted to codes present at stage s.
  virtual std::optional<Code> productAt(Code a, Code b, Natural s);
  /// Triples of the stage-s diagram with a, b < below.
  std::vector<Triple> triplesAt(Natural s, Code below);
  /// Least n <= bound with a^n = identity.
  std::optional<Natural> elementOrder(Code a, Natural bound);

  Natural stagesBuilt();
  void setStageBudget(Natural stages) { stageBudget_ = stages; }
  void setCodeBudget(std::size_t codes) { codeBudget_ = codes; }

  virtual Value mulValues(const Value& a, const Value& b) const = 0;
  virtual Value inverseValue(const Value& a) const = 0;
  virtual std::string showValue(const Value& v) const;
  /// Elements used as conjugators in normal closures.
  virtual std::vector<Value> generatorValues();
  /// True once no later stage can add codes (finite groups).
  virtual bool exhausted() { return false; }

 protected:
  /// Builds stage s (s = 0 first) through assign().
  virtual void step(Natural s) = 0;
  /// Gives v the next free code unless it already has one.
  Code assign(const Value& v);
  bool isCoded(const Value& v) const { return codes_.count(v) != 0; }
  std::size_t assignedSoFar() const { return values_.size(); }
  const Value& valueAtCode(Code c) const { return values_[c]; }
  /// Stage currently being built (valid inside step()).
  Natural buildingStage() const { return stageSizes_.size(); }

 private:
  void advance();
  void advanceUntil(const std::function<bool()>& done, const char* what);

  std::string name_;
  std::recursive_mutex mutex_;
  std::vector<Value> values_;
  std::unordered_map<Value, Code, ValueHash> codes_;
  std::vector<std::size_t> stageSizes_;  // codes present after each built stage
  Natural stageBudget_ = 100000;
  std::size_t codeBudget_ = 2000000;
};

using DiagramPtr = std::shared_ptr<AtomicDiagram>;

/// Exact GroupModel view of a diagram through its decode map.
class ValueModel : public GroupModel {
 public:
  explicit ValueModel(DiagramPtr d) : d_(std::move(d)) {}
  std::string describe() const override { return d_->name(); }
  bool exact() const override { return true; }
  Value identity() const override { return d_->valueOf(0); }
  Value multiply(const Value& a, const Value& b) override { return d_->mulValues(a, b); }
  Value inverse(const Value& a) override { return d_->inverseValue(a); }
  bool provablyIdentity(const Value& a) override { return a == identity(); }
  bool provablyNonIdentity(const Value& a) override { return a != identity(); }
  std::vector<Value> sample(std::size_t bound) override;
  std::vector<Value> generators() override { return d_->generatorValues(); }
  std::string show(const Value& a) const override { return d_->showValue(a); }
  const DiagramPtr& diagram() const { return d_; }

 private:
  DiagramPtr d_;
};

/// Whole finite table coded at stage 0; value [index].
class TableDiagram : public AtomicDiagram {
 public:
  explicit TableDiagram(FiniteGroupTable t);
  const FiniteGroupTable& table() const { return t_; }
  Value mulValues(const Value& a, const Value& b) const override;
  Value inverseValue(const Value& a) const override;
  bool exhausted() override { return stagesBuilt() > 0; }

 protected:
  void step(Natural s) override;

 private:
  FiniteGroupTable t_;
};

/// Direct product A x B; value [|a|, a..., b...]. Pairs are coded by
/// increasing max(code a, code b), then code a, then code b.
class ProductDiagram : public AtomicDiagram {
 public:
  ProductDiagram(DiagramPtr a, DiagramPtr b);
  Value mulValues(const Value& x, const Value& y) const override;
  Value inverseValue(const Value& x) const override;
  std::string showValue(const Value& v) const override;
  std::vector<Value> generatorValues() override;
  bool exhausted() override { return stagesBuilt() > 0 && a_->exhausted() && b_->exhausted(); }

  static Value pack(const Value& a, const Value& b);
  static std::pair<Value, Value> unpack(const Value& v);
  const DiagramPtr& left() const { return a_; }
  const DiagramPtr& right() const { return b_; }

 protected:
  void step(Natural s) override;

 private:
  DiagramPtr a_, b_;
};

DiagramPtr cyclic(std::size_t n);
/// Code 2k-1 is k and code 2k is -k.
DiagramPtr integers();
DiagramPtr wreathPP(std::uint32_t p);
DiagramPtr rationalsFull();
/// Reduced words over a, b in shortlex order; stage s codes length s.
DiagramPtr free2();
/// <a, b | a^n = b^n> through its amalgamated normal form.
DiagramPtr oneRelatorEqualPowers(unsigned n);
DiagramPtr directProduct(DiagramPtr a, DiagramPtr b);

/// Names accepted by builtinDiagram: cyclic:N, integers, wreath:P,
/// rationals, free2, equal-powers:N.
DiagramPtr builtinDiagram(const std::string& spec);

}  // namespace grouplab
