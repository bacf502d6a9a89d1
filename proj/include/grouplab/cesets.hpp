#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace grouplab {

using Natural = std::uint64_t;

/// A declarative stand-in for a c.e. set W_e together with its stage
/// approximations W_{e,s}. At most one element enters per stage and
/// atStage(0) is empty for every kind.
class StagedCeSet {
 public:
  enum class Kind { Empty, Finite, All, Evens, Cofinite, Explicit };

  static StagedCeSet empty();
  static StagedCeSet finite(std::vector<Natural> elements);
  static StagedCeSet all();
  static StagedCeSet evens();
  /// Every natural except `complement`, enumerated in increasing order.
  static StagedCeSet cofinite(std::vector<Natural> complement);
  /// (stage, element) pairs; stages must be strictly increasing and >= 1,
  /// elements distinct. Throws InvalidArgument otherwise.
  static StagedCeSet explicitSchedule(std::vector<std::pair<Natural, Natural>> schedule);

  Kind kind() const { return kind_; }
  /// Declared class (FIN, INF, COF, ...). Metadata only.
  const std::string& classTag() const { return classTag_; }
  StagedCeSet& withClassTag(std::string tag) {
    classTag_ = std::move(tag);
    return *this;
  }

  std::set<Natural> atStage(Natural s) const;
  std::size_t sizeAtStage(Natural s) const;
  /// The unique element of atStage(s) - atStage(s-1), if any. s >= 1.
  std::optional<Natural> newElement(Natural s) const;
  /// True when the declared set is finite (so the stage sequence stabilizes).
  bool isFinite() const;
  /// Last stage at which an element enters, when finite.
  std::optional<Natural> lastEventStage() const;

  nlohmann::json toJson() const;
  static StagedCeSet fromJson(const nlohmann::json& j);

 private:
  StagedCeSet(Kind k) : kind_(k) {}
  // k-th enumerated element (k >= 1) for the stage-per-element kinds.
  std::optional<Natural> nth(Natural k) const;

  Kind kind_;
  std::vector<Natural> elements_;  // finite: enumeration order; cofinite: sorted complement
  std::vector<std::pair<Natural, Natural>> schedule_;
  std::string classTag_;
};

/// Whether (and when) phi_e(e) halts.
class HaltingScenario {
 public:
  static HaltingScenario never() { return HaltingScenario(std::nullopt); }
  /// Throws InvalidArgument when stage < 1.
  static HaltingScenario haltsAt(Natural stage);

  bool halts() const { return stage_.has_value(); }
  std::optional<Natural> stage() const { return stage_; }
  /// phi_{e,s}(e) converged.
  bool haltedBy(Natural s) const { return stage_ && s >= *stage_; }

  nlohmann::json toJson() const;
  static HaltingScenario fromJson(const nlohmann::json& j);

 private:
  explicit HaltingScenario(std::optional<Natural> s) : stage_(s) {}
  std::optional<Natural> stage_;
};

/// Scenario file: {"set":{...},"halting":{...}}; either part may be absent.
struct Scenario {
  StagedCeSet set = StagedCeSet::empty();
  HaltingScenario halting = HaltingScenario::never();

  nlohmann::json toJson() const;
  static Scenario fromJson(const nlohmann::json& j);
  static Scenario load(const std::string& path);
};

}  // namespace grouplab
