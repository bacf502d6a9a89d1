#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grouplab/cesets.hpp"
#include "grouplab/words.hpp"

namespace grouplab {

/// Generators and relators visible at one stage. Both lists are cumulative:
/// the stage-s lists are prefixes of the stage-(s+1) lists.
struct PresentationStage {
  std::vector<GeneratorId> generators;
  std::vector<Word> relators;
};

class IdentityOracle;

/// A recursive presentation given by a prefix-monotone stage function.
/// Values are cheap to copy; copies share the stage cache and the identity
/// oracle, both of which are internally synchronized.
class RecursivePresentation {
 public:
  using StageFn = std::function<PresentationStage(Natural)>;

  RecursivePresentation(std::string name, StageFn fn);

  /// A finitely presented group: everything visible from stage 0.
  static RecursivePresentation finite(std::string name, std::vector<GeneratorId> generators,
                                      std::vector<Word> relators);
  /// Stage s is built from a copy of stage s-1 (empty before stage 0) by
  /// `step`, which should only append; stages are computed once, in order.
  static RecursivePresentation incremental(std::string name,
                                           std::function<void(Natural, PresentationStage&)> step);
  /// Parses e.g. ("a,b", "a^2*b^-2").
  static RecursivePresentation parse(std::string name, std::string_view generators,
                                     std::string_view relators);

  const std::string& name() const { return name_; }
  const PresentationStage& at(Natural s) const;
  const std::vector<GeneratorId>& generatorsAt(Natural s) const { return at(s).generators; }
  const std::vector<Word>& relatorsAt(Natural s) const { return at(s).relators; }

  /// Renames generators through `rename`, keeping the stage structure.
  RecursivePresentation renamed(std::string name, std::function<GeneratorId(GeneratorId)> rename) const;

  IdentityOracle& oracle() const;

  /// {"name":..., "stage":S, "generators":[...], "relators":[{"index":i,"stage":t,"word":...}]}
  nlohmann::json toJson(Natural stage) const;
  /// Accepts the toJson layout (a finite presentation snapshot) or
  /// {"generators":["a","b"],"relators":["a^2*b^-2", {"stage":3,"word":"a"}]}.
  static RecursivePresentation fromJson(const nlohmann::json& j);

 private:
  struct Shared;
  static const PresentationStage& atShared(Shared* sh, Natural s);
  std::string name_;
  std::shared_ptr<Shared> shared_;
};

/// Free product with disjoint generator families. A factor whose generators
/// collide with an earlier factor's is renamed by prefixing its index tuple
/// with the factor position. Relators are merged stage by stage.
RecursivePresentation freeProduct(const std::vector<RecursivePresentation>& factors,
                                  std::string name = {});

/// Stagewise union of P's relator stream with `extra` (cumulative lists).
RecursivePresentation addRelatorsStaged(const RecursivePresentation& p,
                                        std::function<std::vector<Word>(Natural)> extra,
                                        std::string name = {});

/// One factor u * r^sign * u^-1 of an identity certificate.
struct IdentityFactor {
  Word conjugator;
  std::size_t relatorIndex = 0;
  int sign = 1;
};

/// w is the free reduction of the product of the factors, in order.
struct IdentityCertificate {
  std::vector<IdentityFactor> factors;

  Word product(const std::vector<Word>& relators) const;
  bool verifies(const Word& w, const std::vector<Word>& relators) const;
  nlohmann::json toJson(const std::vector<Word>& relators) const;
};

/// Per-stage search budget for the identity approximation 1_{G,s}.
struct SearchBudget {
  std::size_t relators = 0;    // relators with index < this are visible
  std::size_t wordLength = 0;  // longest word admitted to 1_{G,s}
  std::size_t moves = 0;       // relator insertions allowed
  std::size_t lengthCap = 0;   // longest intermediate word

  static SearchBudget forStage(Natural s);
};

/// 1_{G,s} restricted to words over `alphabet`, up to the stage word length.
struct IdentityApprox {
  Natural stage = 0;
  std::vector<Word> words;
  std::vector<IdentityCertificate> certificates;  // parallel to words
};

/// Stage-bounded enumeration of the identity words of a presentation.
///
/// A word w belongs to 1_{G,s} when |w| <= wordLength(s) and w can be driven
/// to the empty word by at most moves(s) insertions of cyclic conjugates of
/// visible relators (or their inverses), each insertion cancelling against
/// the letter to its left, with every intermediate word no longer than
/// lengthCap(s). Every member carries a certificate; the approximation is
/// monotone in s and exhausts the normal closure in the limit.
class IdentityOracle {
 public:
  using StageLookup = std::function<const PresentationStage&(Natural)>;
  explicit IdentityOracle(StageLookup stages);
  ~IdentityOracle();

  std::optional<IdentityCertificate> prove(const Word& w, Natural s);
  bool contains(const Word& w, Natural s) { return prove(w, s).has_value(); }
  /// Visible relators at stage s (the list certificates index into).
  std::vector<Word> visibleRelators(Natural s) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

IdentityApprox identityWords(const RecursivePresentation& p, Natural s,
                             std::optional<std::size_t> maxLength = std::nullopt);
/// Semi-decision of w =_G v at stage s.
bool equalAtStage(const RecursivePresentation& p, const Word& w, const Word& v, Natural s);

}  // namespace grouplab
