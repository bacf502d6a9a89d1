#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grouplab/diagrams.hpp"
#include "grouplab/groups.hpp"
#include "grouplab/presentations.hpp"
#include "json.hpp"

namespace grouplab {

enum class Status { witnessed, refuted, unknown };
std::string to_string(Status s);
Status parseStatus(const std::string& s);

/// Bounded evaluation of a characterizing formula. Witnessed and refuted
/// verdicts carry replayable evidence; unknown carries only the budget.
struct Verdict {
  std::string check;
  Status status = Status::unknown;
  nlohmann::json evidence = nlohmann::json::object();
  nlohmann::json bound = nlohmann::json::object();

  nlohmann::json toJson() const;
};

/// forall w, v: wv = vw over the first `bound` sampled elements.
Verdict checkAbelian(GroupModel& g, std::size_t bound);
/// A sampled element not provably trivial with w^n provably trivial, n <= bound.
Verdict findTorsion(GroupModel& g, std::size_t bound);
/// Every one of the first sampleBound elements has w^n = 1 for some n <= orderBound.
Verdict checkTorsionUpTo(GroupModel& g, std::size_t sampleBound, std::size_t orderBound);
/// The first `generators` generators are all provably trivial.
Verdict checkTrivialUpTo(GroupModel& g, std::size_t generators);
/// For every code g < codeMax and 2 <= n <= nMax some code h < searchCodes has h^n = g.
Verdict checkDivisibleUpTo(AtomicDiagram& d, std::size_t nMax, std::size_t codeMax, std::size_t searchCodes);
/// All left-normed commutators [g_1, ..., g_n] of sampled elements vanish,
/// i.e. class <= n - 1 on the sample. evalCap bounds commutator evaluations.
Verdict checkNilpotentUpTo(GroupModel& g, std::size_t n, std::size_t sampleBound, std::size_t evalCap = 2000000);
/// All depth-n derived commutators of sampled elements vanish, i.e. derived
/// length <= n on the sample.
Verdict checkSolvableUpTo(GroupModel& g, std::size_t n, std::size_t sampleBound, std::size_t evalCap = 2000000);
/// At most n representatives such that every word of length <= wordLength over
/// the model's alphabet is provably equal to one of them.
Verdict checkFiniteUpTo(PresentationModel& g, std::size_t n, std::size_t wordLength);

/// Candidate decider: true = identity, false = not, nullopt = gave up.
using WordDecider = std::function<std::optional<bool>(const Word&)>;
/// Cross-checks the decider against 1_{G,s} on all words of length <=
/// wordLength over the model's alphabet.
Verdict auditWordProblemDecider(PresentationModel& g, const WordDecider& candidate, std::size_t wordLength);
/// Some sampled w whose powers w^k, |k| <= exponentBound, cover the sample.
Verdict checkCyclicUpTo(GroupModel& g, std::size_t bound, std::size_t exponentBound);

/// Check names accepted by the harness and CLI.
std::vector<std::string> checkNames();

}  // namespace grouplab
