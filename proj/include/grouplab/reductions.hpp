#pragma once

#include <memory>
#include <string>
#include <vector>

#include "grouplab/cesets.hpp"
#include "grouplab/diagrams.hpp"
#include "grouplab/presentations.hpp"

namespace grouplab {

/// G+ has the property, G- embeds into no group with it.
struct MarkovWitnessPair {
  RecursivePresentation positive;
  RecursivePresentation negative;
};

struct MarkovDiagramPair {
  DiagramPtr positive;
  DiagramPtr negative;
};

/// Properties with bundled witness pairs: abelian, torsion-free, trivial,
/// divisible, torsion, orderable.
std::vector<std::string> markovProperties();
MarkovWitnessPair witnessPairRp(const std::string& property);
MarkovDiagramPair witnessPairCg(const std::string& property);

/// <x_1, x_2, ... | x_1^2, x_2^2 x_1^-1, ...>; x_{s+1} appears at stage s.
RecursivePresentation pruferTwo();

// ---------------------------------------------------------------- r.p. side

/// G+ * G-(y_0) * G-(y_1) * ...; the k-th element of S kills block y_{k-1}.
/// G+ generators become x_k and block i generators y_{i,k}, by position in
/// the witness's generator list. Block i appears at stage i and runs the
/// witness's stages shifted by i.
RecursivePresentation markovRp(const MarkovWitnessPair& w, const StagedCeSet& s);
/// <x_0, x_1, ... | x_i^2, [x_i, x_j], x_k for k in W>.
RecursivePresentation finitenessRp(const StagedCeSet& s);
/// <a, b, c, d | a^n b a^n = c^n d c^n for n in W>.
RecursivePresentation wordProblemRp(const StagedCeSet& s);
/// <x_0, x_1, ... | x_i^(p_i), [x_i, x_j], x_n for n in W> with p_i = prime(i+1).
RecursivePresentation cyclicRp(const StagedCeSet& s);
/// Direct sum of blocks H_n = Z_p wr Z_p, p = prime(n+1), on a_n, t_n;
/// block n is killed when n enters W.
RecursivePresentation nilpotentRp(const StagedCeSet& s);
/// Direct sum of blocks H_n = F2 / F2^(n) on a_n, b_n (H_0 trivial); the
/// derived-subgroup relators of each block are released a few per stage.
RecursivePresentation solvableRp(const StagedCeSet& s);
/// <x_0, y_0, x_1, y_1, ... | x_0^2 y_0^-2>; the k-th element of S kills
/// x_{k-1}, y_{k-1} and imposes x_k^2 y_k^-2.
RecursivePresentation biorderRp(const StagedCeSet& s);

/// Relators released per stage per block by solvableRp.
inline constexpr std::size_t kSolvableReleasePerStage = 3;

// ---------------------------------------------------------------- diagrams

/// The three-case construction: G+ x {1} while phi_e(e) runs, G+ x G-
/// after it halts. Values are ProductDiagram::pack(g, h).
class MarkovDiagram : public AtomicDiagram {
 public:
  MarkovDiagram(DiagramPtr positive, DiagramPtr negative, HaltingScenario h, bool augment = true);

  Value mulValues(const Value& x, const Value& y) const override;
  Value inverseValue(const Value& x) const override;
  std::string showValue(const Value& v) const override;
  std::vector<Value> generatorValues() override;

  const DiagramPtr& positive() const { return pos_; }
  /// G-, or G- x Z when augmented.
  const DiagramPtr& negative() const { return neg_; }

 protected:
  void step(Natural s) override;

 private:
  Value pair(std::size_t i, std::size_t j);

  DiagramPtr pos_, neg_;
  HaltingScenario h_;
  std::size_t nextPositive_ = 1;  // least G+ index not known to be coded
  std::size_t nextNegative_ = 1;
  std::size_t closedUpTo_ = 0;    // case 1: all (g_j, g_k), k <= j < closedUpTo_, done
};

/// Torsion construction: tuples under componentwise addition; when an
/// element enters W the last component is closed off modulo 4m (values in
/// [-2m, 2m-1]) and a new component opens. Identity is the empty tuple.
class TorsionDiagram : public AtomicDiagram {
 public:
  explicit TorsionDiagram(StagedCeSet s);

  Value mulValues(const Value& x, const Value& y) const override;
  Value inverseValue(const Value& x) const override;
  std::string showValue(const Value& v) const override;
  std::vector<Value> generatorValues() override;

  /// Moduli of the components closed by the stages built so far.
  std::vector<std::int64_t> moduli();
  /// Stage at which component k closes, if it ever does.
  std::optional<Natural> closeStage(std::size_t k) const;
  /// Modulus of component k in the limit group (0 if it stays Z).
  std::int64_t limitModulus(std::size_t k);

 protected:
  void step(Natural s) override;

 private:
  Value add(const Value& x, const Value& y) const;

  StagedCeSet s_;
  std::vector<std::int64_t> moduli_;
};

/// Names rationals; stage s+1 codes the sums of pairs with max code s and,
/// when |W| grows to m, the rational 1/m. Value [p, q] in lowest terms.
DiagramPtr divisibleCg(const StagedCeSet& s);
/// Z x W(1) x ... x W(n), W(k) = Z_p wr Z_p with p = prime(k). Value
/// [z, w_1, ..., w_n] with w_k a wreathPP index; trailing identities trimmed.
DiagramPtr nilpotentCg(const StagedCeSet& s);
/// Z x H_1 x ... x H_n, H_k = F2 / F2^(k), elements of H_k released a few
/// per stage after the k-th element of W appears.
DiagramPtr solvableCg(const StagedCeSet& s);
/// Reduced words over a, b, stage s coding length s. If H halts at t the
/// values are normal forms in <a, b | a^t = b^t>; before stage t the stage
/// diagrams use free products.
DiagramPtr biorderCg(const HaltingScenario& h);

std::shared_ptr<MarkovDiagram> markovCg(const MarkovDiagramPair& w, const HaltingScenario& h,
                                        bool augment = true);
std::shared_ptr<TorsionDiagram> torsionCg(const StagedCeSet& s);

/// Names accepted by the construct command.
std::vector<std::string> constructionNames();
bool isDiagramConstruction(const std::string& name);

}  // namespace grouplab
