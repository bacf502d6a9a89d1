// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "grouplab/checkers.hpp"
#include "grouplab/diagrams.hpp"
#include "grouplab/equal_powers.hpp"
#include "grouplab/error.hpp"
#include "grouplab/group_spec.hpp"
#include "grouplab/harness.hpp"
#include "grouplab/orders.hpp"
#include "grouplab/reductions.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace grouplab;
using Code = AtomicDiagram::Code;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Word yGen(std::uint32_t i) { return Word::generator(intern("y", {i, 0})); }

// Markov r.p. reduction with the torsion-free witnesses <x|>, <y|y^2>.
void criterion1(Outcome& o) {
  const auto w = witnessPairRp("torsion-free");
  auto t0 = std::chrono::steady_clock::now();
  const auto all = markovRp(w, StagedCeSet::all());
  const auto rels = all.oracle().visibleRelators(200);
  for (std::uint32_t i = 0; i <= 5; ++i) {
    const auto cert = all.oracle().prove(yGen(i), 200);
    o.require(cert.has_value(), "y_{" + std::to_string(i) + ",0} in 1_{G,200}");
    if (cert) o.require(cert->verifies(yGen(i), rels), "certificate for y_" + std::to_string(i));
  }
  const double tAll = seconds(t0);
  o.require(tAll < 5, "scenario all under 5 s");

  t0 = std::chrono::steady_clock::now();
  const auto empty = markovRp(w, StagedCeSet::empty());
  PresentationModel m(empty, 100, 1);
  const auto v = findTorsion(m, 20);
  o.require(v.status == Status::witnessed && v.evidence.value("exponent", 0) == 2, "order-2 witness at stage 100");
  if (v.status == Status::witnessed) {
    const Word x = parseWord(v.evidence.at("element").get<std::string>());
    const Word sq = mul(x, x);
    const auto cert = empty.oracle().prove(sq, 100);
    o.require(!x.empty() && cert && cert->verifies(sq, empty.oracle().visibleRelators(100)), "torsion certificate");
    o.detail << "witness " << x.str() << "^2; ";
  }
  const double tEmpty = seconds(t0);
  o.require(tEmpty < 5, "scenario empty under 5 s");
  o.detail << "times " << tAll << " s, " << tEmpty << " s";
}

// Markov diagram reduction, G+ = Z, G- = wreath(2) x Z.
void criterion2(Outcome& o) {
  const MarkovDiagramPair pair{integers(), wreathPP(2)};
  auto never = markovCg(pair, HaltingScenario::never(), true);
  auto z = integers();
  std::size_t mismatches = 0;
  std::set<Value> images;
  for (Code a = 0; a < 100; ++a) {
    const auto [g, h] = ProductDiagram::unpack(never->valueOf(a));
    if (h != never->negative()->valueOf(0)) ++mismatches;
    images.insert(g);
    for (Code b = 0; b < 100; ++b) {
      const Code c = never->mul(a, b);
      // exact embedding: decode into Z, multiply there, compare
      const Code za = z->codeFor(g), zb = z->codeFor(ProductDiagram::unpack(never->valueOf(b)).first);
      if (z->valueOf(z->mul(za, zb)) != ProductDiagram::unpack(never->valueOf(c)).first) ++mismatches;
    }
  }
  o.require(images.size() == 100, "decode map injective on codes < 100");

  auto halts = markovCg(pair, HaltingScenario::haltsAt(5), true);
  auto pos = halts->positive();
  auto neg = halts->negative();
  std::mt19937 rng(5);
  std::uniform_int_distribution<Code> pick(0, 99);
  for (int i = 0; i < 100; ++i) {
    const Code a = pick(rng), b = pick(rng);
    const auto [g1, h1] = ProductDiagram::unpack(halts->valueOf(a));
    const auto [g2, h2] = ProductDiagram::unpack(halts->valueOf(b));
    const auto [g3, h3] = ProductDiagram::unpack(halts->valueOf(halts->mul(a, b)));
    if (g3 != pos->mulValues(g1, g2) || h3 != neg->mulValues(h1, h2)) ++mismatches;
  }
  o.require(mismatches == 0, "zero mismatches");
  o.detail << "mismatches " << mismatches;
}

// Torsion construction.
void criterion3(Outcome& o) {
  auto all = torsionCg(StagedCeSet::all());
  for (Code c = 0; c < 50; ++c) all->valueOf(c);
  const auto mods = all->moduli();
  const std::int64_t product = std::accumulate(mods.begin(), mods.end(), std::int64_t{1}, std::multiplies<>());
  std::size_t bad = 0;
  for (Code c = 0; c < 50; ++c) {
    // replay: the product of the moduli kills every coded element
    const auto order = all->elementOrder(c, static_cast<Natural>(product));
    if (!order || product % static_cast<std::int64_t>(*order) != 0) ++bad;
    if (all->power(c, static_cast<long>(product)) != 0) ++bad;
  }
  o.require(bad == 0, "orders divide the product of moduli");
  o.detail << "moduli product " << product << "; ";

  auto empty = torsionCg(StagedCeSet::empty());
  const Code x1 = empty->codeFor(empty->generatorValues().at(0));
  o.require(!empty->elementOrder(x1, 100), "x1 has no order <= 100");
  bool nonzero = true;
  for (long n = 1; n <= 100; ++n) nonzero = nonzero && empty->power(x1, n) != 0;
  o.require(nonzero, "n x1 != 0 for n <= 100");
  o.detail << "x1 code " << x1;
}

// Divisible construction against (1/2)Z.
void criterion4(Outcome& o) {
  auto all = divisibleCg(StagedCeSet::all());
  const auto v = checkDivisibleUpTo(*all, 5, 10, 10000);
  o.require(v.status == Status::witnessed, "all: roots found");
  if (v.status == Status::witnessed)
    for (const auto& r : v.evidence.at("roots"))
      o.require(all->power(r[2].get<Code>(), r[1].get<long>()) == r[0].get<Code>(), "root replays");

  auto two = divisibleCg(StagedCeSet::finite({9, 12}));
  const auto w = checkDivisibleUpTo(*two, 3, 2, 10000);
  o.require(w.status == Status::refuted && w.evidence.at("g") == 1 && w.evidence.at("n") == 3, "no third root of g1");
  // oracle: the limit group is (1/2)Z, where g1 / 3 has denominator 3 or 6
  const Value g1 = two->valueOf(1);
  const std::int64_t p = g1[0], q = 3 * g1[1];
  const std::int64_t denom = q / std::gcd(p, q);
  o.require(2 % denom != 0, "g1/3 not in (1/2)Z");
  bool inside = true;
  for (Code c = 0; c < 10000; ++c) inside = inside && 2 % two->valueOf(c)[1] == 0;
  o.require(inside, "first 10^4 codes lie in (1/2)Z");
  o.detail << "g1 = " << two->showValue(g1);
}

// Wreath products against permutation groups.
void criterion5(Outcome& o) {
  for (std::uint32_t p : {2u, 3u}) {
    auto d = wreathPP(p);
    const auto perms = oracle::closure(oracle::wreathGenerators(static_cast<int>(p)), p * p);
    const std::size_t expectedOrder = p == 2 ? 8 : 81;
    const auto cls = nilpotencyClass(wreathTable(p));
    const int oracleCls = oracle::nilpotencyClass(oracle::wreathGenerators(static_cast<int>(p)), p * p);
    o.require(d->codeCount(0) == expectedOrder && perms.size() == expectedOrder, "order of wreath " + std::to_string(p));
    o.require(cls && *cls == p && oracleCls == static_cast<int>(p), "class of wreath " + std::to_string(p));
    o.detail << "p=" << p << ": |G|=" << d->codeCount(0) << " class " << (cls ? *cls : 0) << "; ";
  }
}

// Nilpotent and solvable diagrams.
void criterion6(Outcome& o) {
  {
    // W = {3}: Z x W(1), class 2, so commutators of length 3 vanish
    ValueModel m(nilpotentCg(StagedCeSet::finite({3})));
    o.require(checkNilpotentUpTo(m, 3, 40).status == Status::witnessed, "nilpotent finite{3} witnessed at n=3");
    o.require(checkNilpotentUpTo(m, 2, 40).status == Status::refuted, "nilpotent finite{3} refuted at n=2");
  }
  {
    // W = {3}: Z x F2/F2', derived length 1
    ValueModel m(solvableCg(StagedCeSet::finite({3})));
    o.require(checkSolvableUpTo(m, 1, 40).status == Status::witnessed, "solvable finite{3} witnessed at depth 1");
  }
  ValueModel n(nilpotentCg(StagedCeSet::all()));
  ValueModel s(solvableCg(StagedCeSet::all()));
  for (std::size_t k = 1; k <= 3; ++k) {
    o.require(checkNilpotentUpTo(n, k, 60).status == Status::refuted, "nilpotent all refuted at n=" + std::to_string(k));
    o.require(checkSolvableUpTo(s, k, 60).status == Status::refuted, "solvable all refuted at depth " + std::to_string(k));
  }
  o.detail << "finite{3}: nilpotent n=3, solvable depth 1; all: refuted for 1..3";
}

// Magnus order on F2.
void criterion7(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t D = 14;
  const auto strings = oracle::reducedWords(5);
  std::vector<Word> words;
  for (const auto& s : strings) words.push_back(toWord(s));
  std::vector<bool> pos(words.size());
  std::size_t failures = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    pos[i] = positiveConeMember(words[i], D);
    const bool neg = positiveConeMember(inv(words[i]), D);
    if ((pos[i] ? 1 : 0) + (neg ? 1 : 0) + (words[i].empty() ? 1 : 0) != 1) ++failures;  // totality
  }
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (pos[i] && pos[j] && !positiveConeMember(mul(words[i], words[j]), D)) ++failures;  // semigroup
      if ((magnusCompare(words[i], words[j], D) == Comparison::equal) != (i == j)) ++failures;
    }
  for (const auto& u : oracle::reducedWords(3)) {
    const Word c = toWord(u);
    for (std::size_t i = 0; i < words.size(); ++i)
      if (positiveConeMember(mul(mul(c, words[i]), inv(c)), D) != pos[i]) ++failures;  // normality
  }
  const double t = seconds(t0);
  o.require(failures == 0, "cone axioms, totality, normality, equality");
  o.require(t < 60, "under 60 s");
  o.detail << words.size() << " words, " << failures << " failures, " << t << " s";
}

// OLF refuter.
void criterion8(Outcome& o) {
  ValueModel z3(cyclic(3));
  o.require(olfRefute(z3, {z3.generators().at(0)}, 3, OrderMode::left).refuted, "Z3 refuted at depth 3");

  ValueModel k(oneRelatorEqualPowers(2));
  std::vector<Value> cands;
  std::set<Value> seen{k.identity()};
  for (const auto& s : oracle::reducedWords(4)) {
    Value v = evaluateWord(k, toWord(s));
    if (seen.insert(v).second) cands.push_back(v);
  }
  const auto tuple = findOlfObstruction(k, cands, 2, 6, OrderMode::bi);
  o.require(tuple.has_value(), "Klein bottle bi-order obstruction found");
  if (tuple) {
    o.require(!olfRefute(k, *tuple, 8, OrderMode::left).refuted, "Klein bottle left mode survives depth 8");
    o.detail << "tuple";
    for (const auto& v : *tuple) o.detail << ' ' << k.show(v);
    o.detail << "; ";
  }

  ValueModel f(free2());
  const std::vector<Value> fTuple{evaluateWord(f, parseWord("a")), evaluateWord(f, parseWord("b")),
                                  evaluateWord(f, parseWord("[a,b]"))};
  o.require(!olfRefute(f, fTuple, 8, OrderMode::left).refuted, "F2 left survives");
  o.require(!olfRefute(f, fTuple, 8, OrderMode::bi).refuted, "F2 bi survives");
  o.detail << "F2 survives both modes";
}

// Word problem agreement on <a, b | a^2 = b^2>.
void criterion9(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = RecursivePresentation::parse("K", "a,b", "a^2*b^-2");
  const Natural stage = 63;
  PresentationModel m(p, stage);
  const EqualPowersNormalForm nf(2);
  const WordDecider decider = [&](const Word& w) -> std::optional<bool> { return nf.isIdentity(w); };
  const auto v = auditWordProblemDecider(m, decider, 8);
  o.require(v.status == Status::witnessed, "zero discrepancies on words of length <= 8");
  o.detail << v.evidence.dump() << ", stage " << stage << ", " << seconds(t0) << " s";
}

// Determinism of the bundled experiments.
void criterion10(Outcome& o, const std::string& dir) {
  const auto a = runSuite(dir), b = runSuite(dir);
  o.require(!a.reports.empty(), "bundled experiments present");
  o.require(a.errors.empty() && b.errors.empty(), "all specs load");
  o.require(a.reports.size() == b.reports.size(), "same report count");
  for (std::size_t i = 0; i < std::min(a.reports.size(), b.reports.size()); ++i) {
    o.require(a.reports[i].fingerprint == b.reports[i].fingerprint, a.reports[i].name + " fingerprint");
    o.require(a.reports[i].toJson(false).dump() == b.reports[i].toJson(false).dump(), a.reports[i].name + " report");
  }
  o.detail << a.reports.size() << " experiments";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string suiteDir = argc > 1 ? argv[1] : "suites/paper-table";
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"markov r.p. reduction", criterion1},
      {"markov diagram reduction", criterion2},
      {"torsion construction", criterion3},
      {"divisible construction", criterion4},
      {"wreath oracles", criterion5},
      {"nilpotent/solvable diagrams", criterion6},
      {"magnus order", criterion7},
      {"olf refuter", criterion8},
      {"word problem agreement", criterion9},
      {"determinism", [&](Outcome& o) { criterion10(o, suiteDir); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail.str()
              << std::endl;
  }
  return failed ? 1 : 0;
}
