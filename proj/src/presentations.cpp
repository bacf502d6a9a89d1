#include "grouplab/presentations.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "grouplab/error.hpp"

namespace grouplab {

struct RecursivePresentation::Shared {
  StageFn fn;
  std::mutex mutex;
  std::map<Natural, std::unique_ptr<PresentationStage>> cache;
  std::once_flag oracleOnce;
  std::unique_ptr<IdentityOracle> oracle;
};

RecursivePresentation::RecursivePresentation(std::string name, StageFn fn)
    : name_(std::move(name)), shared_(std::make_shared<Shared>()) {
  shared_->fn = std::move(fn);
}

RecursivePresentation RecursivePresentation::finite(std::string name, std::vector<GeneratorId> generators,
                                                    std::vector<Word> relators) {
  std::erase_if(relators, [](const Word& r) { return r.empty(); });
  PresentationStage st{std::move(generators), std::move(relators)};
  return RecursivePresentation(std::move(name), [st](Natural) { return st; });
}

namespace {

std::vector<GeneratorId> parseGenerators(std::string_view text) {
  std::vector<GeneratorId> out;
  for (const auto& w : parseWordList(text)) {
    if (w.size() != 1 || w[0] < 0) throw InvalidArgument("generator list: '" + w.str() + "' is not a generator");
    out.push_back(generatorOfLetter(w[0]));
  }
  return out;
}

Word renameWord(const Word& w, const std::function<GeneratorId(GeneratorId)>& rename) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters()) out.push_back(letter(rename(generatorOfLetter(l)), signOf(l)));
  return Word::reduce(out);
}

// Builds stages in order, each from its predecessor, so that merged streams
// stay prefix-monotone without recomputing from scratch.
class IncrementalStages {
 public:
  using Step = std::function<void(Natural, PresentationStage&)>;
  explicit IncrementalStages(Step step) : step_(std::move(step)) {}

  PresentationStage get(Natural s) {
    std::lock_guard lock(mutex_);
    while (stages_.size() <= s) {
      PresentationStage next = stages_.empty() ? PresentationStage{} : stages_.back();
      step_(stages_.size(), next);
      stages_.push_back(std::move(next));
    }
    return stages_[s];
  }

 private:
  Step step_;
  std::mutex mutex_;
  std::vector<PresentationStage> stages_;
};

}  // namespace

RecursivePresentation RecursivePresentation::parse(std::string name, std::string_view generators,
                                                   std::string_view relators) {
  return finite(std::move(name), parseGenerators(generators), parseWordList(relators));
}

RecursivePresentation RecursivePresentation::incremental(std::string name,
                                                         std::function<void(Natural, PresentationStage&)> step) {
  auto builder = std::make_shared<IncrementalStages>(std::move(step));
  return RecursivePresentation(std::move(name), [builder](Natural s) { return builder->get(s); });
}

const PresentationStage& RecursivePresentation::atShared(Shared* sh, Natural s) {
  {
    std::lock_guard lock(sh->mutex);
    auto it = sh->cache.find(s);
    if (it != sh->cache.end()) return *it->second;
  }
  auto computed = std::make_unique<PresentationStage>(sh->fn(s));
  std::lock_guard lock(sh->mutex);
  auto [it, inserted] = sh->cache.emplace(s, std::move(computed));
  return *it->second;
}

const PresentationStage& RecursivePresentation::at(Natural s) const { return atShared(shared_.get(), s); }

IdentityOracle& RecursivePresentation::oracle() const {
  Shared* sh = shared_.get();
  std::call_once(sh->oracleOnce, [sh] {
    // The oracle lives inside the shared block, so a raw back-reference is safe.
    sh->oracle = std::make_unique<IdentityOracle>(
        [sh](Natural s) -> const PresentationStage& { return RecursivePresentation::atShared(sh, s); });
  });
  return *sh->oracle;
}

RecursivePresentation RecursivePresentation::renamed(std::string name,
                                                     std::function<GeneratorId(GeneratorId)> rename) const {
  auto base = *this;
  return RecursivePresentation(std::move(name), [base, rename](Natural s) {
    const auto& st = base.at(s);
    PresentationStage out;
    for (auto g : st.generators) out.generators.push_back(rename(g));
    for (const auto& r : st.relators) out.relators.push_back(renameWord(r, rename));
    return out;
  });
}

nlohmann::json RecursivePresentation::toJson(Natural stage) const {
  const auto& st = at(stage);
  nlohmann::json j;
  j["name"] = name_;
  j["stage"] = stage;
  auto gens = nlohmann::json::array();
  for (auto g : st.generators) gens.push_back(generatorOf(g).str());
  j["generators"] = gens;
  auto rels = nlohmann::json::array();
  Natural t = 0;
  for (std::size_t i = 0; i < st.relators.size(); ++i) {
    while (at(t).relators.size() <= i) ++t;
    rels.push_back({{"index", i}, {"stage", t}, {"word", st.relators[i].str()}});
  }
  j["relators"] = rels;
  return j;
}

RecursivePresentation RecursivePresentation::fromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("presentation: expected a JSON object");
  try {
    std::vector<GeneratorId> gens;
    if (j.contains("generators")) {
      const auto& g = j.at("generators");
      if (g.is_string()) {
        gens = parseGenerators(g.get<std::string>());
      } else {
        for (const auto& e : g) {
          auto parsed = parseGenerators(e.get<std::string>());
          gens.insert(gens.end(), parsed.begin(), parsed.end());
        }
      }
    }
    std::vector<std::pair<Natural, Word>> rels;
    if (j.contains("relators")) {
      const auto& r = j.at("relators");
      if (r.is_string()) {
        for (auto& w : parseWordList(r.get<std::string>())) rels.emplace_back(0, std::move(w));
      } else {
        for (const auto& e : r) {
          if (e.is_string())
            rels.emplace_back(0, parseWord(e.get<std::string>()));
          else
            rels.emplace_back(e.value("stage", Natural{0}), parseWord(e.at("word").get<std::string>()));
        }
      }
    }
    std::stable_sort(rels.begin(), rels.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::erase_if(rels, [](const auto& p) { return p.second.empty(); });
    std::set<GeneratorId> declared(gens.begin(), gens.end());
    for (const auto& [st, w] : rels)
      for (auto g : w.support())
        if (!declared.count(g))
          throw InvalidArgument("presentation: relator " + w.str() + " uses undeclared generator " +
                                generatorOf(g).str());
    return RecursivePresentation(j.value("name", std::string("presentation")), [gens, rels](Natural s) {
      PresentationStage st{gens, {}};
      for (const auto& [t, w] : rels)
        if (t <= s) st.relators.push_back(w);
      return st;
    });
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("presentation: ") + e.what());
  }
}

RecursivePresentation freeProduct(const std::vector<RecursivePresentation>& factors, std::string name) {
  if (name.empty()) {
    for (std::size_t i = 0; i < factors.size(); ++i) name += (i ? " * " : "") + factors[i].name();
  }
  if (factors.size() == 1) {
    auto only = factors[0];
    return RecursivePresentation(name, [only](Natural s) { return only.at(s); });
  }
  // Families are probed at a few stages; a factor colliding with an earlier
  // one is tagged with its position.
  std::vector<bool> tag(factors.size(), false);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::set<std::string> mine;
    for (Natural probe : {Natural{0}, Natural{8}, Natural{32}})
      for (auto g : factors[i].generatorsAt(probe)) mine.insert(generatorOf(g).family);
    for (const auto& f : mine)
      if (seen.count(f)) tag[i] = true;
    seen.insert(mine.begin(), mine.end());
  }
  std::vector<RecursivePresentation> parts;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!tag[i]) {
      parts.push_back(factors[i]);
      continue;
    }
    const auto pos = static_cast<std::uint32_t>(i);
    parts.push_back(factors[i].renamed(factors[i].name(), [pos](GeneratorId g) {
      const auto& gen = generatorOf(g);
      std::vector<std::uint32_t> idx{pos};
      idx.insert(idx.end(), gen.index.begin(), gen.index.end());
      return intern(gen.family, std::move(idx));
    }));
  }
  return RecursivePresentation::incremental(name, [parts](Natural s, PresentationStage& st) {
    for (const auto& p : parts) {
      const auto& cur = p.at(s);
      std::size_t oldG = 0, oldR = 0;
      if (s > 0) {
        oldG = p.at(s - 1).generators.size();
        oldR = p.at(s - 1).relators.size();
      }
      st.generators.insert(st.generators.end(), cur.generators.begin() + oldG, cur.generators.end());
      st.relators.insert(st.relators.end(), cur.relators.begin() + oldR, cur.relators.end());
    }
  });
}

RecursivePresentation addRelatorsStaged(const RecursivePresentation& p,
                                        std::function<std::vector<Word>(Natural)> extra, std::string name) {
  if (name.empty()) name = p.name() + "+";
  return RecursivePresentation::incremental(name, [p, extra](Natural s, PresentationStage& st) {
    const auto& cur = p.at(s);
    std::size_t oldR = 0;
    std::size_t oldE = 0;
    std::vector<Word> ex = extra(s);
    if (s > 0) {
      oldR = p.at(s - 1).relators.size();
      oldE = extra(s - 1).size();
    }
    st.generators = cur.generators;
    st.relators.insert(st.relators.end(), cur.relators.begin() + oldR, cur.relators.end());
    for (std::size_t i = oldE; i < ex.size(); ++i)
      if (!ex[i].empty()) st.relators.push_back(ex[i]);
  });
}

Word IdentityCertificate::product(const std::vector<Word>& relators) const {
  Word out;
  for (const auto& f : factors) {
    if (f.relatorIndex >= relators.size()) throw InvalidArgument("certificate: relator index out of range");
    out = mul(out, mul(mul(f.conjugator, pow(relators[f.relatorIndex], f.sign)), inv(f.conjugator)));
  }
  return out;
}

bool IdentityCertificate::verifies(const Word& w, const std::vector<Word>& relators) const {
  try {
    return product(relators) == w;
  } catch (const InvalidArgument&) {
    return false;
  }
}

nlohmann::json IdentityCertificate::toJson(const std::vector<Word>& relators) const {
  auto arr = nlohmann::json::array();
  for (const auto& f : factors) {
    nlohmann::json e{{"conjugator", f.conjugator.str()}, {"relator", f.relatorIndex}, {"sign", f.sign}};
    if (f.relatorIndex < relators.size()) e["word"] = relators[f.relatorIndex].str();
    arr.push_back(e);
  }
  return arr;
}

}  // namespace grouplab
