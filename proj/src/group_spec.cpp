#include "grouplab/group_spec.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "grouplab/error.hpp"
#include "grouplab/reductions.hpp"

namespace grouplab {

namespace {

std::optional<Natural> budgetFromEnv() {
  const char* env = std::getenv("GROUPLAB_BUDGET");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (*end || v <= 0) throw InvalidArgument("GROUPLAB_BUDGET must be a positive integer, got '" + std::string(env) + "'");
  return static_cast<Natural>(v);
}

MarkovWitnessPair rpWitness(const nlohmann::json& w) {
  if (w.is_null()) return witnessPairRp("torsion-free");
  if (w.is_string()) return witnessPairRp(w.get<std::string>());
  if (w.is_object() && w.contains("positive") && w.contains("negative"))
    return {RecursivePresentation::fromJson(w.at("positive")), RecursivePresentation::fromJson(w.at("negative"))};
  throw InvalidArgument("witness: expected a property name or {positive, negative}");
}

MarkovDiagramPair cgWitness(const nlohmann::json& w) {
  if (w.is_null()) return witnessPairCg("torsion-free");
  if (w.is_string()) return witnessPairCg(w.get<std::string>());
  if (w.is_object() && w.contains("positive") && w.contains("negative"))
    return {builtinDiagram(w.at("positive").get<std::string>()), builtinDiagram(w.at("negative").get<std::string>())};
  throw InvalidArgument("witness: expected a property name or {positive, negative}");
}

}  // namespace

Natural defaultStageBudget() { return budgetFromEnv().value_or(200); }
std::size_t defaultCodeBudget() { return budgetFromEnv().value_or(100); }

RecursivePresentation buildPresentation(const std::string& c, const Scenario& sc, const nlohmann::json& witness) {
  if (c == "markov-rp") return markovRp(rpWitness(witness), sc.set);
  if (c == "finiteness-rp") return finitenessRp(sc.set);
  if (c == "wordproblem-rp") return wordProblemRp(sc.set);
  if (c == "cyclic-rp") return cyclicRp(sc.set);
  if (c == "nilpotent-rp") return nilpotentRp(sc.set);
  if (c == "solvable-rp") return solvableRp(sc.set);
  if (c == "biorder-rp") return biorderRp(sc.set);
  throw InvalidArgument("unknown presentation construction '" + c + "'");
}

DiagramPtr buildDiagram(const std::string& c, const Scenario& sc, const nlohmann::json& witness) {
  if (c == "markov-cg") {
    const bool augment = witness.is_object() ? witness.value("augment", true) : true;
    return markovCg(cgWitness(witness), sc.halting, augment);
  }
  if (c == "torsion-cg") return torsionCg(sc.set);
  if (c == "divisible-cg") return divisibleCg(sc.set);
  if (c == "nilpotent-cg") return nilpotentCg(sc.set);
  if (c == "solvable-cg") return solvableCg(sc.set);
  if (c == "biorder-cg") return biorderCg(sc.halting);
  throw InvalidArgument("unknown diagram construction '" + c + "'");
}

std::unique_ptr<GroupModel> GroupHandle::model() const {
  if (diagram) return std::make_unique<ValueModel>(diagram);
  return std::make_unique<PresentationModel>(*presentation, stage, sampleLength, alphabet);
}

GroupHandle loadGroup(const nlohmann::json& j, const std::string& baseDir) {
  if (!j.is_object()) throw InvalidArgument("group: expected a JSON object");
  GroupHandle h;
  try {
    if (j.contains("stage") && (!j.at("stage").is_number_integer() || j.at("stage").get<long long>() <= 0))
      throw InvalidArgument("group: stage must be a positive integer");
    h.stage = j.value("stage", defaultStageBudget());
    h.sampleLength = j.value("sample_length", std::size_t{3});
    h.alphabet = j.value("alphabet", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("group: ") + e.what());
  }
  if (j.contains("diagram")) {
    h.diagram = builtinDiagram(j.at("diagram").get<std::string>());
    h.description = h.diagram->name();
    return h;
  }
  if (j.contains("presentation")) {
    h.presentation = RecursivePresentation::fromJson(j.at("presentation"));
    h.description = h.presentation->name();
    return h;
  }
  if (!j.contains("construction")) throw InvalidArgument("group: needs 'diagram', 'presentation' or 'construction'");
  const auto name = j.at("construction").get<std::string>();
  Scenario sc;
  if (j.contains("scenario")) sc = Scenario::fromJson(j.at("scenario"));
  else if (j.contains("scenario_file")) {
    std::filesystem::path p = j.at("scenario_file").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(baseDir) / p;
    sc = Scenario::load(p.string());
  }
  h.scenario = sc;
  const nlohmann::json witness = j.contains("witness") ? j.at("witness") : nlohmann::json();
  if (isDiagramConstruction(name)) h.diagram = buildDiagram(name, sc, witness);
  else h.presentation = buildPresentation(name, sc, witness);
  h.description = name;
  return h;
}

GroupHandle loadGroupFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open group file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("group file '" + path + "': " + e.what());
  }
  return loadGroup(j, std::filesystem::path(path).parent_path().string());
}

Value evaluateWord(GroupModel& g, const Word& w) {
  if (dynamic_cast<PresentationModel*>(&g)) return PresentationModel::encode(w);
  const auto gens = g.generators();
  Value out = g.identity();
  for (auto l : w.letters()) {
    const auto& gen = generatorOf(generatorOfLetter(l));
    std::size_t i = 0;
    if (gen.index.empty() && gen.family.size() == 1 && gen.family[0] >= 'a' && gen.family[0] <= 'z' && gen.family != "g")
      i = static_cast<std::size_t>(gen.family[0] - 'a');
    else if (gen.family == "g" && gen.index.size() == 1)
      i = gen.index[0];
    else
      throw InvalidArgument("diagram generators are a, b, c, ... or g_i; got " + gen.str());
    if (i >= gens.size()) throw InvalidArgument("generator " + gen.str() + " out of range for " + g.describe());
    out = g.multiply(out, l > 0 ? gens[i] : g.inverse(gens[i]));
  }
  return out;
}

nlohmann::json snapshot(const GroupHandle& h, std::size_t codes) {
  if (!h.diagram) return h.presentation->toJson(h.stage);
  auto& d = *h.diagram;
  auto values = nlohmann::json::array();
  AtomicDiagram::Code n = 0;
  for (; n < codes; ++n) {
    try {
      values.push_back(d.showValue(d.valueOf(n)));
    } catch (const BudgetExceeded&) {
      break;
    }
  }
  const Natural stage = n ? d.stageOfCode(n - 1) : 0;
  auto triples = nlohmann::json::array();
  for (const auto& t : d.triplesAt(stage, n)) triples.push_back({t.a, t.b, t.c});
  return {{"name", d.name()}, {"stage", stage}, {"values", values}, {"triples", triples}};
}

std::string fingerprint(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace grouplab
