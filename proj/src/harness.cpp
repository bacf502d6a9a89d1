#include "grouplab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "grouplab/equal_powers.hpp"
#include "grouplab/error.hpp"
#include "grouplab/orders.hpp"

namespace grouplab {

namespace {

template <class T>
T param(const nlohmann::json& p, const char* key, T fallback) {
  if (!p.contains(key)) return fallback;
  try {
    return p.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("check parameter '") + key + "': " + e.what());
  }
}

template <class T>
T required(const nlohmann::json& p, const char* key, const std::string& check) {
  if (!p.contains(key)) throw InvalidArgument("check '" + check + "' needs parameter '" + key + "'");
  return param<T>(p, key, T{});
}

PresentationModel& asPresentation(GroupModel& m, const std::string& check) {
  auto* pm = dynamic_cast<PresentationModel*>(&m);
  if (!pm) throw InvalidArgument("check '" + check + "' needs a presentation");
  return *pm;
}

WordDecider deciderNamed(const std::string& name) {
  if (name == "free") return [](const Word& w) -> std::optional<bool> { return w.empty(); };
  if (name == "constant:0") return [](const Word&) -> std::optional<bool> { return false; };
  if (name == "constant:1") return [](const Word&) -> std::optional<bool> { return true; };
  if (name.rfind("equal-powers:", 0) == 0) {
    const auto nf = std::make_shared<EqualPowersNormalForm>(static_cast<unsigned>(std::stoul(name.substr(13))));
    return [nf](const Word& w) -> std::optional<bool> { return nf->isIdentity(w); };
  }
  throw InvalidArgument("unknown decider '" + name + "' (free, constant:0, constant:1, equal-powers:N)");
}

std::vector<GeneratorId> wordAlphabet(GroupModel& m) {
  if (auto* pm = dynamic_cast<PresentationModel*>(&m)) return pm->alphabet();
  std::vector<GeneratorId> out;
  const auto n = m.generators().size();
  for (std::size_t i = 0; i < n && i < 26; ++i) out.push_back(intern(std::string(1, static_cast<char>('a' + i))));
  return out;
}

Verdict olfCheck(GroupModel& m, const nlohmann::json& p) {
  Verdict v;
  v.check = "olf";
  const auto depth = param<std::size_t>(p, "depth", 6);
  const auto mode = parseOrderMode(param<std::string>(p, "mode", "left"));
  v.bound = {{"depth", depth}, {"mode", param<std::string>(p, "mode", "left")}};
  std::vector<Value> tuple;
  std::vector<std::string> shown;
  if (p.contains("elements")) {
    for (const auto& w : parseWordList(p.at("elements").get<std::string>())) {
      tuple.push_back(evaluateWord(m, w));
      shown.push_back(w.str());
    }
  } else {
    // search tuples of short words for an obstruction
    const auto len = required<std::size_t>(p, "search_length", "olf");
    const auto maxTuple = param<std::size_t>(p, "tuple", 1);
    v.bound["search_length"] = len;
    v.bound["tuple"] = maxTuple;
    std::vector<Value> cands;
    std::vector<std::string> names;
    for (const auto& w : wordsUpTo(wordAlphabet(m), len)) {
      cands.push_back(evaluateWord(m, w));
      names.push_back(w.str());
    }
    const auto found = findOlfObstruction(m, cands, maxTuple, depth, mode);
    if (!found) return v;
    tuple = *found;
    for (const auto& x : tuple) {
      auto it = std::find(cands.begin(), cands.end(), x);
      shown.push_back(names[static_cast<std::size_t>(it - cands.begin())]);
    }
  }
  const auto r = olfRefute(m, tuple, depth, mode);
  v.status = r.refuted ? Status::refuted : Status::unknown;
  v.evidence = r.toJson(m);
  v.evidence["elements"] = shown;
  return v;
}

}  // namespace

Verdict runCheck(const GroupHandle& group, const std::string& check, const nlohmann::json& p) {
  auto model = group.model();
  GroupModel& m = *model;
  const std::size_t sampleDefault = group.isDiagram() ? defaultCodeBudget() : 20;
  if (check == "abelian") return checkAbelian(m, param(p, "bound", sampleDefault));
  if (check == "torsion") return findTorsion(m, param(p, "bound", sampleDefault));
  if (check == "torsion-all")
    return checkTorsionUpTo(m, param(p, "bound", sampleDefault), param<std::size_t>(p, "exponent", 1000));
  if (check == "trivial") return checkTrivialUpTo(m, param<std::size_t>(p, "generators", 8));
  if (check == "divisible") {
    if (!group.isDiagram()) throw InvalidArgument("check 'divisible' needs a diagram");
    return checkDivisibleUpTo(*group.diagram, param<std::size_t>(p, "n_max", 5), param<std::size_t>(p, "codes", 10),
                              param<std::size_t>(p, "search_codes", 10000));
  }
  if (check == "nilpotent")
    return checkNilpotentUpTo(m, required<std::size_t>(p, "n", check), param(p, "bound", sampleDefault),
                              param<std::size_t>(p, "eval_cap", 2000000));
  if (check == "solvable")
    return checkSolvableUpTo(m, required<std::size_t>(p, "n", check), param(p, "bound", sampleDefault),
                             param<std::size_t>(p, "eval_cap", 2000000));
  if (check == "finite")
    return checkFiniteUpTo(asPresentation(m, check), required<std::size_t>(p, "n", check),
                           param<std::size_t>(p, "word_length", 2));
  if (check == "wordproblem")
    return auditWordProblemDecider(asPresentation(m, check), deciderNamed(required<std::string>(p, "decider", check)),
                                   param<std::size_t>(p, "word_length", 4));
  if (check == "cyclic") {
    const auto bound = param(p, "bound", sampleDefault);
    return checkCyclicUpTo(m, bound, param(p, "exponent", bound));
  }
  if (check == "olf") return olfCheck(m, p);
  throw InvalidArgument("unknown check '" + check + "'");
}

ExperimentSpec ExperimentSpec::fromJson(const nlohmann::json& j, const std::string& baseDir) {
  if (!j.is_object()) throw InvalidArgument("experiment: expected a JSON object");
  ExperimentSpec s;
  s.baseDir = baseDir;
  try {
    s.name = j.value("name", std::string("experiment"));
    if (!j.contains("group")) throw InvalidArgument("experiment '" + s.name + "': missing 'group'");
    s.group = j.at("group");
    if (j.contains("codes")) {
      const auto c = j.at("codes").get<long long>();
      if (c <= 0) throw InvalidArgument("experiment '" + s.name + "': codes must be positive");
      s.codes = static_cast<std::size_t>(c);
    }
    if (s.group.contains("stage") && s.group.at("stage").get<long long>() <= 0)
      throw InvalidArgument("experiment '" + s.name + "': stage budget must be positive");
    for (const auto& c : j.value("checks", nlohmann::json::array())) {
      CheckSpec cs;
      cs.name = c.at("check").get<std::string>();
      const auto names = checkNames();
      if (std::find(names.begin(), names.end(), cs.name) == names.end())
        throw InvalidArgument("experiment '" + s.name + "': unknown check '" + cs.name + "'");
      cs.params = c;
      if (c.contains("expect")) cs.expected = parseStatus(c.at("expect").get<std::string>());
      if (c.contains("expect_by_class"))
        for (const auto& [tag, st] : c.at("expect_by_class").items()) cs.expectedByClass[tag] = parseStatus(st.get<std::string>());
      s.checks.push_back(std::move(cs));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("experiment: " + std::string(e.what()));
  }
  return s;
}

ExperimentSpec ExperimentSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open experiment file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("experiment file '" + path + "': " + e.what());
  }
  auto s = fromJson(j, std::filesystem::path(path).parent_path().string());
  if (!j.contains("name")) s.name = std::filesystem::path(path).stem().string();
  return s;
}

bool Report::ok() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const CheckOutcome& o) { return o.matches(); });
}

nlohmann::json Report::toJson(bool withTiming) const {
  nlohmann::json j{{"name", name}, {"construction", construction}, {"fingerprint", fingerprint}, {"ok", ok()}};
  auto& vs = j["verdicts"] = nlohmann::json::array();
  for (const auto& o : outcomes) {
    auto v = o.verdict.toJson();
    v["expected"] = o.expected ? nlohmann::json(to_string(*o.expected)) : nlohmann::json();
    v["match"] = o.matches();
    vs.push_back(std::move(v));
  }
  if (withTiming) j["millis"] = millis;
  return j;
}

Report runExperiment(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  const GroupHandle group = loadGroup(spec.group, spec.baseDir);
  Report r;
  r.name = spec.name;
  r.construction = group.description;
  const std::size_t codes = spec.codes ? spec.codes : defaultCodeBudget();
  r.fingerprint = fingerprint(snapshot(group, codes).dump());
  const std::string& tag = group.scenario.set.classTag();
  for (const auto& c : spec.checks) {
    CheckOutcome o;
    o.verdict = runCheck(group, c.name, c.params);
    o.expected = c.expected;
    if (auto it = c.expectedByClass.find(tag); !o.expected && it != c.expectedByClass.end()) o.expected = it->second;
    r.outcomes.push_back(std::move(o));
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool SuiteResult::ok() const {
  return errors.empty() && std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.ok(); });
}

nlohmann::json SuiteResult::summary() const {
  auto failed = nlohmann::json::array();
  for (const auto& r : reports)
    if (!r.ok()) failed.push_back(r.name);
  auto errs = nlohmann::json::array();
  for (const auto& [file, msg] : errors) errs.push_back({{"file", file}, {"error", msg}});
  return {{"specs", reports.size() + errors.size()}, {"passed", reports.size() - failed.size()},
          {"failed", failed}, {"errors", errs}, {"ok", ok()}};
}

SuiteResult runSuite(const std::string& dir) {
  namespace fs = std::filesystem;
  SuiteResult out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InvalidArgument("suite: '" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      out.reports.push_back(runExperiment(ExperimentSpec::load(f.string())));
    } catch (const std::exception& e) {
      out.errors.push_back({f.filename().string(), e.what()});
    }
  }
  return out;
}

}  // namespace grouplab
