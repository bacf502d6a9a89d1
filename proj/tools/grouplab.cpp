#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "grouplab/error.hpp"
#include "grouplab/group_spec.hpp"
#include "grouplab/harness.hpp"
#include "grouplab/orders.hpp"
#include "grouplab/reductions.hpp"

using namespace grouplab;

namespace {

nlohmann::json readJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("'" + path + "': " + e.what());
  }
  return j;
}

void emit(const nlohmann::json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump() << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw InvalidArgument("cannot write '" + out + "'");
  f << j.dump(2) << '\n';
}

// key=value with value read as JSON when it parses, else as a string
void addSetting(nlohmann::json& params, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw InvalidArgument("--set expects key=value, got '" + kv + "'");
  const std::string value = kv.substr(eq + 1);
  auto parsed = nlohmann::json::parse(value, nullptr, false);
  params[kv.substr(0, eq)] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grouplab: recursive presentations, computable diagrams, reductions and bounded checkers"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "Run a reduction under a scenario and write a group file");
  std::string cName, cScenario, cOut, cWitness;
  long long cStage = -1, cCodes = -1;
  construct->add_option("name", cName, "Construction name")->required()->check(CLI::IsMember(constructionNames()));
  construct->add_option("--scenario", cScenario, "Scenario JSON file")->check(CLI::ExistingFile);
  construct->add_option("--stage", cStage, "Stage of the presentation snapshot");
  construct->add_option("--codes", cCodes, "Codes in the diagram snapshot");
  construct->add_option("--witness", cWitness, "Markov witness: property name or JSON object");
  construct->add_option("--out", cOut, "Output file (stdout when absent)");

  // check
  auto* check = app.add_subcommand("check", "Evaluate a characterizing formula to a bound");
  std::string kProperty, kGroup;
  long long kBound = -1, kClass = -1;
  std::vector<std::string> kSettings;
  check->add_option("property", kProperty, "Check name")->required()->check(CLI::IsMember(checkNames()));
  check->add_option("--group", kGroup, "Group JSON file")->required()->check(CLI::ExistingFile);
  check->add_option("--bound", kBound, "Sample bound");
  check->add_option("--class", kClass, "Tuple length (nilpotent), depth (solvable) or representatives (finite)");
  check->add_option("--set", kSettings, "Extra check parameter key=value");

  // order
  auto* order = app.add_subcommand("order", "Magnus order and OLF refutation");
  order->require_subcommand(1);
  auto* compare = order->add_subcommand("compare", "Compare two words of F2 in the Magnus order");
  std::string oW, oV;
  long long oDegree = -1;
  compare->add_option("w", oW)->required();
  compare->add_option("v", oV)->required();
  compare->add_option("--degree", oDegree, "Truncation degree (default |w| + |v|)");
  auto* expand = order->add_subcommand("expand", "Truncated Magnus expansion of a word");
  std::string eW;
  long long eDegree = 4;
  expand->add_option("w", eW)->required();
  expand->add_option("--degree", eDegree);
  auto* refute = order->add_subcommand("refute", "Try to refute orderability with a tuple");
  std::string rGroup, rElements, rMode = "left";
  long long rDepth = 6;
  refute->add_option("--group", rGroup)->required()->check(CLI::ExistingFile);
  refute->add_option("--elements", rElements, "Comma-separated words")->required();
  refute->add_option("--mode", rMode)->check(CLI::IsMember({"left", "bi"}));
  refute->add_option("--depth", rDepth);

  // present / diagram
  auto* present = app.add_subcommand("present", "Presentation snapshots");
  present->require_subcommand(1);
  auto* show = present->add_subcommand("show", "Print a presentation at a stage");
  std::string pGroup;
  long long pStage = -1;
  show->add_option("--group", pGroup)->required()->check(CLI::ExistingFile);
  show->add_option("--stage", pStage);
  auto* diagram = app.add_subcommand("diagram", "Atomic diagrams");
  diagram->require_subcommand(1);
  auto* dump = diagram->add_subcommand("dump", "Emit the triples (a,b,c) with a, b < N as JSON lines");
  std::string dBuiltin, dGroup;
  long long dCodes = 10;
  dump->add_option("builtin", dBuiltin, "cyclic:N, integers, wreath:P, rationals, free2, equal-powers:N");
  dump->add_option("--group", dGroup, "Group JSON file instead of a builtin")->check(CLI::ExistingFile);
  dump->add_option("--codes", dCodes);

  // run / suite
  auto* run = app.add_subcommand("run", "Run one experiment spec");
  std::string xSpec;
  run->add_option("spec", xSpec)->required()->check(CLI::ExistingFile);
  auto* suite = app.add_subcommand("suite", "Run every spec in a directory");
  std::string sDir;
  suite->add_option("dir", sDir)->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct) {
      nlohmann::json g{{"construction", cName}};
      g["scenario"] = cScenario.empty() ? nlohmann::json::object() : readJson(cScenario);
      if (!cWitness.empty()) {
        auto parsed = nlohmann::json::parse(cWitness, nullptr, false);
        g["witness"] = parsed.is_discarded() ? nlohmann::json(cWitness) : parsed;
      }
      if (cStage == 0 || cCodes == 0) throw InvalidArgument("budgets must be positive");
      g["stage"] = cStage > 0 ? static_cast<Natural>(cStage) : defaultStageBudget();
      const std::size_t codes = cCodes > 0 ? static_cast<std::size_t>(cCodes) : defaultCodeBudget();
      const auto h = loadGroup(g);
      g["snapshot"] = snapshot(h, codes);
      emit(g, cOut);
    } else if (*check) {
      nlohmann::json params = nlohmann::json::object();
      for (const auto& kv : kSettings) addSetting(params, kv);
      if (kBound >= 0) params["bound"] = kBound;
      if (kClass >= 0) params["n"] = kClass;
      const auto v = runCheck(loadGroupFile(kGroup), kProperty, params);
      std::cout << v.toJson().dump() << '\n';
    } else if (*compare) {
      const Word w = parseWord(oW), v = parseWord(oV);
      const std::size_t d = oDegree > 0 ? static_cast<std::size_t>(oDegree) : std::max<std::size_t>(1, w.size() + v.size());
      std::cout << nlohmann::json{{"w", w.str()}, {"v", v.str()}, {"degree", d}, {"comparison", to_string(magnusCompare(w, v, d))}}.dump()
                << '\n';
    } else if (*expand) {
      if (eDegree <= 0) throw InvalidArgument("degree must be positive");
      std::cout << magnusExpand(parseWord(eW), static_cast<std::size_t>(eDegree)).str() << '\n';
    } else if (*refute) {
      const auto h = loadGroupFile(rGroup);
      auto m = h.model();
      std::vector<Value> tuple;
      for (const auto& w : parseWordList(rElements)) tuple.push_back(evaluateWord(*m, w));
      const auto r = olfRefute(*m, tuple, static_cast<std::size_t>(std::max(0LL, rDepth)), parseOrderMode(rMode));
      std::cout << r.toJson(*m).dump() << '\n';
    } else if (*show) {
      auto h = loadGroupFile(pGroup);
      if (!h.presentation) throw InvalidArgument("'" + pGroup + "' describes a diagram, not a presentation");
      if (pStage >= 0) h.stage = static_cast<Natural>(pStage);
      std::cout << h.presentation->toJson(h.stage).dump(2) << '\n';
    } else if (*dump) {
      DiagramPtr d;
      if (!dGroup.empty()) {
        d = loadGroupFile(dGroup).diagram;
        if (!d) throw InvalidArgument("'" + dGroup + "' describes a presentation, not a diagram");
      } else if (!dBuiltin.empty()) {
        d = builtinDiagram(dBuiltin);
      } else {
        throw InvalidArgument("diagram dump needs a builtin name or --group");
      }
      std::size_t n = 0;
      for (; n < static_cast<std::size_t>(std::max(0LL, dCodes)); ++n) {
        try {
          d->valueOf(n);
        } catch (const BudgetExceeded&) {
          break;
        }
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) std::cout << nlohmann::json::array({a, b, d->mul(a, b)}).dump() << '\n';
    } else if (*run) {
      const auto r = runExperiment(ExperimentSpec::load(xSpec));
      std::cout << r.toJson().dump() << '\n';
      return r.ok() ? 0 : 1;
    } else if (*suite) {
      const auto s = runSuite(sDir);
      for (const auto& r : s.reports) std::cout << r.toJson().dump() << '\n';
      std::cout << s.summary().dump() << '\n';
      if (!s.ok()) {
        for (const auto& r : s.reports)
          if (!r.ok()) std::cerr << "failed: " << r.name << '\n';
        for (const auto& [f, e] : s.errors) std::cerr << "error: " << f << ": " << e << '\n';
      }
      return s.ok() ? 0 : 1;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
