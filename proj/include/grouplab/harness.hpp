#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grouplab/checkers.hpp"
#include "grouplab/group_spec.hpp"
#include "json.hpp"

namespace grouplab {

struct CheckSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  std::optional<Status> expected;
  /// Expected status keyed by the scenario's class tag (FIN, INF, ...).
  std::map<std::string, Status> expectedByClass;
};

/// {"name": ..., "group": {...}, "codes": N, "checks": [{"check": ..., "expect": ..., ...}]}
struct ExperimentSpec {
  std::string name;
  nlohmann::json group;
  std::size_t codes = 0;  // 0: default code budget
  std::vector<CheckSpec> checks;
  std::string baseDir = ".";

  static ExperimentSpec fromJson(const nlohmann::json& j, const std::string& baseDir = ".");
  static ExperimentSpec load(const std::string& path);
};

struct CheckOutcome {
  Verdict verdict;
  std::optional<Status> expected;
  bool matches() const { return !expected || verdict.status == *expected; }
};

struct Report {
  std::string name;
  std::string construction;
  std::string fingerprint;
  std::vector<CheckOutcome> outcomes;
  double millis = 0;

  bool ok() const;
  /// Everything except timing, serialized deterministically.
  nlohmann::json toJson(bool withTiming = true) const;
};

/// Runs one named check with JSON parameters. Throws InvalidArgument on
/// unknown names or parameters the group cannot support.
Verdict runCheck(const GroupHandle& group, const std::string& check, const nlohmann::json& params);

Report runExperiment(const ExperimentSpec& spec);

struct SuiteResult {
  std::vector<Report> reports;
  std::vector<std::pair<std::string, std::string>> errors;  // file, message

  bool ok() const;
  nlohmann::json summary() const;
};

/// Runs every *.json spec in the directory, in file-name order.
SuiteResult runSuite(const std::string& dir);

}  // namespace grouplab
