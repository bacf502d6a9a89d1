#pragma once

#include <memory>
#include <optional>
#include <string>

#include "grouplab/cesets.hpp"
#include "grouplab/diagrams.hpp"
#include "grouplab/presentations.hpp"
#include "json.hpp"

namespace grouplab {

/// A group described by JSON, resolved to a presentation or a diagram.
///
/// Accepted layouts:
///   {"diagram": "cyclic:6"}
///   {"presentation": {...}, "stage": S}
///   {"construction": "markov-rp", "scenario": {...}, "witness": "torsion-free", "stage": S}
/// Presentations also take "sample_length" and "alphabet" (sampling over the
/// first k generators). A "scenario_file" path may replace "scenario".
struct GroupHandle {
  std::string description;
  std::optional<RecursivePresentation> presentation;
  DiagramPtr diagram;
  Natural stage = 0;
  std::size_t sampleLength = 3;
  std::size_t alphabet = 0;
  Scenario scenario;

  bool isDiagram() const { return diagram != nullptr; }
  std::unique_ptr<GroupModel> model() const;
};

/// Default stage for presentations and code budget for diagrams; the
/// GROUPLAB_BUDGET environment variable overrides both.
Natural defaultStageBudget();
std::size_t defaultCodeBudget();

RecursivePresentation buildPresentation(const std::string& construction, const Scenario& scenario,
                                        const nlohmann::json& witness = nullptr);
DiagramPtr buildDiagram(const std::string& construction, const Scenario& scenario,
                        const nlohmann::json& witness = nullptr);

/// Throws InvalidArgument on malformed input, unknown names or stage 0 budgets.
GroupHandle loadGroup(const nlohmann::json& j, const std::string& baseDir = ".");
GroupHandle loadGroupFile(const std::string& path);

/// Evaluates a word in a model. Presentation models read the word as is;
/// diagram generators are named a, b, c, ... (or g_0, g_1, ...) in the order
/// of the diagram's generator list.
Value evaluateWord(GroupModel& g, const Word& w);

/// Stable snapshot of the first stages: the presentation at its stage, or
/// the values and stage triples of codes below `codes`.
nlohmann::json snapshot(const GroupHandle& h, std::size_t codes);
/// 64-bit FNV-1a of s, as 16 hex digits.
std::string fingerprint(const std::string& s);

}  // namespace grouplab
