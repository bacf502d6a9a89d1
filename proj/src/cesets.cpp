#include "grouplab/cesets.hpp"

#include <algorithm>
#include <fstream>

#include "grouplab/error.hpp"

namespace grouplab {

StagedCeSet StagedCeSet::empty() { return StagedCeSet(Kind::Empty); }
StagedCeSet StagedCeSet::all() { return StagedCeSet(Kind::All); }
StagedCeSet StagedCeSet::evens() { return StagedCeSet(Kind::Evens); }

StagedCeSet StagedCeSet::finite(std::vector<Natural> elements) {
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw InvalidArgument("finite set scenario: duplicate element");
  StagedCeSet s(Kind::Finite);
  s.elements_ = std::move(elements);
  return s;
}

StagedCeSet StagedCeSet::cofinite(std::vector<Natural> complement) {
  std::sort(complement.begin(), complement.end());
  complement.erase(std::unique(complement.begin(), complement.end()), complement.end());
  StagedCeSet s(Kind::Cofinite);
  s.elements_ = std::move(complement);
  return s;
}

StagedCeSet StagedCeSet::explicitSchedule(std::vector<std::pair<Natural, Natural>> schedule) {
  std::set<Natural> seen;
  Natural last = 0;
  for (const auto& [stage, element] : schedule) {
    if (stage <= last)
      throw InvalidArgument("explicit schedule: stages must be >= 1 and strictly increasing "
                            "(at most one element per stage)");
    if (!seen.insert(element).second) throw InvalidArgument("explicit schedule: element repeated");
    last = stage;
  }
  StagedCeSet s(Kind::Explicit);
  s.schedule_ = std::move(schedule);
  return s;
}

std::optional<Natural> StagedCeSet::nth(Natural k) const {
  if (k == 0) return std::nullopt;
  switch (kind_) {
    case Kind::Empty:
    case Kind::Explicit:
      return std::nullopt;
    case Kind::All:
      return k - 1;
    case Kind::Evens:
      return 2 * (k - 1);
    case Kind::Finite:
      if (k > elements_.size()) return std::nullopt;
      return elements_[k - 1];
    case Kind::Cofinite: {
      // k-th natural not in the sorted complement
      Natural candidate = k - 1;
      for (Natural c : elements_) {
        if (c <= candidate)
          ++candidate;
        else
          break;
      }
      return candidate;
    }
  }
  return std::nullopt;
}

std::optional<Natural> StagedCeSet::newElement(Natural s) const {
  if (s == 0) return std::nullopt;
  if (kind_ == Kind::Explicit) {
    for (const auto& [stage, element] : schedule_)
      if (stage == s) return element;
    return std::nullopt;
  }
  return nth(s);
}

std::size_t StagedCeSet::sizeAtStage(Natural s) const {
  switch (kind_) {
    case Kind::Empty:
      return 0;
    case Kind::All:
    case Kind::Evens:
    case Kind::Cofinite:
      return static_cast<std::size_t>(s);
    case Kind::Finite:
      return static_cast<std::size_t>(std::min<Natural>(s, elements_.size()));
    case Kind::Explicit:
      return static_cast<std::size_t>(std::count_if(
          schedule_.begin(), schedule_.end(), [s](const auto& p) { return p.first <= s; }));
  }
  return 0;
}

std::set<Natural> StagedCeSet::atStage(Natural s) const {
  std::set<Natural> out;
  if (kind_ == Kind::Explicit) {
    for (const auto& [stage, element] : schedule_)
      if (stage <= s) out.insert(element);
    return out;
  }
  const auto n = sizeAtStage(s);
  for (Natural k = 1; k <= n; ++k) out.insert(*nth(k));
  return out;
}

bool StagedCeSet::isFinite() const {
  return kind_ == Kind::Empty || kind_ == Kind::Finite || kind_ == Kind::Explicit;
}

std::optional<Natural> StagedCeSet::lastEventStage() const {
  switch (kind_) {
    case Kind::Empty:
      return Natural{0};
    case Kind::Finite:
      return Natural{elements_.size()};
    case Kind::Explicit:
      return schedule_.empty() ? Natural{0} : schedule_.back().first;
    default:
      return std::nullopt;
  }
}

nlohmann::json StagedCeSet::toJson() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::Empty:
      j["kind"] = "empty";
      break;
    case Kind::All:
      j["kind"] = "all";
      break;
    case Kind::Evens:
      j["kind"] = "evens";
      break;
    case Kind::Finite:
      j["kind"] = "finite";
      j["elements"] = elements_;
      break;
    case Kind::Cofinite:
      j["kind"] = "cofinite";
      j["complement"] = elements_;
      break;
    case Kind::Explicit: {
      j["kind"] = "explicit";
      auto arr = nlohmann::json::array();
      for (const auto& [stage, element] : schedule_) arr.push_back({stage, element});
      j["schedule"] = arr;
      break;
    }
  }
  if (!classTag_.empty()) j["class"] = classTag_;
  return j;
}

StagedCeSet StagedCeSet::fromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InvalidArgument("set scenario: missing 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  StagedCeSet out = StagedCeSet::empty();
  try {
    if (kind == "empty")
      out = empty();
    else if (kind == "all")
      out = all();
    else if (kind == "evens")
      out = evens();
    else if (kind == "finite")
      out = finite(j.at("elements").get<std::vector<Natural>>());
    else if (kind == "cofinite")
      out = cofinite(j.at("complement").get<std::vector<Natural>>());
    else if (kind == "explicit")
      out = explicitSchedule(j.at("schedule").get<std::vector<std::pair<Natural, Natural>>>());
    else
      throw InvalidArgument("set scenario: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("set scenario: ") + e.what());
  }
  if (j.contains("class")) out.withClassTag(j.at("class").get<std::string>());
  return out;
}

HaltingScenario HaltingScenario::haltsAt(Natural stage) {
  if (stage < 1) throw InvalidArgument("halting scenario: stage must be >= 1");
  return HaltingScenario(stage);
}

nlohmann::json HaltingScenario::toJson() const {
  if (!stage_) return {{"kind", "never"}};
  return {{"kind", "at"}, {"stage", *stage_}};
}

HaltingScenario HaltingScenario::fromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InvalidArgument("halting scenario: missing 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "never") return never();
  if (kind == "at") {
    if (!j.contains("stage")) throw InvalidArgument("halting scenario: missing 'stage'");
    return haltsAt(j.at("stage").get<Natural>());
  }
  throw InvalidArgument("halting scenario: unknown kind '" + kind + "'");
}

nlohmann::json Scenario::toJson() const { return {{"set", set.toJson()}, {"halting", halting.toJson()}}; }

Scenario Scenario::fromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("scenario: expected a JSON object");
  Scenario s;
  if (j.contains("set")) s.set = StagedCeSet::fromJson(j.at("set"));
  if (j.contains("halting")) s.halting = HaltingScenario::fromJson(j.at("halting"));
  return s;
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open scenario file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("scenario file '" + path + "': " + e.what());
  }
  return fromJson(j);
}

}  // namespace grouplab
