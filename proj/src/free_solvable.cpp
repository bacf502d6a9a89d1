#include "grouplab/free_solvable.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

#include "grouplab/error.hpp"

namespace grouplab {

struct FreeSolvable::Tables {
  std::mutex mutex;
  // level k (index k-1): snapshot -> id
  std::vector<std::unordered_map<Value, std::uint64_t, ValueHash>> ids;
};

FreeSolvable::FreeSolvable(unsigned n)
    : n_(n), a_(intern("a")), b_(intern("b")), tables_(std::make_shared<Tables>()) {
  tables_->ids.resize(n);
}

namespace {

using Flow = std::map<std::pair<std::uint64_t, int>, long>;  // (vertex, generator) -> net traversals

Value snapshot(std::uint64_t below, const Flow& flow) {
  Value v;
  v.reserve(2 + 3 * flow.size());
  v.push_back(static_cast<std::int64_t>(below));
  v.push_back(static_cast<std::int64_t>(flow.size()));
  for (const auto& [edge, count] : flow) {
    v.push_back(static_cast<std::int64_t>(edge.first));
    v.push_back(edge.second);
    v.push_back(count);
  }
  return v;
}

}  // namespace

// Ids of the images of all prefixes of w in F2 / F2^(level).
std::vector<std::uint64_t> FreeSolvable::prefixIds(unsigned level, const Word& w) const {
  if (level == 0) return std::vector<std::uint64_t>(w.size() + 1, 0);
  const auto below = prefixIds(level - 1, w);
  auto& table = tables_->ids[level - 1];
  auto idOf = [&](Value v) {
    auto [it, inserted] = table.emplace(std::move(v), table.size());
    return it->second;
  };
  std::vector<std::uint64_t> out;
  out.reserve(w.size() + 1);
  Flow flow;
  out.push_back(idOf(snapshot(below[0], flow)));
  for (std::size_t j = 0; j < w.size(); ++j) {
    const Letter l = w[j];
    const int gen = generatorOfLetter(l) == a_ ? 0 : 1;
    // x^-1 from v walks the x-edge that starts at the next vertex, backwards
    const std::pair<std::uint64_t, int> edge{l > 0 ? below[j] : below[j + 1], gen};
    auto& c = flow[edge];
    c += l > 0 ? 1 : -1;
    if (c == 0) flow.erase(edge);
    out.push_back(idOf(snapshot(below[j + 1], flow)));
  }
  return out;
}

Value FreeSolvable::canonical(const Word& w) const {
  for (auto l : w.letters()) {
    const auto g = generatorOfLetter(l);
    if (g != a_ && g != b_) throw InvalidArgument("free solvable: word uses a generator other than a, b");
  }
  if (n_ == 0) return {};
  std::lock_guard lock(tables_->mutex);
  const auto below = prefixIds(n_ - 1, w);
  Flow flow;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const Letter l = w[j];
    const int gen = generatorOfLetter(l) == a_ ? 0 : 1;
    const std::pair<std::uint64_t, int> edge{l > 0 ? below[j] : below[j + 1], gen};
    auto& c = flow[edge];
    c += l > 0 ? 1 : -1;
    if (c == 0) flow.erase(edge);
  }
  return snapshot(below.back(), flow);
}

Value FreeSolvable::identity() const { return canonical(Word{}); }

}  // namespace grouplab
