#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "weave/dialog.hpp"

namespace weave {

/// One user turn: the set of solicitations answered together, plus optional
/// opaque response values. Only the names take part in staging.
struct Utterance {
  NameSet answers;
  std::map<std::string, std::string> payloads;

  Utterance() = default;
  explicit Utterance(NameSet names) : answers(std::move(names)) {}
  Utterance(std::initializer_list<std::string> names) : answers(names) {}

  static Utterance single(std::string name) { return Utterance(NameSet{std::move(name)}); }

  bool is_single() const noexcept { return answers.size() == 1; }
  const std::string& only() const { return *answers.begin(); }

  Utterance names_only() const { return Utterance(answers); }

  friend bool operator==(const Utterance&, const Utterance&) = default;
  friend auto operator<=>(const Utterance&, const Utterance&) = default;
};

/// A complete path through a dialog.
struct Episode {
  std::vector<Utterance> turns;

  Episode() = default;
  explicit Episode(std::vector<Utterance> t) : turns(std::move(t)) {}

  Episode names_only() const {
    Episode e;
    e.turns.reserve(turns.size());
    for (const Utterance& u : turns) e.turns.push_back(u.names_only());
    return e;
  }

  /// Multiset union of all answered names; duplicates reported by `has_duplicates`.
  std::vector<std::string> all_names() const {
    std::vector<std::string> out;
    for (const Utterance& u : turns) out.insert(out.end(), u.answers.begin(), u.answers.end());
    return out;
  }

  bool has_duplicates() const {
    NameSet seen;
    for (const Utterance& u : turns) {
      for (const std::string& n : u.answers) {
        if (!seen.insert(n).second) return true;
      }
    }
    return false;
  }

  friend bool operator==(const Episode&, const Episode&) = default;
  friend auto operator<=>(const Episode&, const Episode&) = default;
};

/// An enumerated specification: a set of episodes over a universe of names.
struct EnumeratedSpec {
  std::set<Episode> episodes;
  NameSet universe;

  std::size_t size() const noexcept { return episodes.size(); }
  bool contains(const Episode& e) const { return episodes.count(e.names_only()) > 0; }

  void insert(const Episode& e) {
    Episode bare = e.names_only();
    for (const Utterance& u : bare.turns) universe.insert(u.answers.begin(), u.answers.end());
    episodes.insert(std::move(bare));
  }

  friend bool operator==(const EnumeratedSpec& a, const EnumeratedSpec& b) { return a.episodes == b.episodes; }
};

inline EnumeratedSpec spec_union(const EnumeratedSpec& a, const EnumeratedSpec& b) {
  EnumeratedSpec out = a;
  out.episodes.insert(b.episodes.begin(), b.episodes.end());
  out.universe.insert(b.universe.begin(), b.universe.end());
  return out;
}

}  // namespace weave
