#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weave/episodes.hpp"
#include "weave/simplify.hpp"
#include "weave/syntax.hpp"

namespace weave {

struct MineOptions {
  std::size_t cap = kDefaultCap;
  std::size_t max_depth = 2;               // C/SPE' nesting levels in a candidate
  std::size_t candidates_per_episode = 512;
  std::size_t max_candidates = 50000;
};

namespace detail {

/// Prefix tree over the episodes of a spec. A terminal node is the end of
/// exactly one episode, so a set of terminal nodes is a set of episodes.
class EpisodeTrie {
 public:
  explicit EpisodeTrie(const EnumeratedSpec& spec) {
    nodes_.emplace_back();
    for (const Episode& e : spec.episodes) {
      int at = 0;
      for (const Utterance& u : e.turns) {
        auto it = nodes_[at].next.find(u.answers);
        if (it == nodes_[at].next.end()) {
          const int id = static_cast<int>(nodes_.size());
          nodes_[at].next.emplace(u.answers, id);
          nodes_.emplace_back();
          at = id;
        } else {
          at = it->second;
        }
      }
      nodes_[at].terminal = true;
      episodes_.push_back(e);
    }
  }

  std::optional<int> step(int at, const NameSet& u) const {
    auto it = nodes_[at].next.find(u);
    if (it == nodes_[at].next.end()) return std::nullopt;
    return it->second;
  }
  bool terminal(int at) const { return nodes_[at].terminal; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    std::map<NameSet, int> next;
    bool terminal = false;
  };
  std::vector<Node> nodes_;
  std::vector<Episode> episodes_;
};

using NodeSet = std::set<int>;
using Turns = std::vector<NameSet>;

inline std::size_t factorial(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// Ordered set partitions of n items.
inline std::size_t fubini(std::size_t n) {
  std::vector<std::size_t> a(n + 1, 0);
  a[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    std::size_t binom = 1;
    for (std::size_t k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      a[m] += binom * a[m - k];
    }
  }
  return a[n];
}

/// Episode count of an atoms-only mnemonic over n solicitations.
inline std::size_t atoms_only_count(Mnemonic m, std::size_t n) {
  if (n <= 1) return 1;
  switch (normal_form(m)) {
    case Mnemonic::I: return 1;
    case Mnemonic::PEStar: return fubini(n);
    case Mnemonic::PE: return (std::size_t{1} << n) - 2;
    case Mnemonic::SPE: return n;
    case Mnemonic::SPEStar: return 1 + n * atoms_only_count(m, n - 1);
    case Mnemonic::PFA1: return 1;
    case Mnemonic::PFA1Star: return n;
    case Mnemonic::PFAn: return n - 1;
    case Mnemonic::PFAnStar: return std::size_t{1} << (n - 1);
    default: return factorial(n);
  }
}

// Shared across miners; mining one spec touches the same small blocks often.
inline const std::vector<Turns>& atoms_only_extension(const Dialog& b) {
  static std::mutex mu;
  static std::map<Dialog, std::vector<Turns>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(b);
  if (it != cache.end()) return it->second;
  std::vector<Turns> ext;
  for (const Episode& e : enumerate(b, {.cap = 64}).episodes) {
    Turns t;
    for (const Utterance& u : e.turns) t.push_back(u.answers);
    ext.push_back(std::move(t));
  }
  return cache.emplace(b, std::move(ext)).first->second;
}

class Miner {
 public:
  Miner(const EnumeratedSpec& spec, const MineOptions& opt) : spec_(spec), trie_(spec), opt_(opt) {}

  std::vector<Dialog> run() {
    std::vector<Episode> eps(spec_.episodes.begin(), spec_.episodes.end());
    for (const Episode& e : eps) {
      Turns turns;
      for (const Utterance& u : e.turns) turns.push_back(u.answers);
      found_here_ = 0;
      std::vector<Dialog> blocks;
      chain(turns, 0, NodeSet{0}, blocks);
      root_spe_prime(turns);
      fallback(turns);
    }
    return select();
  }

 private:
  // Fitting: every path of the block's extension, from every node in `from`,
  // must stay inside the trie. Returns the nodes reached.
  std::optional<NodeSet> fit(const NodeSet& from, const Dialog& b) {
    if (from.empty()) return std::nullopt;
    if (b.is_atom() || b.size() <= 2) return fit_uncached(from, b);
    auto key = std::make_pair(from, b);
    if (auto it = fit_cache_.find(key); it != fit_cache_.end()) return it->second;
    auto r = fit_uncached(from, b);
    fit_cache_.emplace(std::move(key), r);
    return r;
  }

  std::optional<NodeSet> fit_uncached(const NodeSet& from, const Dialog& b) {
    if (b.is_atom()) {
      NodeSet out;
      for (int n : from) {
        auto s = trie_.step(n, NameSet{b.name()});
        if (!s) return std::nullopt;
        out.insert(*s);
      }
      return out;
    }
    const Mnemonic m = normal_form(b.mnemonic());
    if (m == Mnemonic::C) {
      NodeSet cur = from;
      for (const Dialog& c : b.children()) {
        auto next = fit(cur, c);
        if (!next) return std::nullopt;
        cur = std::move(*next);
      }
      return cur;
    }
    if (m == Mnemonic::SPEPrime) return fit_any_order(from, b.children());
    const auto* ext = extension(b);
    if (!ext) return std::nullopt;
    NodeSet out;
    for (int n : from) {
      for (const Turns& path : *ext) {
        int at = n;
        for (const NameSet& u : path) {
          auto s = trie_.step(at, u);
          if (!s) return std::nullopt;
          at = *s;
        }
        out.insert(at);
      }
    }
    return out;
  }

  // Every order of the children: dynamic programming over the subsets done.
  std::optional<NodeSet> fit_any_order(const NodeSet& from, std::span<const Dialog> kids) {
    const std::size_t k = kids.size();
    if (k > 16) return std::nullopt;
    std::vector<std::optional<NodeSet>> reach(std::size_t{1} << k);
    reach[0] = from;
    for (std::size_t mask = 1; mask < reach.size(); ++mask) {
      NodeSet acc;
      for (std::size_t i = 0; i < k; ++i) {
        if (!(mask & (std::size_t{1} << i))) continue;
        const auto& prev = reach[mask & ~(std::size_t{1} << i)];
        auto next = fit(*prev, kids[i]);
        if (!next) return std::nullopt;
        acc.insert(next->begin(), next->end());
      }
      reach[mask] = std::move(acc);
    }
    return reach.back();
  }

  const std::vector<Turns>* extension(const Dialog& b) {
    const std::size_t n = b.children().size();
    if (atoms_only_count(b.mnemonic(), n) > trie_.size()) return nullptr;
    return &atoms_only_extension(b);
  }

  bool contains_path(const Dialog& b, const Turns& seg) {
    const auto* ext = extension(b);
    return ext && std::find(ext->begin(), ext->end(), seg) != ext->end();
  }

  static Dialog atoms_node(Mnemonic m, const std::vector<std::string>& names) {
    std::vector<Dialog> kids;
    for (const std::string& n : names) kids.push_back(Dialog::atom(n));
    return Dialog::node(m, std::move(kids));
  }

  static Dialog literal(const NameSet& u) {
    if (u.size() == 1) return Dialog::atom(*u.begin());
    return atoms_node(Mnemonic::I, {u.begin(), u.end()});
  }

  // Blocks whose extension contains the given run of turns.
  const std::vector<Dialog>& options(const Turns& seg, bool nested_ok) {
    auto it = options_cache_.find(seg);
    if (it == options_cache_.end()) it = options_cache_.emplace(seg, make_options(seg, nested_ok)).first;
    return it->second;
  }

  std::vector<Dialog> make_options(const Turns& seg, bool nested_ok) {
    std::vector<Dialog> out;
    if (seg.size() == 1) out.push_back(literal(seg[0]));
    std::vector<std::string> sorted;
    std::vector<std::string> in_order;
    for (const NameSet& u : seg) {
      in_order.insert(in_order.end(), u.begin(), u.end());
      sorted.insert(sorted.end(), u.begin(), u.end());
    }
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() >= 2) {
      for (Mnemonic m : {Mnemonic::PEStar, Mnemonic::PE, Mnemonic::SPEStar, Mnemonic::SPE}) {
        Dialog b = atoms_node(m, sorted);
        if (contains_path(b, seg)) out.push_back(b);
      }
      for (Mnemonic m : {Mnemonic::PFA1, Mnemonic::PFA1Star, Mnemonic::PFAn, Mnemonic::PFAnStar}) {
        Dialog b = atoms_node(m, in_order);
        if (contains_path(b, seg)) out.push_back(b);
      }
    }
    if (seg.size() >= 2) {
      if (nested_ok) {
        // SPE' over a split of the run into single-turn parts.
        std::vector<Dialog> parts;
        for (const NameSet& u : seg) parts.push_back(literal(u));
        out.push_back(Dialog::node(Mnemonic::SPEPrime, parts));
      }
    }
    return out;
  }

  void emit(const Dialog& d, const NodeSet& reached) {
    for (int n : reached) {
      if (!trie_.terminal(n)) return;
    }
    if (candidates_.size() >= opt_.max_candidates) return;
    Dialog c = canonical(d);
    if (candidates_.emplace(c, reached).second) ++found_here_;
  }

  bool budget_left() const {
    return found_here_ < opt_.candidates_per_episode && candidates_.size() < opt_.max_candidates;
  }

  // C over consecutive blocks, each generalizing a run of the episode.
  void chain(const Turns& turns, std::size_t i, const NodeSet& at, std::vector<Dialog>& blocks) {
    if (!budget_left()) return;
    if (i == turns.size()) {
      emit(Dialog::node(Mnemonic::C, blocks), at);
      return;
    }
    for (std::size_t j = turns.size(); j > i; --j) {
      const Turns seg(turns.begin() + static_cast<std::ptrdiff_t>(i), turns.begin() + static_cast<std::ptrdiff_t>(j));
      for (const Dialog& b : options(seg, opt_.max_depth >= 2)) {
        auto next = fit(at, b);
        if (!next) continue;
        blocks.push_back(b);
        chain(turns, j, *next, blocks);
        blocks.pop_back();
      }
    }
  }

  // SPE' at the root over a segmentation of the episode into runs; each run
  // is kept literally (a C of its turns).
  void root_spe_prime(const Turns& turns) {
    const std::size_t m = turns.size();
    if (m < 2 || m > 16) return;
    for (std::size_t cuts = 1; cuts < (std::size_t{1} << (m - 1)); ++cuts) {
      if (!budget_left()) return;
      std::vector<Dialog> parts;
      std::vector<Dialog> run;
      bool deep = false;
      for (std::size_t i = 0; i < m; ++i) {
        run.push_back(literal(turns[i]));
        if (i + 1 == m || (cuts & (std::size_t{1} << i))) {
          deep = deep || run.size() > 1;
          parts.push_back(run.size() == 1 ? run[0] : Dialog::node(Mnemonic::C, run));
          run.clear();
        }
      }
      if (deep && opt_.max_depth < 2) continue;
      Dialog d = Dialog::node(Mnemonic::SPEPrime, parts);
      if (auto reached = fit(NodeSet{0}, d)) emit(d, *reached);
    }
  }

  // The episode on its own always fits.
  void fallback(const Turns& turns) {
    std::vector<Dialog> parts;
    for (const NameSet& u : turns) parts.push_back(literal(u));
    Dialog d = Dialog::node(Mnemonic::C, parts);
    if (auto reached = fit(NodeSet{0}, d)) {
      Dialog c = canonical(d);
      candidates_.emplace(c, *reached);
    }
  }

  // Greedy maximum coverage; ties go to the smaller, then the first printed.
  std::vector<Dialog> select() {
    NodeSet covered;
    std::vector<Dialog> out;
    std::size_t goal = 0;
    for (const auto& [d, reached] : candidates_) {
      (void)d;
      for (int n : reached) covered.insert(n);
    }
    goal = covered.size();
    covered.clear();
    std::vector<std::pair<std::string, const std::pair<const Dialog, NodeSet>*>> order;
    for (const auto& kv : candidates_) order.emplace_back(print_expr(kv.first), &kv);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    while (covered.size() < goal) {
      const std::pair<const Dialog, NodeSet>* best = nullptr;
      std::size_t best_gain = 0;
      for (const auto& [text, kv] : order) {
        std::size_t gain = 0;
        for (int n : kv->second) gain += covered.count(n) ? 0 : 1;
        if (gain > best_gain || (gain == best_gain && gain > 0 && kv->first.size() < best->first.size())) {
          best = kv;
          best_gain = gain;
        }
      }
      if (!best) break;
      covered.insert(best->second.begin(), best->second.end());
      out.push_back(best->first);
    }
    return out;
  }

  const EnumeratedSpec& spec_;
  EpisodeTrie trie_;
  MineOptions opt_;
  std::map<Dialog, NodeSet> candidates_;
  std::map<Turns, std::vector<Dialog>> options_cache_;
  std::map<std::pair<NodeSet, Dialog>, std::optional<NodeSet>> fit_cache_;
  std::size_t found_here_ = 0;
};

}  // namespace detail

/// A union of original-language expressions (no W, no arrows) whose combined
/// extension is exactly `spec`. Not necessarily the smallest such union.
inline std::vector<Dialog> mine(const EnumeratedSpec& spec, const MineOptions& opt = {}) {
  NameSet names;
  for (const Episode& e : spec.episodes) {
    for (const Utterance& u : e.turns) names.insert(u.answers.begin(), u.answers.end());
  }
  if (names.size() > opt.cap) throw CapExceeded(names.size(), opt.cap);
  if (spec.episodes.empty()) return {};
  return detail::Miner(spec, opt).run();
}

}  // namespace weave
