#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <deque>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "weave/context.hpp"
#include "weave/stage.hpp"
#include "weave/syntax.hpp"
#include "weave/utterance.hpp"

namespace weave {

/// (stack, current, pending). The stack is stored top first.
struct ReductionState {
  std::vector<DialogContext> stack;
  Dialog current;
  std::vector<Utterance> pending;

  bool is_final() const noexcept { return stack.empty() && current.is_empty() && pending.empty(); }

  std::string to_string() const {
    std::string out;
    for (const DialogContext& c : stack) out += c.to_string() + " :: ";
    out += "nil || " + print_expr(current) + " || " + print_turns(pending);
    return out;
  }

  friend bool operator==(const ReductionState&, const ReductionState&) = default;
  friend std::strong_ordering operator<=>(const ReductionState& a, const ReductionState& b) {
    if (auto c = a.current <=> b.current; c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(a.stack.begin(), a.stack.end(), b.stack.begin(),
                                                        b.stack.end());
        c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(a.pending.begin(), a.pending.end(), b.pending.begin(),
                                                  b.pending.end());
  }
};

using Frontier = std::set<ReductionState>;

struct Reduction {
  std::string rule;
  ReductionState state;
};

inline ReductionState init_state(const Dialog& d, std::vector<Utterance> pending = {}) {
  return {{DialogContext::terminal()}, d, std::move(pending)};
}

inline Frontier init_frontier(const Dialog& d) { return {init_state(d)}; }

namespace detail {

inline ReductionState pop_apply(const ReductionState& s, bool consume) {
  ReductionState t;
  t.stack.assign(s.stack.begin() + 1, s.stack.end());
  t.current = s.stack.front().apply(Dialog::empty());
  t.pending.assign(s.pending.begin() + (consume ? 1 : 0), s.pending.end());
  return t;
}

inline ReductionState push(const ReductionState& s, Hole h, const Dialog& current) {
  ReductionState t;
  t.stack.reserve(s.stack.size() + 1);
  t.stack.push_back(DialogContext::of(std::move(h)));
  t.stack.insert(t.stack.end(), s.stack.begin(), s.stack.end());
  t.current = current;
  t.pending = s.pending;
  return t;
}

inline bool is_empty_like(const Dialog& d) {
  return d.is_empty() || (d.is_node() && d.children().empty() && d.arrows() == 0);
}

// The atom a single-child node reduces to by ATOM-1/2, if it is one.
inline std::optional<Dialog> collapsed_atom(const Dialog& c) {
  if (!c.is_node() || c.children().size() != 1) return std::nullopt;
  const Dialog& only = c.children()[0];
  if (!only.is_atom() && !collapses_any_single_child(c.mnemonic())) return std::nullopt;
  auto r = collapse(c);
  if (!r) return std::nullopt;
  if (r->is_atom()) return r;
  return collapsed_atom(*r);
}

}  // namespace detail

/// Every state reachable by exactly one rule, with the rule's name.
inline std::vector<Reduction> reduce_labeled(const ReductionState& s) {
  std::vector<Reduction> out;
  const Dialog& d = s.current;

  if (d.arrows() > 0) {
    if (s.stack.size() < 2) return out;
    ReductionState t;
    t.stack.push_back(compose(s.stack[1], s.stack[0]));
    t.stack.insert(t.stack.end(), s.stack.begin() + 2, s.stack.end());
    t.current = d.with_arrows(d.arrows() - 1);
    t.pending = s.pending;
    out.push_back({"ARROW", std::move(t)});
    return out;
  }
  if (detail::is_empty_like(d)) {
    if (!s.stack.empty()) out.push_back({"EMPTY", detail::pop_apply(s, false)});
    return out;
  }
  if (d.is_union()) {
    out.push_back({"UNION-L", {s.stack, d.left(), s.pending}});
    out.push_back({"UNION-R", {s.stack, d.right(), s.pending}});
    return out;
  }
  const bool has_input = !s.pending.empty();
  const NameSet* u = has_input ? &s.pending.front().answers : nullptr;
  if (d.is_atom()) {
    if (has_input && !s.stack.empty() && u->size() == 1 && *u->begin() == d.name()) {
      out.push_back({"ATOM", detail::pop_apply(s, true)});
    }
    return out;
  }

  const auto kids = d.children();
  const Mnemonic m = normal_form(d.mnemonic());
  auto siblings = [&](std::size_t from, std::size_t to) {
    return std::vector<Dialog>(kids.begin() + static_cast<std::ptrdiff_t>(from),
                               kids.begin() + static_cast<std::ptrdiff_t>(to));
  };

  // Outside C, SPE' and W an empty child takes no turn; drop it first.
  if (m != Mnemonic::C && m != Mnemonic::SPEPrime && m != Mnemonic::W &&
      std::any_of(kids.begin(), kids.end(), detail::is_empty_like)) {
    std::vector<Dialog> rest;
    for (const Dialog& c : kids) {
      if (!detail::is_empty_like(c)) rest.push_back(c);
    }
    out.push_back({"EMPTY", {s.stack, Dialog::node(d.mnemonic(), std::move(rest), d.arrows()), s.pending}});
    return out;
  }
  // Likewise a child that collapses to one solicitation counts as that atom.
  if (m != Mnemonic::C && m != Mnemonic::SPEPrime && m != Mnemonic::W) {
    std::vector<Dialog> flat(kids.begin(), kids.end());
    bool changed = false;
    for (Dialog& c : flat) {
      if (auto a = detail::collapsed_atom(c)) {
        c = *a;
        changed = true;
      }
    }
    if (changed) {
      out.push_back({"ATOM", {s.stack, Dialog::node(d.mnemonic(), std::move(flat), d.arrows()), s.pending}});
      return out;
    }
  }

  if ((m == Mnemonic::PFA1 || m == Mnemonic::SPE) && !detail::all_atoms(kids)) {
    const std::size_t last = m == Mnemonic::PFA1 ? 1 : kids.size();
    for (std::size_t i = 0; i < last; ++i) {
      auto rem = detail::subdialog_remainder(kids, i);
      if (!rem) continue;
      if (*rem) {
        out.push_back({std::string(spelling(m)), detail::push(s, Hole{Mnemonic::C, {}, {**rem}}, kids[i])});
      } else {
        out.push_back({std::string(spelling(m)), {s.stack, kids[i], s.pending}});
      }
    }
    return out;
  }

  switch (m) {
    case Mnemonic::C:
      out.push_back({"C", detail::push(s, Hole{d.mnemonic(), {}, siblings(1, kids.size())}, kids[0])});
      return out;
    case Mnemonic::W:
    case Mnemonic::SPEPrime:
      for (std::size_t i = 0; i < kids.size(); ++i) {
        out.push_back({std::string(spelling(m)),
                       detail::push(s, Hole{d.mnemonic(), siblings(0, i), siblings(i + 1, kids.size())}, kids[i])});
      }
      return out;
    case Mnemonic::I:
      if (has_input && !s.stack.empty() && *u == detail::child_names(kids)) {
        out.push_back({"I", detail::pop_apply(s, true)});
      }
      return out;
    default:
      break;
  }
  if (!has_input) return out;
  if (auto r = detail::stage_raw(d, *u)) {
    ReductionState t{s.stack, canonical(*r), {s.pending.begin() + 1, s.pending.end()}};
    out.push_back({std::string(spelling(m)), std::move(t)});
  }
  return out;
}

inline std::set<ReductionState> reduce_one(const ReductionState& s) {
  std::set<ReductionState> out;
  for (Reduction& r : reduce_labeled(s)) out.insert(std::move(r.state));
  return out;
}

namespace detail {
// Follows the deterministic [EMPTY] chain.
inline ReductionState settle(ReductionState s) {
  while (s.pending.empty() && is_empty_like(s.current) && !s.stack.empty()) s = pop_apply(s, false);
  return s;
}
}  // namespace detail

/// Feeds one utterance to every state and keeps the states that consumed it.
inline Frontier stage_response(const Frontier& f, const Utterance& u) {
  Frontier out;
  std::set<ReductionState> seen;
  std::deque<ReductionState> queue;
  const Utterance bare = u.names_only();
  for (const ReductionState& s : f) {
    ReductionState t = s;
    t.pending.push_back(bare);
    if (seen.insert(t).second) queue.push_back(std::move(t));
  }
  while (!queue.empty()) {
    ReductionState s = std::move(queue.front());
    queue.pop_front();
    if (s.pending.empty()) {
      out.insert(detail::settle(std::move(s)));
      continue;
    }
    for (Reduction& r : reduce_labeled(s)) {
      if (seen.insert(r.state).second) queue.push_back(std::move(r.state));
    }
  }
  return out;
}

/// States reachable without consuming input, the start included.
inline std::set<ReductionState> input_free_closure(const ReductionState& start) {
  std::set<ReductionState> seen{start};
  std::deque<ReductionState> queue{start};
  while (!queue.empty()) {
    ReductionState s = std::move(queue.front());
    queue.pop_front();
    if (!s.pending.empty()) continue;
    for (Reduction& r : reduce_labeled(s)) {
      if (seen.insert(r.state).second) queue.push_back(std::move(r.state));
    }
  }
  return seen;
}

inline bool can_finish(const ReductionState& s) {
  if (!s.pending.empty()) return false;
  for (const ReductionState& t : input_free_closure(s)) {
    if (t.is_final()) return true;
  }
  return false;
}

/// Some state can finish without further input; with `strict`, every state.
inline bool is_complete(const Frontier& f, bool strict = false) {
  if (f.empty()) return false;
  for (const ReductionState& s : f) {
    const bool done = can_finish(s);
    if (strict && !done) return false;
    if (!strict && done) return true;
  }
  return strict;
}

inline Frontier stage_turns(const Dialog& d, const std::vector<Utterance>& turns) {
  Frontier f = init_frontier(d);
  for (const Utterance& u : turns) {
    f = stage_response(f, u);
    if (f.empty()) break;
  }
  return f;
}

inline bool membership(const Dialog& d, const Episode& ep, bool strict = false) {
  return is_complete(stage_turns(d, ep.turns), strict);
}

inline bool is_prefix(const Dialog& d, const std::vector<Utterance>& turns) {
  return !stage_turns(d, turns).empty();
}

namespace detail {

inline void collect_context_names(const DialogContext& c, NameSet& out) {
  if (c.is_constant()) {
    collect_names(c.value(), out);
    return;
  }
  for (const Hole& h : c.holes()) {
    for (const Dialog& d : h.left) collect_names(d, out);
    for (const Dialog& d : h.right) collect_names(d, out);
  }
}

inline void subsets_of_size_at_least(const std::vector<std::string>& names, std::size_t min, std::set<Utterance>& out) {
  const std::size_t n = names.size();
  if (n >= 63) return;
  for (unsigned long long mask = 1; mask < (1ULL << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) < min) continue;
    Utterance u;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) u.answers.insert(names[i]);
    }
    out.insert(std::move(u));
  }
}

}  // namespace detail

/// Names still to be answered somewhere in the frontier.
inline NameSet live_names(const Frontier& f) {
  NameSet out;
  for (const ReductionState& s : f) {
    detail::collect_names(s.current, out);
    for (const DialogContext& c : s.stack) detail::collect_context_names(c, out);
  }
  return out;
}

enum class CandidateProbe { Exact, AllSubsets };

/// Utterances the frontier can consume. Multi-response utterances can only be
/// consumed by a grouping mnemonic that becomes current, so the exact probe
/// tries subsets of those nodes' solicitations only.
inline std::set<Utterance> candidates(const Frontier& f, const NameSet& universe,
                                      CandidateProbe probe = CandidateProbe::Exact) {
  NameSet live = live_names(f);
  std::vector<std::string> names;
  for (const std::string& n : live) {
    if (universe.empty() || universe.count(n)) names.push_back(n);
  }
  std::set<Utterance> trial;
  if (probe == CandidateProbe::AllSubsets) {
    detail::subsets_of_size_at_least(names, 1, trial);
  } else {
    for (const std::string& n : names) trial.insert(Utterance::single(n));
    std::set<NameSet> groups;
    for (const ReductionState& s : f) {
      for (const ReductionState& t : input_free_closure(s)) {
        if (t.current.is_node() && is_atoms_only(t.current.mnemonic()) && t.current.children().size() >= 2) {
          groups.insert(detail::child_names(t.current.children()));
        }
      }
    }
    for (const NameSet& g : groups) detail::subsets_of_size_at_least({g.begin(), g.end()}, 2, trial);
  }
  std::set<Utterance> out;
  for (const Utterance& u : trial) {
    if (!stage_response(f, u).empty()) out.insert(u);
  }
  return out;
}

}  // namespace weave
