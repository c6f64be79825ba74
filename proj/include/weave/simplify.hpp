#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weave/dialog.hpp"
#include "weave/syntax.hpp"

namespace weave {

enum class SimplifyRule { Empty1, Empty2, Empty3, Empty4, Atom1, Atom2, Flatten };

inline const char* rule_name(SimplifyRule r) noexcept {
  switch (r) {
    case SimplifyRule::Empty1: return "EMPTY-1";
    case SimplifyRule::Empty2: return "EMPTY-2";
    case SimplifyRule::Empty3: return "EMPTY-3";
    case SimplifyRule::Empty4: return "EMPTY-4";
    case SimplifyRule::Atom1: return "ATOM-1";
    case SimplifyRule::Atom2: return "ATOM-2";
    case SimplifyRule::Flatten: return "FLATTEN";
  }
  return "?";
}

/// One rewrite of the whole expression. For EMPTY-2 and FLATTEN the path
/// names the removed or flattened child; otherwise the rewritten node.
struct RewriteStep {
  SimplifyRule rule;
  NodePath path;
  Dialog before;
  Dialog after;

  std::string to_string() const {
    return std::string(rule_name(rule)) + " " + path_to_string(path) + " " + print_expr(before) + " => " +
           print_expr(after);
  }
};

struct RewriteTrace {
  Dialog start;
  std::vector<RewriteStep> steps;
  Dialog result;

  std::string to_string() const {
    std::string out;
    for (const RewriteStep& s : steps) out += s.to_string() + "\n";
    return out;
  }
};

namespace detail {

// Removing a node level moves its subtree one level up. An arrow chain whose
// target lay at or above the removed level must shrink by one so that it
// still lands on the same ancestor. `h` counts the nodes between the removed
// one and d's parent.
inline Dialog lift_arrows(const Dialog& d, unsigned h) {
  if (d.is_empty()) return d;
  Dialog out = d;
  if (d.arrows() > 0 && d.arrows() >= h) out = d.with_arrows(d.arrows() - 1);
  if (d.is_atom() || d.children().empty()) return out;
  const unsigned next = d.is_node() ? h + 1 : h;
  std::vector<Dialog> kids;
  kids.reserve(d.children().size());
  bool changed = false;
  for (const Dialog& c : d.children()) {
    kids.push_back(lift_arrows(c, next));
    changed = changed || !(kids.back() == c);
  }
  if (!changed) return out;
  if (out.is_union()) return Dialog::alt(kids[0], kids[1]);
  return out.with_children(std::move(kids));
}

// Adds `k` arrows to d, or to every operand of a union. Fails on ~.
inline std::optional<Dialog> add_arrows(const Dialog& d, unsigned k) {
  if (k == 0) return d;
  if (d.is_empty()) return std::nullopt;
  if (d.is_union()) {
    auto l = add_arrows(d.left(), k);
    auto r = add_arrows(d.right(), k);
    if (!l || !r) return std::nullopt;
    return Dialog::alt(*l, *r);
  }
  return d.with_arrows(d.arrows() + k);
}

// Result of collapsing the single-child node `n`.
inline std::optional<Dialog> collapse(const Dialog& n) {
  return add_arrows(lift_arrows(n.children()[0], 0), n.arrows());
}

inline bool flattenable(const Dialog& parent, const Dialog& child) {
  return normal_form(parent.mnemonic()) == Mnemonic::C && child.is_node() &&
         normal_form(child.mnemonic()) == Mnemonic::C && child.arrows() == 0;
}

struct LocalStep {
  SimplifyRule rule;
  std::optional<std::size_t> child;  // for EMPTY-2 / FLATTEN
  Dialog result;
};

inline Dialog without_child(const Dialog& n, std::size_t i) {
  std::vector<Dialog> kids(n.children().begin(), n.children().end());
  kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(i));
  return n.with_children(std::move(kids));
}

inline Dialog flatten_child(const Dialog& n, std::size_t i) {
  std::vector<Dialog> kids;
  const auto src = n.children();
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (j != i) {
      kids.push_back(src[j]);
      continue;
    }
    for (const Dialog& g : src[j].children()) kids.push_back(lift_arrows(g, 0));
  }
  return n.with_children(std::move(kids));
}

// Every rule applicable at the root of `d`, in preference order. With
// `first_only` the search stops at the first hit.
inline std::vector<LocalStep> root_steps(const Dialog& d, bool first_only) {
  std::vector<LocalStep> out;
  auto done = [&] { return first_only && !out.empty(); };
  if (d.is_union()) {
    if (d.left().is_empty()) out.push_back({SimplifyRule::Empty3, std::nullopt, d.right()});
    if (done()) return out;
    if (d.right().is_empty()) out.push_back({SimplifyRule::Empty4, std::nullopt, d.left()});
    return out;
  }
  if (!d.is_node()) return out;
  const auto kids = d.children();
  const Mnemonic m = d.mnemonic();
  if (kids.empty() && d.arrows() == 0) out.push_back({SimplifyRule::Empty1, std::nullopt, Dialog::empty()});
  if (done()) return out;
  if (is_subdialog_capable(m)) {
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (kids[i].is_empty()) {
        out.push_back({SimplifyRule::Empty2, i, without_child(d, i)});
        if (done()) return out;
      }
    }
  }
  if (kids.size() == 1) {
    if (collapses_any_single_child(m)) {
      if (auto r = collapse(d)) out.push_back({SimplifyRule::Atom1, std::nullopt, *r});
    } else if (kids[0].is_atom()) {
      if (auto r = collapse(d)) out.push_back({SimplifyRule::Atom2, std::nullopt, *r});
    }
    if (done()) return out;
  }
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (flattenable(d, kids[i])) {
      out.push_back({SimplifyRule::Flatten, i, flatten_child(d, i)});
      if (done()) return out;
    }
  }
  return out;
}

inline NodePath step_path(NodePath at, const LocalStep& s) {
  if (s.child) at.push_back(*s.child);
  return at;
}

// Leftmost-innermost redex: children first (left to right), then the node.
inline std::optional<std::pair<NodePath, LocalStep>> first_redex(const Dialog& d, NodePath& at) {
  const auto kids = d.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    at.push_back(i);
    auto hit = first_redex(kids[i], at);
    at.pop_back();
    if (hit) return hit;
  }
  auto here = root_steps(d, true);
  if (here.empty()) return std::nullopt;
  return std::make_pair(at, std::move(here.front()));
}

inline void collect_steps(const Dialog& root, const Dialog& d, NodePath& at, std::vector<RewriteStep>& out) {
  const auto kids = d.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    at.push_back(i);
    collect_steps(root, kids[i], at, out);
    at.pop_back();
  }
  for (LocalStep& s : root_steps(d, false)) {
    out.push_back({s.rule, step_path(at, s), root, replace_at(root, at, s.result)});
  }
}

}  // namespace detail

/// The leftmost-innermost applicable step, if any.
inline std::optional<RewriteStep> simplify_step(const Dialog& d) {
  NodePath at;
  auto hit = detail::first_redex(d, at);
  if (!hit) return std::nullopt;
  auto& [path, local] = *hit;
  return RewriteStep{local.rule, detail::step_path(path, local), d, replace_at(d, path, local.result)};
}

/// Every applicable (rule, position) pair.
inline std::vector<RewriteStep> all_steps(const Dialog& d) {
  std::vector<RewriteStep> out;
  NodePath at;
  detail::collect_steps(d, d, at, out);
  return out;
}

inline RewriteTrace canonicalize(const Dialog& d) {
  RewriteTrace t{d, {}, d};
  while (auto s = simplify_step(t.result)) {
    t.result = s->after;
    t.steps.push_back(std::move(*s));
  }
  return t;
}

/// Canonical form without recording a trace. Same strategy as `canonicalize`.
inline Dialog canonical(const Dialog& d) {
  if (d.is_empty() || d.is_atom()) return d;
  const auto kids = d.children();
  std::vector<Dialog> norm;
  norm.reserve(kids.size());
  bool changed = false;
  for (const Dialog& c : kids) {
    norm.push_back(canonical(c));
    changed = changed || !(norm.back() == c);
  }
  Dialog cur = d;
  if (changed) cur = d.is_union() ? Dialog::alt(norm[0], norm[1]) : d.with_children(std::move(norm));
  auto here = detail::root_steps(cur, true);
  if (here.empty()) return cur;
  return canonical(here.front().result);
}

inline bool is_canonical(const Dialog& d) { return !simplify_step(d).has_value(); }

}  // namespace weave
