#pragma once

#include <string>
#include <vector>

#include "weave/dialog.hpp"

namespace weave {

enum class Rule { R1, R2, R3, R4, R5 };

inline const char* rule_id(Rule r) noexcept {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::R5: return "R5";
  }
  return "?";
}

struct Violation {
  Rule rule;
  NodePath path;
  std::string message;

  std::string to_string() const { return std::string(rule_id(rule)) + " at " + path_to_string(path) + ": " + message; }
};

/// Context-sensitive legality of an expression. `ok` iff there are no
/// violations; warnings never affect it.
struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;

  bool ok() const noexcept { return violations.empty(); }
  bool has(Rule r) const {
    for (const Violation& v : violations) {
      if (v.rule == r) return true;
    }
    return false;
  }
};

namespace detail {

class Validator {
 public:
  ValidationReport run(const Dialog& root) {
    visit(root);
    return std::move(report_);
  }

 private:
  void error(Rule r, std::string msg) { report_.violations.push_back({r, path_, std::move(msg)}); }
  void warn(Rule r, std::string msg) { report_.warnings.push_back({r, path_, std::move(msg)}); }

  // Arrows on the item at path_; node_ancestors_ holds the enclosing nodes,
  // innermost last. The parent is the last entry; k arrows land k above it.
  void check_arrow_target(unsigned k) {
    if (k == 0) return;
    if (node_ancestors_.empty() || node_ancestors_.size() <= k) {
      error(Rule::R3, "arrow chain of length " + std::to_string(k) + " has no enclosing target");
      return;
    }
    const Mnemonic target = node_ancestors_[node_ancestors_.size() - 1 - k];
    if (normal_form(target) != Mnemonic::W) {
      error(Rule::R3, "arrow chain of length " + std::to_string(k) + " targets " +
                          std::string(spelling(target)) + ", only W may receive control");
    }
  }

  void visit(const Dialog& d) {
    switch (d.kind()) {
      case Kind::Empty:
        return;
      case Kind::Atom:
        check_arrow_target(d.arrows());
        return;
      case Kind::Union:
        visit_union(d);
        return;
      case Kind::Node:
        visit_node(d);
        return;
    }
  }

  void visit_union(const Dialog& d) {
    if (d.arrows() > 0) error(Rule::R5, "a union cannot carry arrows");
    const bool empty_side = d.left().is_empty() || d.right().is_empty();
    if (empty_side) {
      warn(Rule::R5, "union with the empty dialog; it simplifies away");
    } else if (solicitation_set(d.left()) != solicitation_set(d.right())) {
      error(Rule::R5, "union operands must pose the same solicitations");
    }
    for (std::size_t i = 0; i < 2; ++i) {
      path_.push_back(i);
      visit(d.children()[i]);
      path_.pop_back();
    }
  }

  void visit_node(const Dialog& d) {
    const Mnemonic m = d.mnemonic();
    const auto kids = d.children();
    check_arrow_target(d.arrows());

    const bool atoms_only = is_atoms_only(m);
    const Mnemonic n = normal_form(m);
    if (n == Mnemonic::PFA1 || n == Mnemonic::SPE) {
      if (kids.size() > 2) {
        for (std::size_t i = 1; i < kids.size(); ++i) {
          if (!kids[i].is_atom() && !kids[i].is_empty()) {
            path_.push_back(i);
            error(Rule::R2, std::string(spelling(m)) +
                                " with more than two sub-expressions allows a sub-dialog only in first position");
            path_.pop_back();
          }
        }
      }
    }

    // Children must not share solicitations.
    NameSet seen;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      path_.push_back(i);
      const Dialog& c = kids[i];
      if (atoms_only) {
        if (c.is_union()) {
          error(Rule::R5, "union beneath " + std::string(spelling(m)) + ", which takes solicitations only");
        } else if (!c.is_atom()) {
          error(Rule::R1, std::string(spelling(m)) + " takes solicitations only, not sub-dialogs");
        } else if (c.arrows() > 0) {
          error(Rule::R1, "arrow on a solicitation beneath " + std::string(spelling(m)) +
                              ", which accepts several responses per utterance");
        }
      } else if (!admits_arrowed_children(m) && c.arrows() > 0) {
        error(Rule::R3, "arrow directly beneath " + std::string(spelling(m)) +
                            ", which accepts several responses per utterance");
      }
      for (const std::string& name : solicitation_set(c)) {
        if (!seen.insert(name).second) error(Rule::R4, "duplicate solicitation '" + name + "'");
      }
      path_.pop_back();
    }

    node_ancestors_.push_back(m);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      path_.push_back(i);
      // The atoms-only checks above already cover arrows on their children.
      if (!(atoms_only && kids[i].is_atom())) visit(kids[i]);
      path_.pop_back();
    }
    node_ancestors_.pop_back();
  }

  ValidationReport report_;
  NodePath path_;
  std::vector<Mnemonic> node_ancestors_;
};

}  // namespace detail

inline ValidationReport validate(const Dialog& d) { return detail::Validator{}.run(d); }

}  // namespace weave
