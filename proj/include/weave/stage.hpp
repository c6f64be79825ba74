#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "weave/dialog.hpp"
#include "weave/simplify.hpp"
#include "weave/utterance.hpp"

namespace weave {

enum class RejectCode { UnknownSolicitation, OutOfOrder, Grouping, Unsupported };

inline const char* reject_code_name(RejectCode c) noexcept {
  switch (c) {
    case RejectCode::UnknownSolicitation: return "unknown-solicitation";
    case RejectCode::OutOfOrder: return "out-of-order";
    case RejectCode::Grouping: return "grouping";
    case RejectCode::Unsupported: return "unsupported";
  }
  return "?";
}

struct Rejected {
  RejectCode code;
  NameSet names;
  std::string reason;
};

struct Advanced {
  Dialog next;
  RewriteTrace trace;
};

using StagingOutcome = std::variant<Advanced, Rejected>;

inline bool advanced(const StagingOutcome& o) noexcept { return std::holds_alternative<Advanced>(o); }

namespace detail {

inline NameSet child_names(std::span<const Dialog> kids) {
  NameSet out;
  for (const Dialog& c : kids) out.insert(c.name());
  return out;
}

inline bool all_atoms(std::span<const Dialog> kids) {
  for (const Dialog& c : kids) {
    if (!c.is_atom()) return false;
  }
  return true;
}

inline Dialog node_of(Mnemonic m, std::span<const Dialog> kids, std::size_t skip_from, std::size_t skip_to) {
  std::vector<Dialog> out;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i < skip_from || i >= skip_to) out.push_back(kids[i]);
  }
  return Dialog::node(m, std::move(out));
}

/// What is left of a PFA1 or SPE node with sub-dialogs once child `i` is
/// chosen: nothing, the single remaining child, or an I over the remaining
/// solicitations. Any other shape cannot be completed.
inline std::optional<std::optional<Dialog>> subdialog_remainder(std::span<const Dialog> kids, std::size_t i) {
  std::vector<Dialog> rest;
  for (std::size_t j = 0; j < kids.size(); ++j) {
    if (j != i) rest.push_back(kids[j]);
  }
  if (rest.empty()) return std::optional<Dialog>{};
  if (rest.size() == 1) return std::optional<Dialog>{rest[0]};
  if (!all_atoms(rest)) return std::nullopt;
  return std::optional<Dialog>{Dialog::node(Mnemonic::I, std::move(rest))};
}

inline std::optional<Dialog> stage_raw(const Dialog& d, const NameSet& u);

inline std::optional<Dialog> stage_subdialog_choice(const Dialog& d, const NameSet& u, std::size_t i) {
  const auto kids = d.children();
  auto rem = subdialog_remainder(kids, i);
  if (!rem) return std::nullopt;
  auto r = stage_raw(kids[i], u);
  if (!r) return std::nullopt;
  if (!*rem) return r;
  return Dialog::node(Mnemonic::C, {*r, **rem});
}

inline std::optional<Dialog> stage_raw(const Dialog& d, const NameSet& u) {
  if (u.empty()) return std::nullopt;
  switch (d.kind()) {
    case Kind::Empty:
      return std::nullopt;
    case Kind::Atom:
      if (u.size() == 1 && *u.begin() == d.name()) return Dialog::empty();
      return std::nullopt;
    case Kind::Union: {
      auto l = stage_raw(d.left(), u);
      auto r = stage_raw(d.right(), u);
      if (l && r) return Dialog::alt(*l, *r);
      if (l) return l;
      return r;
    }
    case Kind::Node:
      break;
  }
  const auto kids = d.children();
  const std::size_t n = kids.size();
  if (n == 0) return std::nullopt;
  const Mnemonic m = normal_form(d.mnemonic());

  if ((m == Mnemonic::PFA1 || m == Mnemonic::SPE) && !all_atoms(kids)) {
    if (m == Mnemonic::PFA1) return stage_subdialog_choice(d, u, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (auto r = stage_subdialog_choice(d, u, i)) return r;
    }
    return std::nullopt;
  }

  switch (m) {
    case Mnemonic::C: {
      auto r = stage_raw(kids[0], u);
      if (!r) return std::nullopt;
      std::vector<Dialog> out{*r};
      out.insert(out.end(), kids.begin() + 1, kids.end());
      return Dialog::node(d.mnemonic(), std::move(out));
    }
    case Mnemonic::SPEPrime:
      for (std::size_t i = 0; i < n; ++i) {
        if (auto r = stage_raw(kids[i], u)) {
          return Dialog::node(Mnemonic::C, {*r, node_of(d.mnemonic(), kids, i, i + 1)});
        }
      }
      return std::nullopt;
    case Mnemonic::I:
      if (u == child_names(kids)) return Dialog::empty();
      return std::nullopt;
    case Mnemonic::PFA1:
      if (u.size() == 1 && *u.begin() == kids[0].name()) return node_of(Mnemonic::I, kids, 0, 1);
      return std::nullopt;
    case Mnemonic::PFA1Star:
      if (u.size() == 1 && *u.begin() == kids[0].name()) return node_of(Mnemonic::PFA1Star, kids, 0, 1);
      if (u == child_names(kids)) return Dialog::empty();
      return std::nullopt;
    case Mnemonic::PFAn:
    case Mnemonic::PFAnStar: {
      NameSet prefix;
      for (std::size_t j = 1; j <= n; ++j) {
        prefix.insert(kids[j - 1].name());
        if (prefix.size() > u.size()) break;
        if (prefix != u) continue;
        if (m == Mnemonic::PFAn) {
          // A proper prefix, unless there is only one solicitation.
          if (j == n && n > 1) return std::nullopt;
          return node_of(Mnemonic::I, kids, 0, j);
        }
        return node_of(Mnemonic::PFAnStar, kids, 0, j);
      }
      return std::nullopt;
    }
    case Mnemonic::SPE:
    case Mnemonic::SPEStar:
      if (u.size() == 1) {
        for (std::size_t i = 0; i < n; ++i) {
          if (kids[i].name() == *u.begin()) return node_of(m == Mnemonic::SPE ? Mnemonic::I : Mnemonic::SPEStar, kids, i, i + 1);
        }
      }
      if (m == Mnemonic::SPEStar && u == child_names(kids)) return Dialog::empty();
      return std::nullopt;
    case Mnemonic::PE:
    case Mnemonic::PEStar: {
      const NameSet all = child_names(kids);
      for (const std::string& x : u) {
        if (!all.count(x)) return std::nullopt;
      }
      if (m == Mnemonic::PE && u.size() == all.size() && n > 1) return std::nullopt;
      std::vector<Dialog> rest;
      for (const Dialog& c : kids) {
        if (!u.count(c.name())) rest.push_back(c);
      }
      return Dialog::node(m == Mnemonic::PE ? Mnemonic::I : Mnemonic::PEStar, std::move(rest));
    }
    default:
      return std::nullopt;
  }
}

inline Rejected explain_rejection(const Dialog& d, const NameSet& u) {
  const NameSet known = solicitation_set(d);
  NameSet unknown;
  for (const std::string& x : u) {
    if (!known.count(x)) unknown.insert(x);
  }
  if (u.empty()) return {RejectCode::Grouping, {}, "empty utterance"};
  if (!unknown.empty()) return {RejectCode::UnknownSolicitation, unknown, "not a pending solicitation"};
  if (u.size() == 1) return {RejectCode::OutOfOrder, u, "not answerable at this point"};
  return {RejectCode::Grouping, u, "these responses cannot be given together at this point"};
}

}  // namespace detail

/// Stages one utterance against an arrow-free, W-free expression and returns
/// the canonical remainder.
inline StagingOutcome stage(const Dialog& expr, const Utterance& u) {
  if (has_arrows(expr) || uses_mnemonic(expr, Mnemonic::W)) {
    return Rejected{RejectCode::Unsupported, {}, "arrows and W need the reduction engine"};
  }
  const Dialog start = canonical(expr);
  auto r = detail::stage_raw(start, u.answers);
  if (!r) return detail::explain_rejection(start, u.answers);
  RewriteTrace t = canonicalize(*r);
  Dialog next = t.result;
  return Advanced{std::move(next), std::move(t)};
}

inline bool run_episode(const Dialog& expr, const Episode& ep) {
  Dialog cur = expr;
  for (const Utterance& u : ep.turns) {
    StagingOutcome o = stage(cur, u);
    if (!advanced(o)) return false;
    cur = std::get<Advanced>(o).next;
  }
  return canonical(cur).is_empty();
}

}  // namespace weave
