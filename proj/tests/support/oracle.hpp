#pragma once

// Episode sets computed compositionally from the staging rules, with no
// reference to the stager or the reduction engine. Arrow-free, W-free only.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "weave/dialog.hpp"
#include "weave/utterance.hpp"

namespace oracle {

using weave::Dialog;
using weave::Mnemonic;
using weave::NameSet;
using Turns = std::vector<NameSet>;
using Ext = std::set<Turns>;

inline Ext unit() { return {Turns{}}; }

inline Ext concat(const Ext& a, const Ext& b) {
  Ext out;
  for (const Turns& x : a) {
    for (const Turns& y : b) {
      Turns t = x;
      t.insert(t.end(), y.begin(), y.end());
      out.insert(std::move(t));
    }
  }
  return out;
}

inline Ext prepend(const NameSet& u, const Ext& rest) { return concat({Turns{u}}, rest); }

inline Ext all_at_once(const std::vector<std::string>& xs) {
  if (xs.empty()) return unit();
  return {Turns{NameSet(xs.begin(), xs.end())}};
}

inline std::vector<std::string> without(const std::vector<std::string>& xs, const NameSet& drop) {
  std::vector<std::string> out;
  for (const std::string& x : xs) {
    if (!drop.count(x)) out.push_back(x);
  }
  return out;
}

// Non-empty subsets of xs, as bitmasks.
template <class F>
void for_subsets(const std::vector<std::string>& xs, F f) {
  for (unsigned m = 1; m < (1u << xs.size()); ++m) {
    NameSet s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (m & (1u << i)) s.insert(xs[i]);
    }
    f(s);
  }
}

inline Ext atoms_only(Mnemonic m, const std::vector<std::string>& xs) {
  const std::size_t n = xs.size();
  if (n == 0) return unit();
  Ext out;
  switch (m) {
    case Mnemonic::I:
      return all_at_once(xs);
    case Mnemonic::PFA1:
      return prepend({xs[0]}, all_at_once({xs.begin() + 1, xs.end()}));
    case Mnemonic::PFA1Star:
      out = all_at_once(xs);
      for (const Turns& t : prepend({xs[0]}, atoms_only(m, {xs.begin() + 1, xs.end()}))) out.insert(t);
      return out;
    case Mnemonic::PFAn:
    case Mnemonic::PFAnStar:
      for (std::size_t j = 1; j <= n; ++j) {
        if (m == Mnemonic::PFAn && j == n && n > 1) break;
        const NameSet prefix(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(j));
        const std::vector<std::string> rest(xs.begin() + static_cast<std::ptrdiff_t>(j), xs.end());
        for (const Turns& t : prepend(prefix, m == Mnemonic::PFAn ? all_at_once(rest) : atoms_only(m, rest))) {
          out.insert(t);
        }
      }
      return out;
    case Mnemonic::SPE:
    case Mnemonic::SPEStar:
      if (m == Mnemonic::SPEStar) out = all_at_once(xs);
      for (const std::string& x : xs) {
        const auto rest = without(xs, {x});
        for (const Turns& t : prepend({x}, m == Mnemonic::SPE ? all_at_once(rest) : atoms_only(m, rest))) {
          out.insert(t);
        }
      }
      return out;
    case Mnemonic::PE:
    case Mnemonic::PEStar:
      for_subsets(xs, [&](const NameSet& y) {
        if (m == Mnemonic::PE && y.size() == n && n > 1) return;
        const auto rest = without(xs, y);
        for (const Turns& t : prepend(y, m == Mnemonic::PE ? all_at_once(rest) : atoms_only(m, rest))) out.insert(t);
      });
      return out;
    default:
      throw std::logic_error("not an atoms-only mnemonic");
  }
}

inline Ext denote(const Dialog& d);

// Every order of the parts, each part run to completion.
inline Ext all_orders(const std::vector<Ext>& parts) {
  std::vector<std::size_t> idx(parts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Ext out;
  do {
    Ext acc = unit();
    for (std::size_t i : idx) acc = concat(acc, parts[i]);
    out.insert(acc.begin(), acc.end());
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

inline Ext denote(const Dialog& d) {
  if (d.is_empty()) return unit();
  if (d.arrows() > 0) throw std::invalid_argument("oracle: arrows");
  if (d.is_atom()) return {Turns{NameSet{d.name()}}};
  if (d.is_union()) {
    Ext out = denote(d.left());
    for (const Turns& t : denote(d.right())) out.insert(t);
    return out;
  }
  const Mnemonic m = weave::normal_form(d.mnemonic());
  if (m == Mnemonic::W) throw std::invalid_argument("oracle: W");
  // Empty children contribute nothing outside the sequencing mnemonics.
  std::vector<Dialog> kids;
  for (const Dialog& c : d.children()) {
    const bool empty = c.is_empty() || (c.is_node() && c.children().empty());
    if (!empty || m == Mnemonic::C || m == Mnemonic::SPEPrime) kids.push_back(c);
  }
  // Outside them a wrapper around one solicitation asks just that one.
  if (m != Mnemonic::C && m != Mnemonic::SPEPrime) {
    for (Dialog& c : kids) {
      while (c.is_node() && c.children().size() == 1 &&
             (c.children()[0].is_atom() || weave::collapses_any_single_child(c.mnemonic()))) {
        c = c.children()[0];
      }
    }
  }
  bool atoms = true;
  for (const Dialog& c : kids) atoms = atoms && c.is_atom();
  if (m == Mnemonic::C) {
    Ext acc = unit();
    for (const Dialog& c : kids) acc = concat(acc, denote(c));
    return acc;
  }
  if (m == Mnemonic::SPEPrime) {
    std::vector<Ext> parts;
    for (const Dialog& c : kids) parts.push_back(denote(c));
    return all_orders(parts);
  }
  if (atoms) {
    std::vector<std::string> xs;
    for (const Dialog& c : kids) xs.push_back(c.name());
    return atoms_only(m, xs);
  }
  // PFA1 or SPE over sub-dialogs: one child first, then what remains.
  Ext out;
  const std::size_t last = m == Mnemonic::PFA1 ? 1 : kids.size();
  for (std::size_t i = 0; i < last && i < kids.size(); ++i) {
    std::vector<Dialog> rest;
    for (std::size_t j = 0; j < kids.size(); ++j) {
      if (j != i) rest.push_back(kids[j]);
    }
    Ext tail;
    if (rest.empty()) {
      tail = unit();
    } else if (rest.size() == 1) {
      tail = denote(rest[0]);
    } else {
      std::vector<std::string> xs;
      bool ok = true;
      for (const Dialog& r : rest) {
        ok = ok && r.is_atom();
        xs.push_back(r.name());
      }
      if (!ok) continue;
      tail = all_at_once(xs);
    }
    for (const Turns& t : concat(denote(kids[i]), tail)) out.insert(t);
  }
  return out;
}

inline std::set<weave::Episode> episodes(const Dialog& d) {
  std::set<weave::Episode> out;
  for (const Turns& t : denote(d)) {
    std::vector<weave::Utterance> turns;
    for (const NameSet& u : t) turns.emplace_back(u);
    out.insert(weave::Episode(std::move(turns)));
  }
  return out;
}

}  // namespace oracle
