#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weave/mnemonic.hpp"

namespace weave {

enum class Kind : unsigned char { Empty, Atom, Node, Union };

/// Immutable dialog expression tree with value semantics. Copies share
/// structure; nothing is ever mutated after construction.
class Dialog {
 public:
  Dialog() = default;  // the empty dialog ~

  static Dialog empty() { return Dialog{}; }

  static Dialog atom(std::string name, unsigned arrows = 0) {
    Rep r;
    r.kind = Kind::Atom;
    r.arrows = arrows;
    r.name = std::move(name);
    return Dialog(std::move(r));
  }

  static Dialog node(Mnemonic m, std::vector<Dialog> children, unsigned arrows = 0) {
    Rep r;
    r.kind = Kind::Node;
    r.mnemonic = m;
    r.arrows = arrows;
    r.children = std::move(children);
    return Dialog(std::move(r));
  }

  static Dialog alt(Dialog left, Dialog right) {
    Rep r;
    r.kind = Kind::Union;
    r.children = {std::move(left), std::move(right)};
    return Dialog(std::move(r));
  }

  /// Right-folded binary union; a single item is returned as is.
  static Dialog alt(std::span<const Dialog> items) {
    if (items.empty()) return Dialog{};
    Dialog acc = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) acc = alt(items[i], acc);
    return acc;
  }

  Kind kind() const noexcept { return rep_ ? rep_->kind : Kind::Empty; }
  bool is_empty() const noexcept { return kind() == Kind::Empty; }
  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  bool is_node() const noexcept { return kind() == Kind::Node; }
  bool is_union() const noexcept { return kind() == Kind::Union; }

  const std::string& name() const noexcept { return rep_ ? rep_->name : empty_string(); }
  Mnemonic mnemonic() const noexcept { return rep_ ? rep_->mnemonic : Mnemonic::C; }
  unsigned arrows() const noexcept { return rep_ ? rep_->arrows : 0; }

  /// Node children, or the two operands of a union.
  std::span<const Dialog> children() const noexcept {
    if (!rep_) return {};
    return rep_->children;
  }
  const Dialog& left() const { return rep_->children.at(0); }
  const Dialog& right() const { return rep_->children.at(1); }

  /// Number of tree nodes (every Empty, Atom, Node and Union counts once).
  std::size_t size() const noexcept { return rep_ ? rep_->size : 1; }
  std::size_t hash() const noexcept { return rep_ ? rep_->hash : 0x9e3779b97f4a7c15ULL; }

  Dialog with_arrows(unsigned arrows) const {
    if (arrows == this->arrows()) return *this;
    Rep r = *rep_;
    r.arrows = arrows;
    return Dialog(std::move(r));
  }

  Dialog with_children(std::vector<Dialog> children) const {
    Rep r = *rep_;
    r.children = std::move(children);
    return Dialog(std::move(r));
  }

  Dialog with_mnemonic(Mnemonic m) const {
    Rep r = *rep_;
    r.mnemonic = m;
    return Dialog(std::move(r));
  }

  friend bool operator==(const Dialog& a, const Dialog& b) noexcept {
    if (a.rep_ == b.rep_) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    return structural_compare(a, b) == 0;
  }

  /// Total order: hash first (cheap), then structure.
  friend std::strong_ordering operator<=>(const Dialog& a, const Dialog& b) noexcept {
    if (a.rep_ == b.rep_) return std::strong_ordering::equal;
    if (auto c = a.hash() <=> b.hash(); c != 0) return c;
    const int s = structural_compare(a, b);
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Rep {
    Kind kind = Kind::Empty;
    Mnemonic mnemonic = Mnemonic::C;
    unsigned arrows = 0;
    std::string name;
    std::vector<Dialog> children;
    std::size_t size = 1;
    std::size_t hash = 0;
  };

  explicit Dialog(Rep r) {
    r.size = 1;
    std::size_t h = std::hash<int>{}(static_cast<int>(r.kind)) * 0x100000001b3ULL;
    h ^= std::hash<std::string>{}(r.name) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= (static_cast<std::size_t>(r.mnemonic) << 8 | r.arrows) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
    for (const Dialog& c : r.children) {
      r.size += c.size();
      h ^= c.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    r.hash = h;
    rep_ = std::make_shared<const Rep>(std::move(r));
  }

  static const std::string& empty_string() noexcept {
    static const std::string s;
    return s;
  }

  static int structural_compare(const Dialog& a, const Dialog& b) noexcept {
    if (a.rep_ == b.rep_) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
      case Kind::Empty:
        return 0;
      case Kind::Atom:
        if (a.arrows() != b.arrows()) return a.arrows() < b.arrows() ? -1 : 1;
        return a.name().compare(b.name());
      case Kind::Node:
        if (a.mnemonic() != b.mnemonic()) return a.mnemonic() < b.mnemonic() ? -1 : 1;
        if (a.arrows() != b.arrows()) return a.arrows() < b.arrows() ? -1 : 1;
        [[fallthrough]];
      case Kind::Union: {
        const auto ka = a.children();
        const auto kb = b.children();
        if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
        for (std::size_t i = 0; i < ka.size(); ++i) {
          if (int c = structural_compare(ka[i], kb[i]); c != 0) return c;
        }
        return 0;
      }
    }
    return 0;
  }

  std::shared_ptr<const Rep> rep_;
};

/// Child indices from the root; union operands are 0 (left) and 1 (right).
using NodePath = std::vector<std::size_t>;

inline std::string path_to_string(const NodePath& p) {
  if (p.empty()) return "/";
  std::string out;
  for (std::size_t i : p) out += "/" + std::to_string(i);
  return out;
}

using NameSet = std::set<std::string>;

namespace detail {
inline void collect_names(const Dialog& d, NameSet& out) {
  if (d.is_atom()) {
    out.insert(d.name());
    return;
  }
  for (const Dialog& c : d.children()) collect_names(c, out);
}
inline void collect_atoms(const Dialog& d, std::vector<std::string>& out) {
  if (d.is_atom()) {
    out.push_back(d.name());
    return;
  }
  for (const Dialog& c : d.children()) collect_atoms(c, out);
}
}  // namespace detail

/// Every solicitation named anywhere in the tree.
inline NameSet solicitation_set(const Dialog& d) {
  NameSet out;
  detail::collect_names(d, out);
  return out;
}

/// Atom names in left-to-right order, duplicates kept.
inline std::vector<std::string> atom_names(const Dialog& d) {
  std::vector<std::string> out;
  detail::collect_atoms(d, out);
  return out;
}

inline Dialog normalize_mnemonics(const Dialog& d) {
  switch (d.kind()) {
    case Kind::Empty:
    case Kind::Atom:
      return d;
    case Kind::Union:
      return Dialog::alt(normalize_mnemonics(d.left()), normalize_mnemonics(d.right()));
    case Kind::Node: {
      std::vector<Dialog> kids;
      kids.reserve(d.children().size());
      for (const Dialog& c : d.children()) kids.push_back(normalize_mnemonics(c));
      return Dialog::node(normal_form(d.mnemonic()), std::move(kids), d.arrows());
    }
  }
  return d;
}

inline bool has_arrows(const Dialog& d) {
  if (d.arrows() > 0) return true;
  for (const Dialog& c : d.children()) {
    if (has_arrows(c)) return true;
  }
  return false;
}

inline bool uses_mnemonic(const Dialog& d, Mnemonic m) {
  if (d.is_node() && normal_form(d.mnemonic()) == normal_form(m)) return true;
  for (const Dialog& c : d.children()) {
    if (uses_mnemonic(c, m)) return true;
  }
  return false;
}

inline unsigned total_arrows(const Dialog& d) {
  unsigned n = d.arrows();
  for (const Dialog& c : d.children()) n += total_arrows(c);
  return n;
}

/// Subtree at `path`; throws std::out_of_range for a bad path.
inline const Dialog& subtree(const Dialog& d, const NodePath& path) {
  const Dialog* cur = &d;
  for (std::size_t i : path) {
    if (i >= cur->children().size()) throw std::out_of_range("bad node path " + path_to_string(path));
    cur = &cur->children()[i];
  }
  return *cur;
}

/// Copy of `d` with the subtree at `path` replaced.
inline Dialog replace_at(const Dialog& d, const NodePath& path, std::size_t depth, const Dialog& with) {
  if (depth == path.size()) return with;
  std::vector<Dialog> kids(d.children().begin(), d.children().end());
  kids.at(path[depth]) = replace_at(kids[path[depth]], path, depth + 1, with);
  if (d.is_union()) return Dialog::alt(kids[0], kids[1]);
  return d.with_children(std::move(kids));
}

inline Dialog replace_at(const Dialog& d, const NodePath& path, const Dialog& with) {
  return replace_at(d, path, 0, with);
}

struct DialogHash {
  std::size_t operator()(const Dialog& d) const noexcept { return d.hash(); }
};

}  // namespace weave
