#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weave/dialog.hpp"
#include "weave/simplify.hpp"
#include "weave/syntax.hpp"

namespace weave {

/// One level of a one-hole expression: m[left..., @, right...].
struct Hole {
  Mnemonic mnemonic;
  std::vector<Dialog> left;
  std::vector<Dialog> right;

  Dialog fill(const Dialog& d) const {
    std::vector<Dialog> kids = left;
    kids.push_back(d);
    kids.insert(kids.end(), right.begin(), right.end());
    return Dialog::node(mnemonic, std::move(kids));
  }

  friend bool operator==(const Hole&, const Hole&) = default;
  friend std::strong_ordering operator<=>(const Hole& a, const Hole& b) {
    if (auto c = a.mnemonic <=> b.mnemonic; c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(a.left.begin(), a.left.end(), b.left.begin(), b.left.end());
        c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(a.right.begin(), a.right.end(), b.right.begin(), b.right.end());
  }
};

/// A dialog constructor, reified. Either a constant function (the stack
/// bottom is `const ~`) or a chain of holes, outermost first, applied
/// innermost first with simplification after each level.
class DialogContext {
 public:
  static DialogContext terminal() { return constant(Dialog::empty()); }

  static DialogContext constant(Dialog value) {
    DialogContext c;
    c.constant_ = true;
    c.value_ = std::move(value);
    return c;
  }

  static DialogContext of(Hole h) {
    DialogContext c;
    c.holes_.push_back(std::move(h));
    return c;
  }

  static DialogContext chain(std::vector<Hole> holes) {
    DialogContext c;
    c.holes_ = std::move(holes);
    return c;
  }

  bool is_constant() const noexcept { return constant_; }
  bool is_terminal() const noexcept { return constant_ && value_.is_empty(); }
  const Dialog& value() const noexcept { return value_; }
  const std::vector<Hole>& holes() const noexcept { return holes_; }

  Dialog apply(const Dialog& d) const {
    if (constant_) return value_;
    Dialog cur = d;
    for (auto it = holes_.rbegin(); it != holes_.rend(); ++it) cur = canonical(it->fill(cur));
    return cur;
  }

  /// outer . inner
  friend DialogContext compose(const DialogContext& outer, const DialogContext& inner) {
    if (outer.constant_) return outer;
    if (inner.constant_) return constant(outer.apply(inner.value_));
    DialogContext c = outer;
    c.holes_.insert(c.holes_.end(), inner.holes_.begin(), inner.holes_.end());
    return c;
  }

  /// The context as an expression with `@` for the hole, or `const <expr>`.
  std::string to_string() const {
    if (constant_) return "const " + print_expr(value_);
    Dialog cur = Dialog::atom(std::string(kHoleName));
    for (auto it = holes_.rbegin(); it != holes_.rend(); ++it) cur = it->fill(cur);
    return print_expr(cur);
  }

  friend bool operator==(const DialogContext&, const DialogContext&) = default;
  friend std::strong_ordering operator<=>(const DialogContext& a, const DialogContext& b) {
    if (auto c = a.constant_ <=> b.constant_; c != 0) return c;
    if (a.constant_) return a.value_ <=> b.value_;
    return std::lexicographical_compare_three_way(a.holes_.begin(), a.holes_.end(), b.holes_.begin(),
                                                  b.holes_.end());
  }

 private:
  bool constant_ = false;
  Dialog value_;
  std::vector<Hole> holes_;
};

namespace detail {
inline std::size_t count_holes(const Dialog& d) {
  if (d.is_atom()) return d.name() == kHoleName ? 1 : 0;
  std::size_t n = 0;
  for (const Dialog& c : d.children()) n += count_holes(c);
  return n;
}
}  // namespace detail

/// Inverse of DialogContext::to_string.
inline DialogContext parse_context(std::string_view text) {
  constexpr std::string_view kConst = "const";
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  if (t.substr(0, kConst.size()) == kConst && t.size() > kConst.size() &&
      std::isspace(static_cast<unsigned char>(t[kConst.size()]))) {
    return DialogContext::constant(parse_expr(t.substr(kConst.size()), {.validate = false, .normalize = false}));
  }
  const Dialog d = parse_expr_raw(t, "<context>", true);
  if (detail::count_holes(d) != 1) throw std::invalid_argument("a context needs exactly one '@'");
  std::vector<Hole> holes;
  const Dialog* cur = &d;
  while (!cur->is_atom()) {
    if (!cur->is_node() || cur->arrows() > 0) {
      throw std::invalid_argument("the '@' must sit beneath arrow-free mnemonics only");
    }
    const auto kids = cur->children();
    std::size_t i = 0;
    while (detail::count_holes(kids[i]) == 0) ++i;
    holes.push_back({cur->mnemonic(), std::vector<Dialog>(kids.begin(), kids.begin() + static_cast<std::ptrdiff_t>(i)),
                     std::vector<Dialog>(kids.begin() + static_cast<std::ptrdiff_t>(i) + 1, kids.end())});
    cur = &kids[i];
  }
  if (holes.empty()) throw std::invalid_argument("a context needs a mnemonic around the '@'");
  return DialogContext::chain(std::move(holes));
}

}  // namespace weave
