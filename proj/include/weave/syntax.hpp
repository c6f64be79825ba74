#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weave/dialog.hpp"
#include "weave/utterance.hpp"
#include "weave/validate.hpp"

namespace weave {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string origin, std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        origin_(std::move(origin)),
        line_(line),
        column_(column) {}

  const std::string& origin() const noexcept { return origin_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string origin_;
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport r)
      : std::runtime_error(describe(r)), report_(std::move(r)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  static std::string describe(const ValidationReport& r) {
    std::string out = "invalid dialog expression";
    for (const Violation& v : r.violations) out += "\n  " + v.to_string();
    return out;
  }
  ValidationReport report_;
};

struct ParseOptions {
  bool validate = true;
  bool normalize = true;
  bool allow_hole = false;  // accept `@` as a placeholder atom (contexts only)
};

inline constexpr std::string_view kHoleName = "@";

namespace detail {

inline bool is_name_start(char c) noexcept { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_name_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_';
}
inline bool is_bare_value_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_' || c == '.' || c == '+' ||
         c == ':' || c == '/' || c == '?';
}

class Scanner {
 public:
  Scanner(std::string_view text, std::string origin, std::size_t line = 1)
      : text_(text), origin_(std::move(origin)), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(origin_, line_, col_, what); }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char peek_raw() const noexcept { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      const char got = peek();
      fail(std::string("expected '") + c + "' but found " + (got ? std::string("'") + got + "'" : "end of input"));
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  // name := letter (letter|digit|-|_)* `?`?
  std::string name() {
    skip_space();
    if (!is_name_start(peek_raw())) fail("expected a solicitation name");
    std::string out;
    while (is_name_char(peek_raw())) {
      out += peek_raw();
      advance();
    }
    if (peek_raw() == '?') {
      out += '?';
      advance();
    }
    return out;
  }

  unsigned arrows() {
    unsigned n = 0;
    while (peek() == '^') {
      advance();
      ++n;
    }
    return n;
  }

  std::string value() {
    skip_space();
    std::string out;
    if (peek_raw() == '"') {
      advance();
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated quoted value");
        char c = peek_raw();
        advance();
        if (c == '"') break;
        if (c == '\\') {
          if (pos_ >= text_.size()) fail("unterminated quoted value");
          c = peek_raw();
          advance();
        }
        out += c;
      }
      return out;
    }
    while (is_bare_value_char(peek_raw())) {
      out += peek_raw();
      advance();
    }
    if (out.empty()) fail("expected a value after '='");
    return out;
  }

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return col_; }
  const std::string& origin() const noexcept { return origin_; }

 private:
  std::string_view text_;
  std::string origin_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_ = 1;
};

class ExprParser {
 public:
  ExprParser(Scanner& s, bool allow_hole) : s_(s), allow_hole_(allow_hole) {}

  // expr := primary (`|` primary)*   (left-associative)
  Dialog expr() {
    Dialog acc = primary();
    while (s_.accept('|')) acc = Dialog::alt(std::move(acc), primary());
    return acc;
  }

 private:
  Dialog primary() {
    const char c = s_.peek();
    if (c == '~') {
      s_.advance();
      if (s_.peek() == '^') s_.fail("the empty dialog cannot carry arrows");
      return Dialog::empty();
    }
    if (c == '@') {
      if (!allow_hole_) s_.fail("unexpected '@'");
      s_.advance();
      return Dialog::atom(std::string(kHoleName));
    }
    if (c == '(') {
      s_.advance();
      Dialog inner = expr();
      s_.expect(')');
      const unsigned k = s_.arrows();
      if (k == 0) return inner;
      if (inner.is_empty() || inner.is_union()) s_.fail("arrows may decorate only a solicitation or a mnemonic");
      return inner.with_arrows(inner.arrows() + k);
    }
    if (!is_name_start(c)) {
      s_.fail(c ? std::string("unexpected '") + c + "'" : "unexpected end of input");
    }
    const std::size_t line = s_.line();
    const std::size_t col = s_.column();
    std::string word = s_.name();
    const bool suffixed = s_.peek_raw() == '*' || s_.peek_raw() == '\'';
    if (suffixed && word.back() != '?') {
      word += s_.peek_raw();
      s_.advance();
    }
    const unsigned k = s_.arrows();
    if (s_.peek() == '[' || suffixed) {
      const auto m = mnemonic_from_spelling(word);
      if (!m) throw ParseError(s_.origin(), line, col, "unknown mnemonic '" + word + "'");
      s_.expect('[');
      std::vector<Dialog> kids;
      if (!s_.accept(']')) {
        do {
          kids.push_back(expr());
        } while (s_.accept(','));
        s_.expect(']');
      }
      return Dialog::node(*m, std::move(kids), k);
    }
    return Dialog::atom(std::move(word), k);
  }

  Scanner& s_;
  bool allow_hole_;
};

inline void print_value(std::string& out, const std::string& v) {
  bool bare = !v.empty();
  for (char c : v) bare = bare && is_bare_value_char(c);
  if (bare) {
    out += v;
    return;
  }
  out += '"';
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

inline void print_expr_into(std::string& out, const Dialog& d) {
  switch (d.kind()) {
    case Kind::Empty:
      out += '~';
      return;
    case Kind::Atom:
      out += d.name();
      out.append(d.arrows(), '^');
      return;
    case Kind::Union:
      print_expr_into(out, d.left());
      out += " | ";
      if (d.right().is_union()) {
        out += '(';
        print_expr_into(out, d.right());
        out += ')';
      } else {
        print_expr_into(out, d.right());
      }
      return;
    case Kind::Node: {
      out += spelling(d.mnemonic());
      out.append(d.arrows(), '^');
      out += '[';
      bool first = true;
      for (const Dialog& c : d.children()) {
        if (!first) out += ", ";
        first = false;
        print_expr_into(out, c);
      }
      out += ']';
      return;
    }
  }
}

inline Utterance parse_utterance_from(Scanner& s) {
  Utterance u;
  auto item = [&] {
    const std::size_t line = s.line();
    const std::size_t col = s.column();
    std::string n = s.name();
    if (!u.answers.insert(n).second) throw ParseError(s.origin(), line, col, "duplicate response '" + n + "'");
    if (s.accept('=')) u.payloads[n] = s.value();
  };
  if (s.accept('{')) {
    do {
      item();
    } while (s.accept(','));
    s.expect('}');
  } else {
    item();
  }
  return u;
}

inline Episode parse_episode_from(Scanner& s) {
  Episode e;
  NameSet seen;
  s.expect('<');
  while (!s.accept('>')) {
    if (s.at_end()) s.fail("unterminated episode");
    const std::size_t line = s.line();
    const std::size_t col = s.column();
    Utterance u = parse_utterance_from(s);
    for (const std::string& n : u.answers) {
      if (!seen.insert(n).second) throw ParseError(s.origin(), line, col, "'" + n + "' answered twice");
    }
    e.turns.push_back(std::move(u));
  }
  return e;
}

}  // namespace detail

/// Parses without validation or normalization.
inline Dialog parse_expr_raw(std::string_view text, const std::string& origin = "<inline>", bool allow_hole = false) {
  detail::Scanner s(text, origin);
  detail::ExprParser p(s, allow_hole);
  Dialog d = p.expr();
  if (!s.at_end()) s.fail(std::string("unexpected '") + s.peek() + "' after expression");
  return d;
}

inline Dialog parse_expr(std::string_view text, const ParseOptions& opt = {}, const std::string& origin = "<inline>") {
  Dialog d = parse_expr_raw(text, origin, opt.allow_hole);
  if (opt.validate) {
    ValidationReport r = validate(d);
    if (!r.ok()) throw ValidationError(std::move(r));
  }
  return opt.normalize ? normalize_mnemonics(d) : d;
}

inline std::string print_expr(const Dialog& d) {
  std::string out;
  detail::print_expr_into(out, d);
  return out;
}

/// Utterances print braceless when they hold a single response.
inline std::string print_utterance(const Utterance& u) {
  std::string out;
  const bool braces = u.answers.size() != 1;
  if (braces) out += '{';
  bool first = true;
  for (const std::string& n : u.answers) {
    if (!first) out += ", ";
    first = false;
    out += n;
    if (auto it = u.payloads.find(n); it != u.payloads.end()) {
      out += '=';
      detail::print_value(out, it->second);
    }
  }
  if (braces) out += '}';
  return out;
}

inline Utterance parse_utterance(std::string_view text, const std::string& origin = "<inline>") {
  detail::Scanner s(text, origin);
  Utterance u = detail::parse_utterance_from(s);
  if (!s.at_end()) s.fail("trailing input after utterance");
  return u;
}

inline std::string print_turns(const std::vector<Utterance>& turns) {
  std::string out;
  for (const Utterance& u : turns) {
    if (!out.empty()) out += ' ';
    out += print_utterance(u);
  }
  return out;
}

inline std::string print_episode(const Episode& e) { return "<" + print_turns(e.turns) + ">"; }

inline Episode parse_episode(std::string_view text, const std::string& origin = "<inline>") {
  detail::Scanner s(text, origin);
  Episode e = detail::parse_episode_from(s);
  if (!s.at_end()) s.fail("trailing input after episode");
  return e;
}

/// Whitespace-separated utterances without the angle brackets.
inline std::vector<Utterance> parse_turns(std::string_view text, const std::string& origin = "<inline>") {
  detail::Scanner s(text, origin);
  std::vector<Utterance> out;
  while (!s.at_end()) out.push_back(detail::parse_utterance_from(s));
  return out;
}

/// One episode per line; blank lines and `#` comments are ignored.
inline EnumeratedSpec parse_spec_file(std::string_view text, const std::string& origin = "<inline>") {
  EnumeratedSpec spec;
  std::size_t line = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    detail::Scanner s(text.substr(start, end - start), origin, line);
    if (!s.at_end()) {
      Episode e = detail::parse_episode_from(s);
      if (!s.at_end()) s.fail("trailing input after episode");
      spec.insert(e);
    }
    ++line;
    start = end + 1;
  }
  return spec;
}

inline std::string print_spec(const EnumeratedSpec& spec) {
  std::string out;
  for (const Episode& e : spec.episodes) out += print_episode(e) + "\n";
  return out;
}

}  // namespace weave
