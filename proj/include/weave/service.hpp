#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "weave/episodes.hpp"
#include "weave/miner.hpp"
#include "weave/reduction.hpp"
#include "weave/simplify.hpp"
#include "weave/syntax.hpp"
#include "weave/validate.hpp"

namespace weave {

using nlohmann::json;

struct ServiceResponse {
  int status = 200;
  json body;
};

/// Thrown by handlers for a malformed request; becomes a 400.
class BadRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json tree_json(const Dialog& d) {
  switch (d.kind()) {
    case Kind::Empty: return {{"kind", "empty"}};
    case Kind::Atom: return {{"kind", "atom"}, {"name", d.name()}, {"arrows", d.arrows()}};
    case Kind::Union: return {{"kind", "union"}, {"left", tree_json(d.left())}, {"right", tree_json(d.right())}};
    case Kind::Node: {
      json kids = json::array();
      for (const Dialog& c : d.children()) kids.push_back(tree_json(c));
      return {{"kind", "node"}, {"mnemonic", spelling(d.mnemonic())}, {"arrows", d.arrows()}, {"children", kids}};
    }
  }
  return nullptr;
}

inline json violations_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const Violation& v : vs) {
    out.push_back({{"rule", rule_id(v.rule)}, {"path", path_to_string(v.path)}, {"message", v.message}});
  }
  return out;
}

/// A session: the spec, the live frontier and the turns so far.
struct SessionSnapshot {
  std::string spec;
  Frontier frontier;
  std::vector<std::string> transcript;
  bool complete = false;
  bool strict = false;
};

inline json state_json(const ReductionState& s) {
  json stack = json::array();
  for (const DialogContext& c : s.stack) stack.push_back(c.to_string());
  json pending = json::array();
  for (const Utterance& u : s.pending) pending.push_back(print_utterance(u));
  return {{"stack", stack}, {"current", print_expr(s.current)}, {"pending", pending}};
}

inline json snapshot_json(const SessionSnapshot& s) {
  json frontier = json::array();
  for (const ReductionState& st : s.frontier) frontier.push_back(state_json(st));
  return {{"spec", s.spec},
          {"frontier", frontier},
          {"transcript", s.transcript},
          {"complete", s.complete},
          {"strict_complete", s.strict}};
}

namespace detail {

inline const json& field(const json& body, const char* key) {
  if (!body.is_object() || !body.contains(key)) throw BadRequest(std::string("missing field '") + key + "'");
  return body.at(key);
}

inline std::string string_field(const json& body, const char* key) {
  const json& v = field(body, key);
  if (!v.is_string()) throw BadRequest(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline bool bool_field(const json& body, const char* key, bool fallback) {
  if (!body.is_object() || !body.contains(key)) return fallback;
  const json& v = body.at(key);
  if (!v.is_boolean()) throw BadRequest(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

inline std::size_t cap_field(const json& body) {
  if (!body.is_object() || !body.contains("cap")) return kDefaultCap;
  const json& v = body.at("cap");
  if (!v.is_number_unsigned()) throw BadRequest("field 'cap' must be a non-negative integer");
  return v.get<std::size_t>();
}

inline ReductionState state_from_json(const json& j) {
  ReductionState s;
  for (const json& c : field(j, "stack")) s.stack.push_back(parse_context(c.get<std::string>()));
  s.current = parse_expr(string_field(j, "current"), {.validate = false, .normalize = false}, "<snapshot>");
  for (const json& u : field(j, "pending")) s.pending.push_back(parse_utterance(u.get<std::string>(), "<snapshot>"));
  return s;
}

inline SessionSnapshot snapshot_from_json(const json& j) {
  if (!j.is_object()) throw BadRequest("snapshot must be an object");
  SessionSnapshot s;
  s.spec = string_field(j, "spec");
  s.strict = bool_field(j, "strict_complete", false);
  try {
    for (const json& st : field(j, "frontier")) s.frontier.insert(state_from_json(st));
    for (const json& t : field(j, "transcript")) s.transcript.push_back(t.get<std::string>());
  } catch (const BadRequest&) {
    throw;
  } catch (const std::exception& e) {
    throw BadRequest(std::string("malformed snapshot: ") + e.what());
  }
  s.complete = bool_field(j, "complete", false);
  return s;
}

inline SessionSnapshot session_start(const std::string& spec, bool strict) {
  SessionSnapshot s;
  const Dialog d = parse_expr(spec, {}, "<spec>");
  s.spec = print_expr(d);
  s.strict = strict;
  s.frontier = init_frontier(d);
  s.complete = is_complete(s.frontier, strict);
  return s;
}

// Rebuilds the snapshot from spec and transcript; the frontier sent by the
// client must match.
inline SessionSnapshot replay_checked(const SessionSnapshot& given) {
  SessionSnapshot s = session_start(given.spec, given.strict);
  for (const std::string& t : given.transcript) {
    s.frontier = stage_response(s.frontier, parse_utterance(t, "<transcript>"));
    s.transcript.push_back(t);
  }
  s.complete = is_complete(s.frontier, s.strict);
  if (s.frontier != given.frontier) throw BadRequest("snapshot frontier does not match its transcript");
  return s;
}

inline json rejection_json(const Frontier& f, const Dialog& spec, const Utterance& u) {
  const NameSet live = live_names(f);
  const NameSet known = solicitation_set(spec);
  NameSet unknown;
  NameSet answered;
  for (const std::string& x : u.answers) {
    if (!known.count(x)) unknown.insert(x);
    else if (!live.count(x)) answered.insert(x);
  }
  std::string code;
  std::string reason;
  NameSet names = u.answers;
  if (!unknown.empty()) {
    code = reject_code_name(RejectCode::UnknownSolicitation);
    reason = "not a solicitation of this dialog";
    names = unknown;
  } else if (!answered.empty()) {
    code = "already-answered";
    reason = "already answered in this session";
    names = answered;
  } else if (u.answers.size() == 1) {
    code = reject_code_name(RejectCode::OutOfOrder);
    reason = "not answerable at this point";
  } else {
    code = reject_code_name(RejectCode::Grouping);
    reason = "these responses cannot be given together at this point";
  }
  return {{"error", "rejected"}, {"code", code}, {"names", json(std::vector<std::string>(names.begin(), names.end()))},
          {"reason", reason}, {"utterance", print_utterance(u)}};
}

inline std::vector<std::string> episode_strings(const EnumeratedSpec& s) {
  std::vector<std::string> out;
  for (const Episode& e : s.episodes) out.push_back(print_episode(e));
  return out;
}

}  // namespace detail

inline json handle_parse(const json& body) {
  const Dialog d = parse_expr(detail::string_field(body, "expr"));
  return {{"expr", print_expr(d)}, {"canonical", print_expr(canonical(d))}, {"tree", tree_json(d)},
          {"warnings", violations_json(validate(d).warnings)}};
}

inline json handle_canon(const json& body) {
  const Dialog d = parse_expr(detail::string_field(body, "expr"));
  const RewriteTrace t = canonicalize(d);
  json steps = json::array();
  for (const RewriteStep& s : t.steps) {
    steps.push_back({{"rule", rule_name(s.rule)}, {"path", path_to_string(s.path)}, {"before", print_expr(s.before)},
                     {"after", print_expr(s.after)}});
  }
  return {{"canonical", print_expr(t.result)}, {"tree", tree_json(t.result)}, {"steps", steps}};
}

inline json handle_enum(const json& body) {
  const Dialog d = parse_expr(detail::string_field(body, "expr"));
  const EnumeratedSpec s =
      enumerate(d, {.cap = detail::cap_field(body), .strict_complete = detail::bool_field(body, "strict_complete", false)});
  return {{"count", s.size()}, {"episodes", detail::episode_strings(s)}};
}

inline json handle_equiv(const json& body) {
  const Dialog a = parse_expr(detail::string_field(body, "left"), {}, "<left>");
  const Dialog b = parse_expr(detail::string_field(body, "right"), {}, "<right>");
  const EnumerateOptions opt{.cap = detail::cap_field(body)};
  const EnumeratedSpec ea = enumerate(a, opt);
  const EnumeratedSpec eb = enumerate(b, opt);
  json out = {{"equivalent", ea.episodes == eb.episodes}};
  if (auto w = difference_witness(ea, eb)) {
    out["witness"] = print_episode(*w);
    out["witness_in"] = ea.episodes.count(*w) ? "left" : "right";
  }
  return out;
}

inline json handle_mine(const json& body) {
  EnumeratedSpec spec;
  const json& eps = detail::field(body, "episodes");
  if (!eps.is_array()) throw BadRequest("field 'episodes' must be an array of strings");
  for (const json& e : eps) {
    if (!e.is_string()) throw BadRequest("field 'episodes' must be an array of strings");
    spec.insert(parse_episode(e.get<std::string>(), "<episodes>"));
  }
  MineOptions opt;
  opt.cap = detail::cap_field(body);
  json exprs = json::array();
  for (const Dialog& d : mine(spec, opt)) exprs.push_back(print_expr(d));
  return {{"union", exprs}, {"size", exprs.size()}, {"episodes", spec.size()}};
}

inline json handle_session_init(const json& body) {
  return snapshot_json(detail::session_start(detail::string_field(body, "spec"),
                                             detail::bool_field(body, "strict_complete", false)));
}

inline ServiceResponse handle_session_step(const json& body) {
  SessionSnapshot s = detail::replay_checked(detail::snapshot_from_json(detail::field(body, "snapshot")));
  const Utterance u = parse_utterance(detail::string_field(body, "utterance"), "<utterance>");
  Frontier next = stage_response(s.frontier, u);
  if (next.empty()) {
    return {409, detail::rejection_json(s.frontier, parse_expr(s.spec, {}, "<spec>"), u)};
  }
  s.frontier = std::move(next);
  s.transcript.push_back(print_utterance(u));
  s.complete = is_complete(s.frontier, s.strict);
  return {200, snapshot_json(s)};
}

inline json handle_session_candidates(const json& body) {
  const SessionSnapshot s = detail::replay_checked(detail::snapshot_from_json(detail::field(body, "snapshot")));
  const Dialog d = parse_expr(s.spec, {}, "<spec>");
  json out = json::array();
  for (const Utterance& u : candidates(s.frontier, solicitation_set(d))) out.push_back(print_utterance(u));
  return {{"candidates", out}, {"complete", s.complete}};
}

/// Routes a POST body to its handler. Every outcome, errors included, is a
/// JSON response with a status code.
inline ServiceResponse dispatch(const std::string& path, const std::string& body_text) {
  using Handler = std::function<ServiceResponse(const json&)>;
  auto plain = [](json (*f)(const json&)) { return Handler([f](const json& b) { return ServiceResponse{200, f(b)}; }); };
  static const std::map<std::string, Handler> routes = {
      {"/parse", plain(handle_parse)},
      {"/canon", plain(handle_canon)},
      {"/enum", plain(handle_enum)},
      {"/equiv", plain(handle_equiv)},
      {"/mine", plain(handle_mine)},
      {"/session/init", plain(handle_session_init)},
      {"/session/step", Handler(handle_session_step)},
      {"/session/candidates", plain(handle_session_candidates)},
  };
  auto it = routes.find(path);
  if (it == routes.end()) return {404, {{"error", "not-found"}, {"message", "no endpoint " + path}}};
  try {
    const json body = json::parse(body_text);
    return it->second(body);
  } catch (const json::exception& e) {
    return {400, {{"error", "malformed"}, {"message", e.what()}}};
  } catch (const BadRequest& e) {
    return {400, {{"error", "malformed"}, {"message", e.what()}}};
  } catch (const ParseError& e) {
    return {400, {{"error", "syntax"}, {"message", e.what()}, {"origin", e.origin()}, {"line", e.line()},
                  {"column", e.column()}}};
  } catch (const ValidationError& e) {
    return {422, {{"error", "invalid"}, {"message", e.what()}, {"violations", violations_json(e.report().violations)}}};
  } catch (const CapExceeded& e) {
    return {422, {{"error", "cap-exceeded"}, {"message", e.what()}}};
  }
}

}  // namespace weave
