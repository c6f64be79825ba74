#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "weave/reduction.hpp"
#include "weave/utterance.hpp"

namespace weave {

inline constexpr std::size_t kDefaultCap = 8;

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t names, std::size_t cap)
      : std::runtime_error("dialog poses " + std::to_string(names) + " solicitations; the enumeration cap is " +
                           std::to_string(cap)) {}
};

struct EnumerateOptions {
  std::size_t cap = kDefaultCap;
  bool strict_complete = false;
  CandidateProbe probe = CandidateProbe::Exact;
};

namespace detail {

// Frontiers reachable from the start, with the utterances between them.
// Episodes are the paths from node 0 to complete nodes.
struct EpisodeGraph {
  struct Node {
    bool complete = false;
    std::vector<std::pair<Utterance, std::size_t>> edges;
  };
  std::vector<Node> nodes;
};

inline std::size_t explore(const Frontier& f, const NameSet& universe, const EnumerateOptions& opt,
                           std::map<Frontier, std::size_t>& index, EpisodeGraph& g) {
  if (auto it = index.find(f); it != index.end()) return it->second;
  const std::size_t id = g.nodes.size();
  index.emplace(f, id);
  g.nodes.emplace_back();
  g.nodes[id].complete = is_complete(f, opt.strict_complete);
  for (const Utterance& u : candidates(f, universe, opt.probe)) {
    const std::size_t next = explore(stage_response(f, u), universe, opt, index, g);
    g.nodes[id].edges.emplace_back(u, next);
  }
  return id;
}

inline void collect_paths(const EpisodeGraph& g, std::size_t at, std::vector<Utterance>& prefix,
                          std::set<Episode>& out) {
  const auto& node = g.nodes[at];
  if (node.complete) out.insert(Episode(prefix));
  for (const auto& [u, next] : node.edges) {
    prefix.push_back(u);
    collect_paths(g, next, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// The exact episode set of `d`. Throws CapExceeded beyond the cap.
inline EnumeratedSpec enumerate(const Dialog& d, const EnumerateOptions& opt = {}) {
  EnumeratedSpec spec;
  spec.universe = solicitation_set(d);
  if (spec.universe.size() > opt.cap) throw CapExceeded(spec.universe.size(), opt.cap);
  std::map<Frontier, std::size_t> index;
  detail::EpisodeGraph g;
  detail::explore(init_frontier(d), spec.universe, opt, index, g);
  std::vector<Utterance> prefix;
  detail::collect_paths(g, 0, prefix, spec.episodes);
  return spec;
}

/// Extension of a union of expressions.
inline EnumeratedSpec enumerate_union(std::span<const Dialog> ds, const EnumerateOptions& opt = {}) {
  EnumeratedSpec out;
  for (const Dialog& d : ds) out = spec_union(out, enumerate(d, opt));
  return out;
}

inline bool equivalent(const Dialog& a, const Dialog& b, const EnumerateOptions& opt = {}) {
  return enumerate(a, opt).episodes == enumerate(b, opt).episodes;
}

/// An episode in exactly one of the two extensions, if they differ.
inline std::optional<Episode> difference_witness(const EnumeratedSpec& a, const EnumeratedSpec& b) {
  for (const Episode& e : a.episodes) {
    if (!b.episodes.count(e)) return e;
  }
  for (const Episode& e : b.episodes) {
    if (!a.episodes.count(e)) return e;
  }
  return std::nullopt;
}

}  // namespace weave
