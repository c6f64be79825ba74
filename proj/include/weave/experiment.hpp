#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "weave/episodes.hpp"
#include "weave/generator.hpp"
#include "weave/miner.hpp"

namespace weave {

/// Mean size. Throws on an empty set.
inline double verbosity(std::span<const std::size_t> sizes) {
  if (sizes.empty()) throw std::invalid_argument("verbosity of an empty set");
  double total = 0;
  for (std::size_t s : sizes) total += static_cast<double>(s);
  return total / static_cast<double>(sizes.size());
}

struct SampleResult {
  std::uint64_t seed = 0;
  Dialog expr;
  std::size_t spec_size = 0;   // episodes
  std::size_t union_size = 0;  // mined expressions
  bool verified = false;
};

using Histogram = std::map<std::size_t, std::size_t>;

struct ExperimentReport {
  std::size_t n = 0;
  double verb_L1 = 0;
  double verb_L2 = 0;
  double verb_L3 = 0;
  double factor_orig = 0;
  double factor_arrow = 0;
  double factor_total = 0;
  double compressible_fraction = 0;
  std::pair<std::size_t, std::size_t> max_compression;  // (spec size, union size)
  std::uint64_t max_compression_seed = 0;
  Histogram l1_histogram;
  Histogram l2_histogram;
  std::vector<SampleResult> samples;
};

inline std::string histogram_csv(const Histogram& h) {
  std::string out = "bin,count\n";
  for (const auto& [bin, count] : h) out += std::to_string(bin) + "," + std::to_string(count) + "\n";
  return out;
}

struct ExperimentOptions {
  MineOptions mine;
  std::size_t threads = 0;  // 0: hardware concurrency
};

namespace detail {

inline SampleResult run_sample(GenConfig cfg, std::uint64_t seed, const MineOptions& mopt) {
  cfg.seed = seed;
  SampleResult r;
  r.seed = seed;
  r.expr = generate_random(cfg);
  const EnumeratedSpec spec = enumerate(r.expr, {.cap = mopt.cap});
  const std::vector<Dialog> mined = mine(spec, mopt);
  r.spec_size = spec.size();
  r.union_size = mined.size();
  r.verified = enumerate_union(mined, {.cap = mopt.cap}).episodes == spec.episodes;
  return r;
}

}  // namespace detail

/// Generate n expressions (seeds cfg.seed .. cfg.seed+n-1), enumerate, mine,
/// verify each mined union, and aggregate. Throws if any union is unsound.
inline ExperimentReport run_experiment(const GenConfig& cfg, std::size_t n, const ExperimentOptions& opt = {}) {
  if (n == 0) throw std::invalid_argument("run_experiment needs n >= 1");
  std::vector<SampleResult> results(n);
  std::size_t workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < n; i = next++) {
            results[i] = detail::run_sample(cfg, cfg.seed + i, opt.mine);
          }
        } catch (...) {
          errors[w] = std::current_exception();
          next = n;
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentReport rep;
  rep.n = n;
  std::vector<std::size_t> l1, l2, l3;
  std::size_t compressible = 0;
  double best_ratio = -1;
  for (const SampleResult& r : results) {
    if (!r.verified) {
      throw std::logic_error("mined union for seed " + std::to_string(r.seed) + " does not match its spec");
    }
    l1.push_back(r.spec_size);
    l2.push_back(r.union_size);
    l3.push_back(1);
    ++rep.l1_histogram[r.spec_size];
    ++rep.l2_histogram[r.union_size];
    if (r.union_size < r.spec_size) ++compressible;
    const double ratio = static_cast<double>(r.spec_size) / static_cast<double>(r.union_size);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      rep.max_compression = {r.spec_size, r.union_size};
      rep.max_compression_seed = r.seed;
    }
  }
  rep.verb_L1 = verbosity(l1);
  rep.verb_L2 = verbosity(l2);
  rep.verb_L3 = verbosity(l3);
  rep.factor_orig = rep.verb_L1 / rep.verb_L2;
  rep.factor_arrow = rep.verb_L2 / rep.verb_L3;
  rep.factor_total = rep.verb_L1 / rep.verb_L3;
  rep.compressible_fraction = static_cast<double>(compressible) / static_cast<double>(n);
  rep.samples = std::move(results);
  return rep;
}

inline nlohmann::json report_json(const ExperimentReport& r, bool with_samples = false) {
  auto hist = [](const Histogram& h) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [bin, count] : h) a.push_back({{"bin", bin}, {"count", count}});
    return a;
  };
  nlohmann::json j = {
      {"n", r.n},
      {"verb_L1", r.verb_L1},
      {"verb_L2", r.verb_L2},
      {"verb_L3", r.verb_L3},
      {"factor_orig", r.factor_orig},
      {"factor_arrow", r.factor_arrow},
      {"factor_total", r.factor_total},
      {"compressible_fraction", r.compressible_fraction},
      {"max_compression", {{"spec_size", r.max_compression.first}, {"union_size", r.max_compression.second},
                           {"seed", r.max_compression_seed}}},
      {"l1_histogram", hist(r.l1_histogram)},
      {"l2_histogram", hist(r.l2_histogram)},
  };
  if (with_samples) {
    nlohmann::json s = nlohmann::json::array();
    for (const SampleResult& x : r.samples) {
      s.push_back({{"seed", x.seed}, {"expr", print_expr(x.expr)}, {"spec_size", x.spec_size},
                   {"union_size", x.union_size}});
    }
    j["samples"] = std::move(s);
  }
  return j;
}

inline std::string report_text(const ExperimentReport& r) {
  std::ostringstream os;
  os.precision(4);
  os << "samples               " << r.n << "\n"
     << "verb(L1) episodes     " << r.verb_L1 << "\n"
     << "verb(L2) unions       " << r.verb_L2 << "\n"
     << "verb(L3) augmented    " << r.verb_L3 << "\n"
     << "factor L1/L2          " << r.factor_orig << "\n"
     << "factor L2/L3          " << r.factor_arrow << "\n"
     << "factor L1/L3          " << r.factor_total << "\n"
     << "compressible          " << r.compressible_fraction * 100 << "%\n"
     << "max compression       " << r.max_compression.first << " -> " << r.max_compression.second << " (seed "
     << r.max_compression_seed << ")\n";
  return os.str();
}

}  // namespace weave
