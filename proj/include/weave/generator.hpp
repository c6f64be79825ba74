#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "weave/dialog.hpp"

namespace weave {

struct GenConfig {
  std::size_t names = 5;
  double arrow_prob = 0.5;
  Mnemonic root = Mnemonic::W;
  std::vector<Mnemonic> inner = {Mnemonic::C, Mnemonic::SPEPrime, Mnemonic::W};
  bool balanced = true;  // split names evenly-ish between children
  std::uint64_t seed = 0;
};

namespace detail {

// mt19937_64 output is specified by the standard; the distributions are not,
// so bounded draws and coin flips are done by hand for portable replay.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = rng_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  bool coin(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 rng_;
};

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), draw_(cfg.seed) {}

  Dialog run() {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= cfg_.names; ++i) names.push_back("q" + std::to_string(i));
    return build(names, cfg_.root, {});
  }

 private:
  // `ancestors` lists enclosing mnemonics, innermost last.
  Dialog build(const std::vector<std::string>& names, Mnemonic m, std::vector<Mnemonic> ancestors) {
    const std::size_t n = names.size();
    const std::size_t k = n == 1 ? 1 : 2 + draw_.below(n - 1);
    std::vector<std::vector<std::string>> bins = split(names, k);
    ancestors.push_back(m);
    std::vector<Dialog> kids;
    for (auto& bin : bins) {
      if (bin.size() == 1) {
        // One arrow lands on the grandparent, so only a W there may take it.
        const bool arrowed = draw_.coin(cfg_.arrow_prob);
        const bool target_ok = ancestors.size() >= 2 && ancestors[ancestors.size() - 2] == Mnemonic::W;
        kids.push_back(Dialog::atom(bin[0], arrowed && target_ok ? 1 : 0));
      } else {
        const Mnemonic child = cfg_.inner[draw_.below(cfg_.inner.size())];
        kids.push_back(build(bin, child, ancestors));
      }
    }
    return Dialog::node(m, std::move(kids));
  }

  std::vector<std::vector<std::string>> split(const std::vector<std::string>& names, std::size_t k) {
    std::vector<std::vector<std::string>> bins(k);
    if (cfg_.balanced) {
      // Symmetric multinomial conditioned on no empty bin.
      while (true) {
        for (auto& b : bins) b.clear();
        for (const std::string& s : names) bins[draw_.below(k)].push_back(s);
        bool full = true;
        for (auto& b : bins) full = full && !b.empty();
        if (full) return bins;
      }
    }
    // Uniform composition: pick k-1 distinct cut points.
    std::vector<bool> cut(names.size() - 1, false);
    for (std::size_t chosen = 0; chosen + 1 < k;) {
      const std::size_t c = draw_.below(cut.size());
      if (!cut[c]) {
        cut[c] = true;
        ++chosen;
      }
    }
    std::size_t b = 0;
    for (std::size_t i = 0; i < names.size(); ++i) {
      bins[b].push_back(names[i]);
      if (i < cut.size() && cut[i]) ++b;
    }
    return bins;
  }

  GenConfig cfg_;
  Draw draw_;
};

}  // namespace detail

/// A random W-rooted expression over q1..qn. Deterministic per seed.
inline Dialog generate_random(const GenConfig& cfg) { return detail::Generator(cfg).run(); }

}  // namespace weave
