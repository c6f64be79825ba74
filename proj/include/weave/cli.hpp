#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weave/experiment.hpp"
#include "weave/http.hpp"
#include "weave/weave.hpp"

namespace weave {

namespace detail {

inline std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

// An expression argument is literal text, or a path to an existing .dlg file.
inline Dialog expr_arg(const std::string& arg, const std::string& origin = "<argument>") {
  if (arg.ends_with(".dlg") && std::filesystem::exists(arg)) return parse_expr(slurp(arg), {}, arg);
  if (arg == "-") return parse_expr(slurp(arg), {}, "<stdin>");
  return parse_expr(arg, {}, origin);
}

inline void write_file(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

}  // namespace detail

/// The command-line tool. 0 on success, 1 on a semantic negative, 2 on a
/// usage or input error.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"weave: dialog expressions, staging and mining"};
  app.require_subcommand(1);
  std::size_t cap = kDefaultCap;
  bool strict = false;
  app.add_option("--cap", cap, "Maximum solicitations for enumeration")->capture_default_str();
  app.add_flag("--strict-complete", strict, "Require every frontier state to be able to finish");

  std::string expr_text, second_text, input_path;
  bool trace = false;

  auto* parse_cmd = app.add_subcommand("parse", "Parse, validate and print an expression");
  parse_cmd->add_option("expr", expr_text, "Expression or .dlg file")->required();

  auto* canon_cmd = app.add_subcommand("canon", "Print the canonical form");
  canon_cmd->add_option("expr", expr_text, "Expression or .dlg file")->required();
  canon_cmd->add_flag("--trace", trace, "Print each rewrite step");

  auto* stage_cmd = app.add_subcommand("stage", "Stage one utterance");
  stage_cmd->add_option("expr", expr_text, "Expression or .dlg file")->required();
  stage_cmd->add_option("utterance", second_text, "Utterance, e.g. size or {size, blend}")->required();

  auto* run_cmd = app.add_subcommand("run", "Test an episode for membership");
  run_cmd->add_option("expr", expr_text, "Expression or .dlg file")->required();
  run_cmd->add_option("episode", second_text, "Episode, e.g. \"<a b c>\"")->required();

  auto* enum_cmd = app.add_subcommand("enum", "Print every episode, one per line");
  enum_cmd->add_option("expr", expr_text, "Expression or .dlg file")->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "Compare two expressions by their episodes");
  equiv_cmd->add_option("left", expr_text, "Expression or .dlg file")->required();
  equiv_cmd->add_option("right", second_text, "Expression or .dlg file")->required();

  MineOptions mopt;
  auto* mine_cmd = app.add_subcommand("mine", "Compress an .eps spec into a union of expressions");
  mine_cmd->add_option("spec", input_path, "Episode file, or - for standard input")->required();
  mine_cmd->add_option("--depth", mopt.max_depth, "Candidate nesting depth")->capture_default_str();

  GenConfig gcfg;
  bool unbalanced = false;
  std::size_t count = 1;
  auto add_gen_options = [&](CLI::App* c) {
    c->add_option("--seed", gcfg.seed, "Random seed")->capture_default_str();
    c->add_option("--names", gcfg.names, "Solicitations per expression")->capture_default_str()->check(
        CLI::PositiveNumber);
    c->add_option("--arrow-prob", gcfg.arrow_prob, "Arrow probability on atoms")->capture_default_str()->check(
        CLI::Range(0.0, 1.0));
    c->add_flag("--unbalanced", unbalanced, "Split children uniformly instead of evenly");
  };
  auto* gen_cmd = app.add_subcommand("gen", "Generate random augmented expressions");
  add_gen_options(gen_cmd);
  gen_cmd->add_option("--count", count, "How many, one per line (seeds seed..seed+count-1)")->capture_default_str();

  std::size_t n = 100;
  std::size_t threads = 0;
  std::string json_path, hist_l1, hist_l2;
  bool with_samples = false;
  auto* eval_cmd = app.add_subcommand("eval", "Run the generate/enumerate/mine experiment");
  add_gen_options(eval_cmd);
  eval_cmd->add_option("-n", n, "Sample count")->capture_default_str()->check(CLI::PositiveNumber);
  eval_cmd->add_option("--threads", threads, "Worker threads (0: all cores)");
  eval_cmd->add_option("--json", json_path, "Write the JSON report here (- for standard output)");
  eval_cmd->add_flag("--samples", with_samples, "Include per-sample rows in the JSON report");
  eval_cmd->add_option("--hist-l1", hist_l1, "Write the spec-size histogram CSV here");
  eval_cmd->add_option("--hist-l2", hist_l2, "Write the union-size histogram CSV here");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP/JSON service");
  serve_cmd->add_option("--port", port, "Port")->capture_default_str();
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*parse_cmd) {
      const Dialog d = detail::expr_arg(expr_text);
      for (const Violation& w : validate(d).warnings) err << "warning: " << w.to_string() << "\n";
      out << print_expr(d) << "\n";
      return 0;
    }
    if (*canon_cmd) {
      const RewriteTrace t = canonicalize(detail::expr_arg(expr_text));
      if (trace) {
        for (const RewriteStep& s : t.steps) out << s.to_string() << "\n";
      }
      out << print_expr(t.result) << "\n";
      return 0;
    }
    if (*stage_cmd) {
      const Dialog d = detail::expr_arg(expr_text);
      const Utterance u = parse_utterance(second_text, "<utterance>");
      if (!has_arrows(d) && !uses_mnemonic(d, Mnemonic::W)) {
        const StagingOutcome o = stage(d, u);
        if (const auto* r = std::get_if<Rejected>(&o)) {
          out << "REJECTED\n";
          err << reject_code_name(r->code) << ": " << r->reason << "\n";
          return 1;
        }
        out << print_expr(std::get<Advanced>(o).next) << "\n";
        return 0;
      }
      const Frontier f = stage_response(init_frontier(d), u);
      if (f.empty()) {
        out << "REJECTED\n";
        err << "no configuration consumes " << print_utterance(u) << "\n";
        return 1;
      }
      for (const ReductionState& s : f) out << s.to_string() << "\n";
      return 0;
    }
    if (*run_cmd) {
      const Dialog d = detail::expr_arg(expr_text);
      const bool member = membership(d, parse_episode(second_text, "<episode>"), strict);
      out << (member ? "MEMBER" : "NOT-MEMBER") << "\n";
      return member ? 0 : 1;
    }
    if (*enum_cmd) {
      out << print_spec(enumerate(detail::expr_arg(expr_text), {.cap = cap, .strict_complete = strict}));
      return 0;
    }
    if (*equiv_cmd) {
      const EnumerateOptions opt{.cap = cap, .strict_complete = strict};
      const EnumeratedSpec a = enumerate(detail::expr_arg(expr_text, "<left>"), opt);
      const EnumeratedSpec b = enumerate(detail::expr_arg(second_text, "<right>"), opt);
      if (a.episodes == b.episodes) {
        out << "EQUIVALENT\n";
        return 0;
      }
      const Episode w = *difference_witness(a, b);
      out << "DIFFER\n" << print_episode(w) << " only in " << (a.episodes.count(w) ? "left" : "right") << "\n";
      return 1;
    }
    if (*mine_cmd) {
      mopt.cap = cap;
      const EnumeratedSpec spec = parse_spec_file(detail::slurp(input_path), input_path);
      for (const Dialog& d : mine(spec, mopt)) out << print_expr(d) << "\n";
      return 0;
    }
    gcfg.balanced = !unbalanced;
    if (*gen_cmd) {
      const std::uint64_t base = gcfg.seed;
      for (std::size_t i = 0; i < count; ++i) {
        gcfg.seed = base + i;
        out << print_expr(generate_random(gcfg)) << "\n";
      }
      return 0;
    }
    if (*eval_cmd) {
      ExperimentOptions eopt;
      eopt.threads = threads;
      eopt.mine.cap = cap;
      const ExperimentReport r = run_experiment(gcfg, n, eopt);
      if (json_path != "-") out << report_text(r);
      if (!json_path.empty()) detail::write_file(json_path, report_json(r, with_samples).dump(2) + "\n", out);
      if (!hist_l1.empty()) detail::write_file(hist_l1, histogram_csv(r.l1_histogram), out);
      if (!hist_l2.empty()) detail::write_file(hist_l2, histogram_csv(r.l2_histogram), out);
      return 0;
    }
    if (*serve_cmd) {
      httplib::Server server;
      mount_service(server);
      err << "listening on " << host << ":" << port << "\n";
      return server.listen(host, port) ? 0 : 2;
    }
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace weave
