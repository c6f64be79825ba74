#include <gtest/gtest.h>

#include <sstream>

#include "support/fixtures.hpp"
#include "weave/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "weave");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = weave::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, Parse) {
  const Outcome r = cli({"parse", "W[ C[a,b], c ]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "W[C[a, b], c]\n");
}

TEST(Cli, ParseWarning) {
  const Outcome r = cli({"parse", "C[a, b] | ~"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, ParseErrorExitsTwo) {
  const Outcome r = cli({"parse", "PE*[a"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1:6"), std::string::npos) << r.err;
}

TEST(Cli, ValidationErrorExitsTwo) { EXPECT_EQ(cli({"parse", "C[a, a]"}).code, 2); }

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"run", "C[a]"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, Canon) {
  const Outcome r = cli({"canon", "--trace", "W[C[], C[rewards-id?^, size]]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "EMPTY-1 /0 W[C[], C[rewards-id?^, size]] => W[~, C[rewards-id?^, size]]\n"
            "EMPTY-2 /0 W[~, C[rewards-id?^, size]] => W[C[rewards-id?^, size]]\n"
            "W[C[rewards-id?^, size]]\n");
}

TEST(Cli, RunMembership) {
  const Outcome yes = cli({"run", "C[a,b,c]", "<a b c>"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out, "MEMBER\n");
  const Outcome no = cli({"run", "C[a,b,c]", "<b a c>"});
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.out, "NOT-MEMBER\n");
}

TEST(Cli, EnumFromFile) {
  const Outcome r = cli({"enum", fixtures::path("coffee.dlg")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 13u);
  EXPECT_EQ(weave::parse_spec_file(r.out).episodes, fixtures::episodes("coffee.eps").episodes);
}

TEST(Cli, EnumCap) { EXPECT_EQ(cli({"--cap", "2", "enum", "C[a, b, c]"}).code, 2); }

TEST(Cli, Equiv) {
  const Outcome same = cli({"equiv", fixtures::path("breakfast-union.dlg"), fixtures::path("breakfast.dlg")});
  EXPECT_EQ(same.code, 0);
  EXPECT_EQ(same.out, "EQUIVALENT\n");
  const Outcome diff = cli({"equiv", "C[a, b]", "PE*[a, b]"});
  EXPECT_EQ(diff.code, 1);
  EXPECT_TRUE(diff.out.starts_with("DIFFER\n"));
  EXPECT_NE(diff.out.find("only in right"), std::string::npos);
}

TEST(Cli, StageBasic) {
  const Outcome r = cli({"stage", "PE*[size, blend, type-of-milk]", "size"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "PE*[blend, type-of-milk]\n");
  const Outcome bad = cli({"stage", "C[a, b]", "b"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out, "REJECTED\n");
  EXPECT_NE(bad.err.find("out-of-order"), std::string::npos);
}

TEST(Cli, StageWithArrowsPrintsFrontier) {
  const Outcome r = cli({"stage", fixtures::path("gas.dlg"), "credit-card"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("||"), std::string::npos);
  EXPECT_EQ(cli({"stage", fixtures::path("gas.dlg"), "octane"}).code, 1);
}

TEST(Cli, Mine) {
  const Outcome r = cli({"mine", fixtures::path("coffee.eps")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 1u);
  EXPECT_TRUE(weave::equivalent(weave::parse_expr(r.out), fixtures::expr("coffee.dlg")));
}

TEST(Cli, GenIsDeterministic) {
  const Outcome a = cli({"gen", "--seed", "42", "--count", "5"});
  const Outcome b = cli({"gen", "--seed", "42", "--count", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out), 5u);
  std::istringstream in(a.out);
  for (std::string line; std::getline(in, line);) EXPECT_NO_THROW(weave::parse_expr(line)) << line;
}

TEST(Cli, EvalJson) {
  const Outcome r = cli({"eval", "-n", "3", "--seed", "1", "--json", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 3);
  EXPECT_GE(j["factor_total"].get<double>(), 1.0);
}
