#include <gtest/gtest.h>

#include "weave/stage.hpp"
#include "weave/syntax.hpp"

using namespace weave;

namespace {

std::string staged(const std::string& expr, const std::string& utterance) {
  const StagingOutcome o = stage(parse_expr(expr, {.validate = false}), parse_utterance(utterance));
  if (const auto* r = std::get_if<Rejected>(&o)) return std::string("REJECTED ") + reject_code_name(r->code);
  return print_expr(std::get<Advanced>(o).next);
}

}  // namespace

TEST(Stage, AtomAndInterpretation) {
  EXPECT_EQ(staged("size", "size"), "~");
  EXPECT_EQ(staged("I[salary, credit-score, age]", "{age, salary, credit-score}"), "~");
  EXPECT_EQ(staged("I[salary, credit-score, age]", "{age, salary}"), "REJECTED grouping");
}

TEST(Stage, Currying) {
  EXPECT_EQ(staged("C[credit-card, octane, receipt?]", "credit-card"), "C[octane, receipt?]");
  EXPECT_EQ(staged("C[credit-card, octane, receipt?]", "octane"), "REJECTED out-of-order");
  EXPECT_EQ(staged("C[size, I[blend, type-of-milk]]", "size"), "I[blend, type-of-milk]");
}

TEST(Stage, PartialApplication) {
  EXPECT_EQ(staged("PFA1[a, b, c]", "a"), "I[b, c]");
  EXPECT_EQ(staged("PFA1[a, b, c]", "b"), "REJECTED out-of-order");
  EXPECT_EQ(staged("PFA1*[a, b, c]", "a"), "PFA1*[b, c]");
  EXPECT_EQ(staged("PFA1*[a, b, c]", "{a, b, c}"), "~");
  EXPECT_EQ(staged("PFAn[a, b, c]", "{a, b}"), "c");
  EXPECT_EQ(staged("PFAn[a, b, c]", "{a, b, c}"), "REJECTED grouping");
  EXPECT_EQ(staged("PFAn[a, b, c]", "{a, c}"), "REJECTED grouping");
  EXPECT_EQ(staged("PFAn*[a, b, c]", "a"), "PFAn*[b, c]");
  EXPECT_EQ(staged("PFAn*[a, b, c]", "{a, b, c}"), "~");
}

TEST(Stage, StepwisePartialEvaluation) {
  EXPECT_EQ(staged("SPE[a, b, c]", "b"), "I[a, c]");
  EXPECT_EQ(staged("SPE[a, b, c]", "{a, b}"), "REJECTED grouping");
  EXPECT_EQ(staged("SPE*[a, b, c]", "b"), "SPE*[a, c]");
  EXPECT_EQ(staged("SPE*[a, b, c]", "{a, b, c}"), "~");
  EXPECT_EQ(staged("SPE'[a, C[b, c], d]", "b"), "C[c, SPE'[a, d]]");
  EXPECT_EQ(staged("SPE'[a, C[b, c], d]", "c"), "REJECTED out-of-order");
}

TEST(Stage, PartialEvaluation) {
  EXPECT_EQ(staged("PE[a, b, c]", "a"), "I[b, c]");
  EXPECT_EQ(staged("PE[a, b, c]", "{a, b, c}"), "REJECTED grouping");
  EXPECT_EQ(staged("PE*[a, b, c]", "{a, c}"), "b");
  EXPECT_EQ(staged("PE*[a, b, c]", "{a, b, c}"), "~");
  EXPECT_EQ(staged("C[PE*[size, blend, type-of-milk], rewards-id, receipt?]", "{size, blend, type-of-milk}"),
            "C[rewards-id, receipt?]");
}

TEST(Stage, Unions) {
  EXPECT_EQ(staged("C[a, SPE'[b, c]] | C[a, c, b]", "a"), "SPE'[b, c] | C[c, b]");
  EXPECT_EQ(staged("C[a, b] | C[b, a]", "b"), "a");
  EXPECT_EQ(staged("C[a, b] | C[b, a]", "{a, b}"), "REJECTED grouping");
}

TEST(Stage, SubDialogsUnderPfa1AndSpe) {
  EXPECT_EQ(staged("PFA1[PE*[size, blend], eggs, toast]", "size"), "C[blend, I[eggs, toast]]");
  EXPECT_EQ(staged("PFA1[PE*[size, blend], eggs, toast]", "eggs"), "REJECTED out-of-order");
  EXPECT_EQ(staged("SPE[size, PE*[blend, type-of-milk]]", "blend"), "C[type-of-milk, size]");
  EXPECT_EQ(staged("SPE[size, PE*[blend, type-of-milk]]", "size"), "PE*[blend, type-of-milk]");
}

TEST(Stage, RejectionCodes) {
  EXPECT_EQ(staged("C[a, b]", "z"), "REJECTED unknown-solicitation");
  EXPECT_EQ(staged("W[C[a^, b], c]", "a"), "REJECTED unsupported");
  const StagingOutcome o = stage(parse_expr("C[a, b]"), parse_utterance("{a, z}"));
  const auto& r = std::get<Rejected>(o);
  EXPECT_EQ(r.names, (NameSet{"z"}));
}

TEST(Stage, TraceRecordsSimplification) {
  const StagingOutcome o = stage(parse_expr("C[PE*[size], rewards-id]"), Utterance::single("size"));
  ASSERT_TRUE(advanced(o));
  EXPECT_EQ(print_expr(std::get<Advanced>(o).next), "rewards-id");
}

TEST(Stage, RunEpisode) {
  const Dialog flight = parse_expr("C[departure-time, PE*[from, to], seat]");
  EXPECT_TRUE(run_episode(flight, parse_episode("<departure-time {from, to} seat>")));
  EXPECT_TRUE(run_episode(flight, parse_episode("<departure-time to from seat>")));
  EXPECT_FALSE(run_episode(flight, parse_episode("<departure-time from seat to>")));
  EXPECT_FALSE(run_episode(flight, parse_episode("<departure-time from to>")));
  EXPECT_TRUE(run_episode(parse_expr("~"), parse_episode("<>")));
}
