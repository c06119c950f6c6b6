#include <gtest/gtest.h>

#include "json.hpp"
#include "smbribe/report.hpp"
#include "test_util.hpp"

namespace smbribe {
namespace {

using nlohmann::json;
using testing::fixture_instance;
using testing::fixture_matching;
using testing::idx;

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(InstanceDigest, IgnoresFormatting) {
  Instance a = parse_instance("men: a\nwomen: x\npref a: x\npref x: a\n");
  Instance b = parse_instance("# comment\nsmi 1\nmen:   a\nwomen: x\npref a: x   # tail\npref x: a\n");
  EXPECT_EQ(instance_digest(a), instance_digest(b));
  EXPECT_EQ(instance_digest(a).size(), 64u);
}

TEST(RenderResult, SwapExampleDocument) {
  Instance inst = fixture_instance("swap_blocking.smi");
  Matching target = fixture_matching(inst, "swap_blocking.smm");
  SolveRequest req = SolveRequest::for_matching(inst, Goal::ExactEx, ActionType::Swap, target, 3);
  ManipulationResult res = exact_ex_swap(req);
  std::string text = render_result(req, res, RunManifest{"solve", std::nullopt, instance_digest(inst), 0.0015});
  ASSERT_EQ(text.back(), '\n');
  json doc = json::parse(text);
  EXPECT_EQ(doc["format"], "result 1");
  EXPECT_EQ(doc["status"], "feasible");
  EXPECT_EQ(doc["cost"], 3);
  EXPECT_EQ(doc["budget"], 3);
  EXPECT_EQ(doc["actions"].size(), 3u);
  EXPECT_EQ(doc["witness"]["matching"].size(), 3u);
  EXPECT_TRUE(doc["manifest"]["seed"].is_null());
  EXPECT_EQ(doc["manifest"]["instance_digest"], "sha256:" + instance_digest(inst));
  EXPECT_DOUBLE_EQ(doc["manifest"]["duration_ms"].get<double>(), 1.5);
  // Keys appear in sorted order and the dump is canonical.
  EXPECT_EQ(doc.dump(2) + "\n", text);
  EXPECT_LT(text.find("\"action\""), text.find("\"actions\""));
  EXPECT_LT(text.find("\"actions\""), text.find("\"algorithm\""));
}

TEST(RenderResult, InfeasibleHasNoWitness) {
  Instance inst = fixture_instance("swap_blocking.smi");
  SolveRequest req = SolveRequest::for_matching(inst, Goal::ExactEx, ActionType::Swap,
                                                fixture_matching(inst, "swap_blocking.smm"), 2);
  ManipulationResult res = exact_ex_swap(req);
  ASSERT_EQ(res.status, Status::InfeasibleWithinBudget);
  json doc = json::parse(render_result(req, res, RunManifest{"solve", 4, "00", 0}));
  EXPECT_TRUE(doc["cost"].is_null());
  EXPECT_EQ(doc["optimum"], 3);
  EXPECT_TRUE(doc["witness"].is_null());
  EXPECT_TRUE(doc["actions"].empty());
  EXPECT_EQ(doc["manifest"]["seed"], 4);
}

TEST(RenderResult, PairAndUnboundedBudget) {
  Instance inst = fixture_instance("delete_pair.smi");
  SolveRequest req =
      SolveRequest::for_pair(inst, Goal::ConstEx, ActionType::Delete, idx(inst, "m3"), idx(inst, "w1"), std::nullopt);
  json doc = json::parse(render_result(req, const_ex_delete(req), RunManifest{"solve", std::nullopt, "00", 0}));
  EXPECT_EQ(doc["budget"], "inf");
  EXPECT_EQ(doc["pair"], json::array({"m3", "w1"}));
}

TEST(CheckMatching, SwapExampleBlockingPairs) {
  Instance inst = fixture_instance("swap_blocking.smi");
  CheckReport r = check_matching(inst, fixture_matching(inst, "swap_blocking.smm"), false);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.text, "blocking m1 w1\nblocking m1 w2\nblocking m3 w2\nblocking-pairs 3\nstable no\n");
}

TEST(CheckMatching, UniquenessVerdict) {
  Instance inst = fixture_instance("rotation_2x2.smi");
  Matching m = fixture_matching(inst, "rotation_2x2_man_optimal.smm");
  EXPECT_TRUE(check_matching(inst, m, false).holds);
  CheckReport r = check_matching(inst, m, true);
  EXPECT_FALSE(r.holds);
  EXPECT_NE(r.text.find("unique no"), std::string::npos);

  Instance single = fixture_instance("single_pair.smi");
  EXPECT_TRUE(check_matching(single, fixture_matching(single, "single_pair.smm"), true).holds);
}

TEST(Bench, DeterministicAndSummarized) {
  BenchConfig config{Goal::ConstEx, ActionType::Delete, {4, 6}, 5, 99};
  std::vector<BenchRow> rows = run_bench(config);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(render_bench(config, rows), render_bench(config, run_bench(config)));
  std::vector<BenchSummary> summary = summarize(rows);
  ASSERT_EQ(summary.size(), 2u);
  EXPECT_EQ(summary[0].n, 4);
  EXPECT_EQ(summary[1].n, 6);
  for (const auto &s : summary) {
    EXPECT_LE(s.solved, 5);
    EXPECT_GE(s.mean_cost, 0);
  }
}

TEST(Bench, MedianOfEvenCount) {
  std::vector<BenchRow> rows = {{3, 0, 1, 1}, {3, 1, 2, 4}, {3, 2, 3, std::nullopt}, {3, 3, 4, 2}, {3, 4, 5, 3}};
  std::vector<BenchSummary> s = summarize(rows);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].solved, 4);
  EXPECT_DOUBLE_EQ(s[0].median_cost, 2.5);
  EXPECT_DOUBLE_EQ(s[0].mean_cost, 2.5);
}

}  // namespace
}  // namespace smbribe
