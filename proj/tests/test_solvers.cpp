#include <gtest/gtest.h>

#include <algorithm>

#include "smbribe/engine.hpp"
#include "smbribe/solvers.hpp"
#include "smbribe/testkit.hpp"
#include "test_util.hpp"

namespace smbribe {
namespace {

using testing::agent;
using testing::fixture_instance;
using testing::fixture_matching;
using testing::idx;

SolveRequest pair_request(const Instance &inst, Goal goal, ActionType action, const char *m, const char *w,
                          std::optional<int> budget) {
  return SolveRequest::for_pair(inst, goal, action, idx(inst, m), idx(inst, w), budget);
}

SolveRequest swap_example(ActionType action, std::optional<int> budget) {
  Instance inst = fixture_instance("swap_blocking.smi");
  Matching target = fixture_matching(inst, "swap_blocking.smm");
  return SolveRequest::for_matching(inst, Goal::ExactEx, action, target, budget);
}

SolveRequest rotation_request(Goal goal, ActionType action, std::optional<int> budget) {
  Instance inst = fixture_instance("rotation_2x2.smi");
  Matching target = fixture_matching(inst, "rotation_2x2_man_optimal.smm");
  return SolveRequest::for_matching(inst, goal, action, target, budget);
}

void expect_feasible(const ManipulationResult &r, int cost) {
  EXPECT_EQ(r.status, Status::Feasible);
  EXPECT_EQ(r.cost, cost);
  EXPECT_EQ(action_cost(r.actions), cost);
}

TEST(ConstExDelete, DeleteExample) {
  Instance inst = fixture_instance("delete_pair.smi");
  ManipulationResult r = const_ex_delete(pair_request(inst, Goal::ConstEx, ActionType::Delete, "m3", "w1", 1));
  expect_feasible(r, 1);
  ASSERT_EQ(r.actions.size(), 1u);
  EXPECT_EQ(r.actions[0], Action(DeleteAgentAction{agent(inst, "m1")}));

  r = const_ex_delete(pair_request(inst, Goal::ConstEx, ActionType::Delete, "m3", "w1", 0));
  EXPECT_EQ(r.status, Status::InfeasibleWithinBudget);
  EXPECT_EQ(r.optimum, 1);
}

TEST(ConstExDelete, StablePairCostsNothing) {
  Instance inst = fixture_instance("delete_pair.smi");
  ManipulationResult r = const_ex_delete(pair_request(inst, Goal::ConstEx, ActionType::Delete, "m1", "w1", 0));
  expect_feasible(r, 0);
  EXPECT_TRUE(r.actions.empty());
}

TEST(ConstExDelete, RejectsIncompleteInstance) {
  Instance inst = fixture_instance("with_addable.smi");
  EXPECT_THROW(const_ex_delete(pair_request(inst, Goal::ConstEx, ActionType::Delete, "m1", "w1", 1)), Error);
}

TEST(DestExDelete, MutualTopChoices) {
  Instance inst = parse_instance("men: m1 m2\nwomen: w1 w2\npref m1: w1 w2\npref m2: w2 w1\n"
                                 "pref w1: m1 m2\npref w2: m2 m1\n");
  ManipulationResult r = dest_ex_delete(pair_request(inst, Goal::DestEx, ActionType::Delete, "m1", "w1", 2));
  expect_feasible(r, 1);
}

TEST(DestExDelete, AlreadyAvoidable) {
  Instance inst = fixture_instance("rotation_2x2.smi");
  ManipulationResult r = dest_ex_delete(pair_request(inst, Goal::DestEx, ActionType::Delete, "m1", "w1", 0));
  expect_feasible(r, 0);
}

TEST(ConstExReorder, DeleteExampleApprox) {
  Instance inst = fixture_instance("delete_pair.smi");
  ManipulationResult r = const_ex_reorder_approx2(pair_request(inst, Goal::ConstEx, ActionType::Reorder, "m3", "w1",
                                                               std::nullopt));
  expect_feasible(r, 1);
  EXPECT_EQ(r.quality, Quality::Approx2);
  ASSERT_EQ(r.actions.size(), 1u);
  EXPECT_EQ(std::get<ReorderAction>(r.actions[0]).agent, agent(inst, "m1"));
}

TEST(ConstExReorder, DeleteExampleXp) {
  Instance inst = fixture_instance("delete_pair.smi");
  expect_feasible(const_ex_reorder_xp(pair_request(inst, Goal::ConstEx, ActionType::Reorder, "m3", "w1", 1)), 1);
  ManipulationResult r = const_ex_reorder_xp(pair_request(inst, Goal::ConstEx, ActionType::Reorder, "m3", "w1", 0));
  EXPECT_EQ(r.status, Status::InfeasibleWithinBudget);
  expect_feasible(const_ex_reorder_xp(pair_request(inst, Goal::ConstEx, ActionType::Reorder, "m1", "w1", 0)), 0);
  expect_feasible(
      const_ex_reorder_approx2(pair_request(inst, Goal::ConstEx, ActionType::Reorder, "m1", "w1", std::nullopt)), 0);
}

TEST(ConstExReorder, ApproxNeedsEqualSides) {
  Instance inst = parse_instance("men: m1 m2\nwomen: w1\npref m1: w1\npref m2: w1\npref w1: m1 m2\n");
  EXPECT_THROW(const_ex_reorder_approx2(pair_request(inst, Goal::ConstEx, ActionType::Reorder, "m2", "w1", 1)),
               Error);
}

TEST(ConstExBruteforce, CliqueAddTriangle) {
  GadgetOutput g = gadget_clique_add(SimpleGraph(3, {{0, 1}, {0, 2}, {1, 2}}), 2);
  EXPECT_EQ(g.budget, 3);
  ManipulationResult r = const_ex_bruteforce(g.request());
  EXPECT_EQ(r.status, Status::Feasible);
  EXPECT_LE(*r.cost, 3);
}

TEST(ConstExBruteforce, CliqueAddTriangleFree) {
  GadgetOutput g = gadget_clique_add(SimpleGraph(3, {{0, 1}, {1, 2}}), 3);
  SolveRequest req = g.request();
  req.budget.reset();
  EXPECT_EQ(const_ex_bruteforce(req).status, Status::InfeasibleAlways);
}

TEST(ConstExBruteforce, StablePairCostsNothing) {
  Instance inst = fixture_instance("delete_pair.smi");
  for (ActionType a : {ActionType::Swap, ActionType::AccDelete})
    expect_feasible(const_ex_bruteforce(pair_request(inst, Goal::ConstEx, a, "m1", "w1", 0)), 0);
}

TEST(ExactExAccDel, SwapExample) {
  expect_feasible(exact_ex_accdel(swap_example(ActionType::AccDelete, 3)), 3);
  EXPECT_EQ(exact_ex_accdel(swap_example(ActionType::AccDelete, 2)).status, Status::InfeasibleWithinBudget);
  ManipulationResult r = exact_ex_accdel(rotation_request(Goal::ExactEx, ActionType::AccDelete, 0));
  expect_feasible(r, 0);
  EXPECT_TRUE(r.actions.empty());
}

TEST(ExactExReorder, SwapExample) {
  SolveRequest req = swap_example(ActionType::Reorder, 2);
  ManipulationResult r = exact_ex_reorder(req);
  expect_feasible(r, 2);
  // Any minimum cover of the blocking-pair graph will do, e.g. {m1, w2} or {m1, m3}.
  std::vector<AgentRef> touched;
  for (const Action &a : r.actions) touched.push_back(std::get<ReorderAction>(a).agent);
  for (auto [m, w] : blocking_pairs(req.instance, req.mask, *req.target))
    EXPECT_TRUE(std::count(touched.begin(), touched.end(), man(m)) || std::count(touched.begin(), touched.end(), woman(w)));
  expect_feasible(exact_ex_reorder(rotation_request(Goal::ExactEx, ActionType::Reorder, 0)), 0);
}

TEST(ExactExSwap, SwapExampleUniqueOptimum) {
  SolveRequest req = swap_example(ActionType::Swap, 3);
  ManipulationResult r = exact_ex_swap(req);
  expect_feasible(r, 3);
  EXPECT_EQ(serialize_actions(req.instance, r.actions), "swap m1 1\nswap m1 0\nswap w2 1\n");
  EXPECT_EQ(testing::list_labels(r.witness_instance, man(0)), "w3 w1 w2");
  EXPECT_EQ(testing::list_labels(r.witness_instance, woman(1)), "m1 m2 m3");
  EXPECT_EQ(exact_ex_swap(swap_example(ActionType::Swap, 2)).status, Status::InfeasibleWithinBudget);
}

TEST(ExactExSwap, StableTargetHasEmptyNetwork) {
  SolveRequest req = rotation_request(Goal::ExactEx, ActionType::Swap, 0);
  expect_feasible(exact_ex_swap(req), 0);
  EXPECT_EQ(build_swap_cut_network(req.instance, *req.target).graph.arcs.size(), 0u);
}

SolveRequest absent_partner_request(ActionType action, const char *target) {
  Instance inst = parse_instance("men: m1 m2\nwomen: w1 w2\naddable-women: w2\n"
                                 "pref m1: w1 w2\npref m2: w1 w2\npref w1: m1 m2\npref w2: m1 m2\n");
  return SolveRequest::for_matching(inst, Goal::ExactEx, action, parse_matching(inst, target), 2);
}

TEST(ExactExReorder, PartnerOfUnassignedAgentIsForced) {
  // m1's target partner is absent, so only w1 can give up the blocking pair {m1, w1}.
  SolveRequest req = absent_partner_request(ActionType::Reorder, "pair m1 w2\npair m2 w1\n");
  ManipulationResult r = exact_ex_reorder(req);
  expect_feasible(r, 1);
  EXPECT_EQ(serialize_actions(req.instance, r.actions), "reorder w1: m2 m1\n");
  EXPECT_EQ(oracle_min_manipulation(req).cost, 1);
  expect_feasible(exact_ex_swap(absent_partner_request(ActionType::Swap, "pair m1 w2\npair m2 w1\n")), 1);
}

TEST(ExactExReorder, TwoUnassignedAgentsCannotBeFixed) {
  Instance inst = fixture_instance("with_addable.smi");
  Matching target = parse_matching(inst, "pair m1 w3\npair m2 w1\npair m3 w2\n");
  for (ActionType a : {ActionType::Reorder, ActionType::Swap}) {
    SolveRequest req = SolveRequest::for_matching(inst, Goal::ExactEx, a, target, 2);
    ManipulationResult r = solve(req);
    EXPECT_EQ(r.status, Status::InfeasibleWithinBudget);
    EXPECT_EQ(oracle_min_manipulation(req).status, Status::InfeasibleWithinBudget);
  }
}

TEST(ExactExAdd, OneAddition) {
  Instance inst = parse_instance("men: m1 m2\nwomen: w1 w2\naddable-men: m2\naddable-women: w2\n"
                                 "pref m1: w2 w1\npref m2: w1 w2\npref w1: m1 m2\npref w2: m1 m2\n");
  Matching target = Matching::from_pairs(2, 2, {{0, 1}, {1, 0}});
  ManipulationResult r = exact_ex_add(SolveRequest::for_matching(inst, Goal::ExactEx, ActionType::Add, target, 2));
  expect_feasible(r, 1);
  EXPECT_EQ(r.actions, std::vector<Action>{AddAgentAction{woman(1)}});
  EXPECT_EQ(oracle_min_manipulation(SolveRequest::for_matching(inst, Goal::ExactEx, ActionType::Add, target, 2)).cost,
            1);
}

TEST(ExactExAdd, PartnerOfRivalSuffices) {
  // m1 wants w1, so w1 must be taken by her preferred partner m2; w2 may stay absent.
  Instance inst = parse_instance("men: m1 m2\nwomen: w1 w2\naddable-men: m2\naddable-women: w2\n"
                                 "pref m1: w1 w2\npref m2: w1 w2\npref w1: m2 m1\npref w2: m1 m2\n");
  Matching target = Matching::from_pairs(2, 2, {{0, 1}, {1, 0}});
  SolveRequest req = SolveRequest::for_matching(inst, Goal::ExactEx, ActionType::Add, target, 2);
  ManipulationResult r = exact_ex_add(req);
  expect_feasible(r, 1);
  EXPECT_EQ(r.actions, std::vector<Action>{AddAgentAction{man(1)}});
  EXPECT_EQ(oracle_min_manipulation(req).cost, 1);
}

TEST(ExactExAdd, NothingToAdd) {
  expect_feasible(exact_ex_add(rotation_request(Goal::ExactEx, ActionType::Add, std::nullopt)), 0);
}

TEST(ExactExAdd, ImpossibleAtAnyBudget) {
  Instance inst = parse_instance("men: m1 m2\nwomen: w1 w2\naddable-women: w2\n"
                                 "pref m1: w1 w2\npref m2: w1 w2\npref w1: m1 m2\npref w2: m1 m2\n");
  Matching target = Matching::from_pairs(2, 2, {{0, 1}, {1, 0}});
  SolveRequest req = SolveRequest::for_matching(inst, Goal::ExactEx, ActionType::Add, target, std::nullopt);
  EXPECT_EQ(exact_ex_add(req).status, Status::InfeasibleAlways);
  EXPECT_EQ(oracle_min_manipulation(req).status, Status::InfeasibleAlways);
}

TEST(ExactExDeleteFpt, IndependentSetGadget) {
  GadgetOutput g = gadget_is_delete(SimpleGraph(2, {{0, 1}}), 1);
  EXPECT_EQ(g.budget, 2);
  ManipulationResult r = exact_ex_delete_fpt(g.request());
  expect_feasible(r, 2);
  std::vector<std::string> names;
  for (const Action &a : r.actions) names.push_back(g.instance.label(std::get<DeleteAgentAction>(a).agent));
  std::sort(names.begin(), names.end());
  EXPECT_TRUE(names == (std::vector<std::string>{"mV_1", "wV_1"}) || names == (std::vector<std::string>{"mV_2", "wV_2"}))
      << names[0] << " " << names[1];

  SolveRequest tight = g.request();
  tight.budget = 1;
  EXPECT_EQ(exact_ex_delete_fpt(tight).status, Status::InfeasibleWithinBudget);
  expect_feasible(exact_ex_delete_fpt(rotation_request(Goal::ExactEx, ActionType::Delete, 0)), 0);
}

TEST(ExactUniAccDel, RotationInstance) {
  ManipulationResult r = exact_uni_accdel(rotation_request(Goal::ExactUni, ActionType::AccDelete, 1));
  expect_feasible(r, 1);
  ASSERT_EQ(r.actions.size(), 1u);
  auto del = std::get<AccDeleteAction>(r.actions[0]);
  EXPECT_TRUE((del.man == 0 && del.woman == 1) || (del.man == 1 && del.woman == 0));
  EXPECT_TRUE(is_unique_stable(r.witness_instance, r.witness_mask, r.witness_matching));
  EXPECT_EQ(exact_uni_accdel(rotation_request(Goal::ExactUni, ActionType::AccDelete, 0)).status,
            Status::InfeasibleWithinBudget);
}

TEST(ExactUniAccDel, UniqueTargetCostsNothing) {
  Instance inst = fixture_instance("single_pair.smi");
  SolveRequest req = SolveRequest::for_matching(inst, Goal::ExactUni, ActionType::AccDelete,
                                                fixture_matching(inst, "single_pair.smm"), 0);
  expect_feasible(exact_uni_accdel(req), 0);
}

TEST(ExactUniAccDel, UniquenessGraphOfRotationInstance) {
  SolveRequest req = rotation_request(Goal::ExactUni, ActionType::AccDelete, 1);
  UniquenessGraph men = build_uniqueness_graph(req.instance, *req.target, Side::Man);
  auto arb = min_anti_arborescence(men.graph);
  ASSERT_TRUE(arb);
  EXPECT_EQ(arb->weight, 1);
  UniquenessGraph women = build_uniqueness_graph(req.instance, *req.target, Side::Woman);
  arb = min_anti_arborescence(women.graph);
  ASSERT_TRUE(arb);
  EXPECT_EQ(arb->weight, 0);
}

TEST(ExactUniReorder, RotationInstance) {
  ManipulationResult r = exact_uni_reorder_xp(rotation_request(Goal::ExactUni, ActionType::Reorder, 1));
  expect_feasible(r, 1);
  EXPECT_TRUE(is_unique_stable(r.witness_instance, r.witness_mask, r.witness_matching));
  EXPECT_EQ(exact_uni_reorder_xp(rotation_request(Goal::ExactUni, ActionType::Reorder, 0)).status,
            Status::InfeasibleWithinBudget);
}

TEST(ExactUniReorder, UniqueTargetCostsNothing) {
  Instance inst = fixture_instance("single_pair.smi");
  SolveRequest req = SolveRequest::for_matching(inst, Goal::ExactUni, ActionType::Reorder,
                                                fixture_matching(inst, "single_pair.smm"), 0);
  expect_feasible(exact_uni_reorder_xp(req), 0);
}

TEST(ExactUniReorder, HittingSetGadget) {
  GadgetOutput g = gadget_hs_reorder(SetSystem{2, {{1}, {2}}}, 2);
  ManipulationResult r = exact_uni_reorder_xp(g.request());
  expect_feasible(r, 2);
  SolveRequest tight = g.request();
  tight.budget = 1;
  EXPECT_EQ(exact_uni_reorder_xp(tight).status, Status::InfeasibleWithinBudget);
}

TEST(ExactUniBruteforce, HittingSetAddGadget) {
  GadgetOutput g = gadget_hs_add(SetSystem{1, {{1}}}, 1);
  ManipulationResult r = exact_uni_bruteforce(g.request());
  expect_feasible(r, 1);
  EXPECT_EQ(r.actions, std::vector<Action>{AddAgentAction{agent(g.instance, "wZ_1")}});
}

TEST(ExactUniBruteforce, IndependentSetGadget) {
  GadgetOutput g = gadget_is_delete(SimpleGraph(2, {{0, 1}}), 1, Goal::ExactUni);
  expect_feasible(exact_uni_bruteforce(g.request()), 2);
}

TEST(ExactUniBruteforce, UniqueTargetCostsNothing) {
  Instance inst = fixture_instance("single_pair.smi");
  for (ActionType a : {ActionType::Swap, ActionType::Delete, ActionType::Add}) {
    SolveRequest req =
        SolveRequest::for_matching(inst, Goal::ExactUni, a, fixture_matching(inst, "single_pair.smm"), 0);
    expect_feasible(exact_uni_bruteforce(req), 0);
  }
}

TEST(ExactPartial, CompleteTargetMatchesSolver) {
  SolveRequest req = swap_example(ActionType::Swap, 5);
  ManipulationResult partial = exact_partial(req, *req.target);
  EXPECT_EQ(partial.cost, exact_ex_swap(req).cost);
}

TEST(ExactPartial, SwapExampleCompletions) {
  SolveRequest req = swap_example(ActionType::Swap, std::nullopt);
  Matching partial(3, 3);
  partial.add(0, 2);
  int best = 1 << 30;
  for (auto pairs : {PairList{{0, 2}, {1, 0}, {2, 1}}, PairList{{0, 2}, {1, 1}, {2, 0}}}) {
    SolveRequest sub = req;
    sub.target = Matching::from_pairs(3, 3, pairs);
    best = std::min(best, *exact_ex_swap(sub).cost);
  }
  ManipulationResult r = exact_partial(req, partial);
  EXPECT_EQ(r.status, Status::Feasible);
  EXPECT_EQ(r.cost, best);
}

TEST(ExactPartial, EmptyPartialAccDel) {
  SolveRequest req = swap_example(ActionType::AccDelete, std::nullopt);
  std::vector<int> perm{0, 1, 2};
  int best = 1 << 30;
  do {
    Matching m(3, 3);
    for (int i = 0; i < 3; ++i) m.add(i, perm[i]);
    best = std::min(best, static_cast<int>(blocking_pairs(req.instance, req.mask, m).size()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  ManipulationResult r = exact_partial(req, Matching(3, 3));
  EXPECT_EQ(r.cost, best);
  EXPECT_EQ(best, 0);
}

TEST(Solve, AutoAndBruteforceAgree) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = random_instance(3, seed);
    Rng rng(seed);
    Matching target = random_perfect_matching(3, rng);
    for (ActionType a : {ActionType::Swap, ActionType::Reorder, ActionType::AccDelete, ActionType::Delete}) {
      SolveRequest req = SolveRequest::for_matching(inst, Goal::ExactEx, a, target, 2);
      ManipulationResult fast = solve(req, Algo::Auto), slow = solve(req, Algo::Bruteforce);
      EXPECT_EQ(fast.status, slow.status) << seed;
      EXPECT_EQ(fast.cost, slow.cost) << seed;
    }
    SolveRequest req = SolveRequest::for_pair(inst, Goal::ConstEx, ActionType::Delete, 0, 0, 2);
    EXPECT_EQ(solve(req, Algo::Auto).cost, solve(req, Algo::Bruteforce).cost) << seed;
  }
}

TEST(VerifyResult, RejectsTamperedWitness) {
  SolveRequest req = swap_example(ActionType::AccDelete, 3);
  ManipulationResult r = exact_ex_accdel(req);
  r.actions.pop_back();
  EXPECT_THROW(verify_result(req, r), Error);
}

}  // namespace
}  // namespace smbribe
