#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "smbribe/engine.hpp"
#include "smbribe/testkit.hpp"
#include "test_util.hpp"

namespace smbribe {
namespace {

using testing::fixture_instance;
using testing::fixture_matching;
using testing::idx;

PairList named_pairs(const Instance &inst, std::initializer_list<std::pair<const char *, const char *>> pairs) {
  PairList out;
  for (auto [m, w] : pairs) out.emplace_back(idx(inst, m), idx(inst, w));
  std::sort(out.begin(), out.end());
  return out;
}

// Quadratic scan straight from the definition, independent of the engine.
PairList scan_blocking(const Instance &inst, const PresenceMask &mask, const Matching &m) {
  auto pos = [](const std::vector<int> &list, int x) {
    auto it = std::find(list.begin(), list.end(), x);
    return it == list.end() ? -1 : static_cast<int>(it - list.begin());
  };
  PairList out;
  for (int a = 0; a < inst.men_count; ++a)
    for (int b = 0; b < inst.women_count; ++b) {
      if (!mask.men[a] || !mask.women[b] || m.wife[a] == b) continue;
      int ra = pos(inst.men_prefs[a], b), rb = pos(inst.women_prefs[b], a);
      if (ra < 0 || rb < 0) continue;
      int wa = m.wife[a], hb = m.husband[b];
      bool man_wants = wa < 0 || !mask.women[wa] || ra < pos(inst.men_prefs[a], wa);
      bool woman_wants = hb < 0 || !mask.men[hb] || rb < pos(inst.women_prefs[b], hb);
      if (man_wants && woman_wants) out.emplace_back(a, b);
    }
  return out;
}

Matching random_matching(int n, std::uint64_t seed) {
  Rng rng(seed);
  Matching m = random_perfect_matching(n, rng);
  for (int i = 0; i < n; ++i)
    if (rng.below(4) == 0) m.remove_agent(man(i));
  return m;
}

TEST(BlockingPairs, SwapExample) {
  Instance inst = fixture_instance("swap_blocking.smi");
  Matching m = fixture_matching(inst, "swap_blocking.smm");
  PresenceMask mask = PresenceMask::initial(inst);
  EXPECT_EQ(blocking_pairs(inst, mask, m), named_pairs(inst, {{"m1", "w1"}, {"m1", "w2"}, {"m3", "w2"}}));
  EXPECT_FALSE(is_stable(inst, mask, m));
}

TEST(BlockingPairs, EveryoneAtTopChoice) {
  Instance inst = fixture_instance("rotation_2x2.smi");
  Matching m = fixture_matching(inst, "rotation_2x2_man_optimal.smm");
  EXPECT_TRUE(blocking_pairs(inst, PresenceMask::initial(inst), m).empty());
}

TEST(BlockingPairs, MatchesDefinitionalScan) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Instance inst = random_instance(4, seed);
    PresenceMask mask = PresenceMask::initial(inst);
    if (seed % 3 == 0) mask.set(woman(static_cast<int>(seed % 4)), false);
    Matching m = random_matching(4, seed + 1000).restricted(mask);
    EXPECT_EQ(blocking_pairs(inst, mask, m), scan_blocking(inst, mask, m)) << seed;
  }
}

TEST(IsStable, SinglePair) {
  Instance inst = fixture_instance("single_pair.smi");
  Matching m = fixture_matching(inst, "single_pair.smm");
  PresenceMask mask = PresenceMask::initial(inst);
  EXPECT_TRUE(is_stable(inst, mask, m));
  EXPECT_TRUE(is_unique_stable(inst, mask, m));
  EXPECT_EQ(gale_shapley(inst, mask, Side::Man), m);
  EXPECT_FALSE(exposed_rotation(inst, mask, m, Side::Man));
  EXPECT_EQ(rotation_successors(inst, mask, m, Side::Man).successor, std::vector<int>{-1});
  EXPECT_TRUE(stable_pair(inst, 0, 0));
}

TEST(GaleShapley, DeleteExampleManOptimal) {
  Instance inst = fixture_instance("delete_pair.smi");
  Matching gs = gale_shapley(inst, PresenceMask::initial(inst), Side::Man);
  Matching expected = Matching::from_pairs(3, 3, named_pairs(inst, {{"m1", "w1"}, {"m2", "w3"}, {"m3", "w2"}}));
  EXPECT_EQ(gs, expected);
}

TEST(GaleShapley, OptimalAmongAllStableMatchings) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Instance inst = random_instance(2 + seed % 4, seed);
    PresenceMask mask = PresenceMask::initial(inst);
    if (seed % 2) {
      // Incomplete lists via a few acceptability deletions.
      State s{inst, mask};
      apply_action_inplace(s, AccDeleteAction{0, inst.men_prefs[0].front()});
      inst = s.inst;
    }
    Matching man_opt = gale_shapley(inst, mask, Side::Man);
    Matching woman_opt = gale_shapley(inst, mask, Side::Woman);
    ASSERT_TRUE(scan_blocking(inst, mask, man_opt).empty());
    ASSERT_TRUE(scan_blocking(inst, mask, woman_opt).empty());
    RankTable ranks(inst);
    for (const Matching &other : enumerate_stable(inst, mask)) {
      for (int m = 0; m < inst.men_count; ++m)
        if (other.wife[m] >= 0) EXPECT_LE(ranks.man(m, man_opt.wife[m]), ranks.man(m, other.wife[m]));
      for (int w = 0; w < inst.women_count; ++w)
        if (other.husband[w] >= 0) EXPECT_LE(ranks.woman(w, woman_opt.husband[w]), ranks.woman(w, other.husband[w]));
    }
  }
}

TEST(Uniqueness, RotationInstance) {
  Instance inst = fixture_instance("rotation_2x2.smi");
  Matching m = fixture_matching(inst, "rotation_2x2_man_optimal.smm");
  PresenceMask mask = PresenceMask::initial(inst);
  EXPECT_TRUE(is_stable(inst, mask, m));
  EXPECT_FALSE(is_unique_stable(inst, mask, m));
  EXPECT_EQ(enumerate_stable(inst, mask).size(), 2u);

  auto succ = rotation_successors(inst, mask, m, Side::Man);
  EXPECT_EQ(succ.successor, (std::vector<int>{1, 0}));
  auto rot = exposed_rotation(inst, mask, m, Side::Man);
  ASSERT_TRUE(rot);
  EXPECT_EQ(*rot, (Rotation{{0, 0}, {1, 1}}));
  EXPECT_FALSE(exposed_rotation(inst, mask, m, Side::Woman));
}

TEST(Uniqueness, HittingSetGadgetRotations) {
  GadgetOutput g = gadget_hs_reorder(SetSystem{3, {{1, 2, 3}, {1, 2}}}, 2);
  const Instance &inst = g.instance;
  PresenceMask mask = PresenceMask::initial(inst);
  Matching man_opt = gale_shapley(inst, mask, Side::Man);
  EXPECT_EQ(man_opt, *g.target);
  for (int m = 0; m < inst.men_count; ++m) EXPECT_EQ(man_opt.wife[m], inst.men_prefs[m].front());

  auto succ = rotation_successors(inst, mask, man_opt, Side::Man);
  EXPECT_EQ(succ.successor[idx(inst, "mF1_2")], idx(inst, "wF2_2"));
  EXPECT_EQ(succ.successor[idx(inst, "mF2_2")], idx(inst, "wF1_2"));
  EXPECT_EQ(succ.successor[idx(inst, "mZ_1")], -1);

  auto rot = exposed_rotation(inst, mask, man_opt, Side::Man);
  ASSERT_TRUE(rot);
  std::set<Rotation> allowed = {
      {{idx(inst, "mF1_1"), idx(inst, "wF1_1")}, {idx(inst, "mF2_1"), idx(inst, "wF2_1")}},
      {{idx(inst, "mF1_2"), idx(inst, "wF1_2")}, {idx(inst, "mF2_2"), idx(inst, "wF2_2")}},
  };
  EXPECT_TRUE(allowed.count(*rot));
  EXPECT_FALSE(is_unique_stable(inst, mask, man_opt));
}

TEST(Uniqueness, HittingSetGadgetAfterBribery) {
  GadgetOutput g = gadget_hs_reorder(SetSystem{3, {{1, 2, 3}, {1, 2}}}, 1);
  Instance inst = g.instance;
  // Element 1 hits both sets: its woman ranks every set man above her partner.
  AgentRef w = testing::agent(inst, "wZ_1");
  std::vector<int> list = inst.prefs(w);
  int partner = g.target->partner(w);
  list.erase(std::find(list.begin(), list.end(), partner));
  list.push_back(partner);
  State s = apply_action(inst, PresenceMask::initial(inst), ReorderAction{w, list});
  EXPECT_TRUE(is_unique_stable(s.inst, s.mask, *g.target));
}

TEST(RotationSuccessors, MatchDefinitionalScan) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    int n = 2 + static_cast<int>(seed % 4);
    Instance inst = random_instance(n, seed);
    PresenceMask mask = PresenceMask::initial(inst);
    Matching m = gale_shapley(inst, mask, seed % 2 ? Side::Man : Side::Woman);
    RankTable ranks(inst);
    for (Side side : {Side::Man, Side::Woman}) {
      auto succ = rotation_successors(inst, mask, m, side);
      for (int a = 0; a < n; ++a) {
        AgentRef ag{side, a};
        int expected = -1;
        const auto &list = inst.prefs(ag);
        auto it = std::find(list.begin(), list.end(), m.partner(ag));
        for (++it; it != list.end(); ++it) {
          AgentRef b{other(side), *it};
          if (ranks.of(b, a) < ranks.of(b, m.partner(b))) {
            expected = *it;
            break;
          }
        }
        EXPECT_EQ(succ.successor[a], expected) << seed;
      }
    }
  }
}

TEST(Uniqueness, CrossCheckWithEnumeration) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    int n = 1 + static_cast<int>(seed % 5);
    Instance inst = random_instance(n, seed);
    PresenceMask mask = PresenceMask::initial(inst);
    Matching m = gale_shapley(inst, mask, Side::Man);
    auto all = enumerate_stable(inst, mask);
    bool unique = all.size() == 1;
    EXPECT_EQ(is_unique_stable(inst, mask, m), unique) << seed;
    bool no_rotation = !exposed_rotation(inst, mask, m, Side::Man) &&
                       !exposed_rotation(inst, mask, gale_shapley(inst, mask, Side::Woman), Side::Woman);
    EXPECT_EQ(no_rotation, unique) << seed;
  }
}

TEST(StablePair, DeleteExample) {
  Instance inst = fixture_instance("delete_pair.smi");
  EXPECT_TRUE(stable_pair(inst, idx(inst, "m1"), idx(inst, "w1")));
  EXPECT_FALSE(stable_pair(inst, idx(inst, "m3"), idx(inst, "w1")));
}

TEST(StablePair, MatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    int n = 2 + static_cast<int>(seed % 4);
    Instance inst = random_instance(n, seed);
    auto all = enumerate_stable(inst, PresenceMask::initial(inst));
    for (int m = 0; m < n; ++m)
      for (int w = 0; w < n; ++w) {
        bool expected = std::any_of(all.begin(), all.end(), [&](const Matching &x) { return x.contains(m, w); });
        EXPECT_EQ(stable_pair(inst, m, w), expected) << seed << " " << m << " " << w;
      }
  }
}

TEST(RuralHospitals, SameAgentsAssigned) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    State s{random_instance(4, seed), {}};
    s.mask = PresenceMask::initial(s.inst);
    Rng rng(seed);
    for (int k = 0; k < 5; ++k) {
      int m = static_cast<int>(rng.below(4));
      if (!s.inst.men_prefs[m].empty())
        apply_action_inplace(s, AccDeleteAction{m, s.inst.men_prefs[m][rng.below(s.inst.men_prefs[m].size())]});
    }
    auto all = enumerate_stable(s.inst, s.mask);
    ASSERT_FALSE(all.empty());
    for (const Matching &x : all)
      for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(x.wife[i] >= 0, all.front().wife[i] >= 0);
        EXPECT_EQ(x.husband[i] >= 0, all.front().husband[i] >= 0);
      }
  }
}

}  // namespace
}  // namespace smbribe
