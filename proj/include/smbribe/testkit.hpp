#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "smbribe/core.hpp"
#include "smbribe/solvers.hpp"

namespace smbribe {

// Every stable matching among present agents, by exhaustive search over partial matchings.
// Throws Error(CapExceeded) when more than `max_agents` agents are present.
std::vector<Matching> enumerate_stable(const Instance &inst, const PresenceMask &mask, int max_agents = 16);

// Exhaustive minimum over the action space of req.action, with goals checked against enumerate_stable and a
// direct blocking-pair scan rather than the engine.
ManipulationResult oracle_min_manipulation(const SolveRequest &req, const SearchCaps &caps = SearchCaps::from_env());

// Deterministic generator: std::mt19937_64 seeded with the 64-bit seed; bounded draws use rejection sampling
// (draw x, accept if x < 2^64 - (2^64 mod n), return x mod n); shuffles are Fisher-Yates from the back.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);
  double unit();  // top 53 bits scaled to [0, 1)
  void shuffle(std::vector<int> &v);

 private:
  std::mt19937_64 engine_;
};

// Complete n x n instance: men's lists then women's lists, each an independent shuffle of the identity.
// With addable_fraction > 0, each agent (men first) is then marked addable with that probability.
Instance random_instance(int n, std::uint64_t seed, double addable_fraction = 0.0);
// Uniform random perfect matching of a square instance.
Matching random_perfect_matching(int n, Rng &rng);

struct SimpleGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // 0-based, u < v, sorted

  SimpleGraph(int n, std::vector<std::pair<int, int>> e);
  bool adjacent(int u, int v) const;
};

struct SetSystem {
  int universe_size = 0;
  std::vector<std::vector<int>> sets;  // 1-based elements, each set sorted and nonempty
};

struct GadgetOutput {
  Instance instance;
  Goal goal = Goal::ConstEx;
  ActionType action = ActionType::Add;
  std::optional<std::pair<int, int>> pair;
  std::optional<Matching> target;
  std::optional<int> budget;
  std::string note;

  SolveRequest request() const;
};

GadgetOutput gadget_clique_add(const SimpleGraph &g, int k);
// `action` is AccDelete or Reorder; both share the instance.
GadgetOutput gadget_clique_accdel_reorder(const SimpleGraph &g, int k, ActionType action);
// `goal` is ExactEx or ExactUni.
GadgetOutput gadget_is_delete(const SimpleGraph &g, int k, Goal goal = Goal::ExactEx);
GadgetOutput gadget_hs_reorder(const SetSystem &s, int k);
GadgetOutput gadget_hs_add(const SetSystem &s, int k);
// r men mD_i and r women wD_i with cyclically shifted lists; M* pairs mD_i with wD_i.
GadgetOutput gadget_dummy_block(int r);

// Direct checks of the source problems of the reductions.
bool has_clique(const SimpleGraph &g, int k);
bool has_independent_set(const SimpleGraph &g, int k);
bool has_hitting_set(const SetSystem &s, int k);

}  // namespace smbribe
