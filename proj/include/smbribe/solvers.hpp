#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smbribe/core.hpp"
#include "smbribe/graphkit.hpp"

namespace smbribe {

enum class Goal { ConstEx, DestEx, ExactEx, ExactUni };
enum class ActionType { Swap, Reorder, AccDelete, Delete, Add };
enum class Status { Feasible, InfeasibleWithinBudget, InfeasibleAlways };
enum class Quality { Exact, Approx2, ExactWithinParameter };
enum class Algo { Auto, Approx2, Xp, Bruteforce, Fpt };

const char *goal_name(Goal g);
const char *action_type_name(ActionType a);
const char *status_name(Status s);
const char *quality_name(Quality q);
const char *algo_name(Algo a);
std::optional<Goal> parse_goal(const std::string &s);
std::optional<ActionType> parse_action_type(const std::string &s);
std::optional<Algo> parse_algo(const std::string &s);

struct SolveRequest {
  Instance instance;
  PresenceMask mask;                      // starting presence; PresenceMask::initial by default
  Goal goal = Goal::ConstEx;
  ActionType action = ActionType::Delete;
  std::optional<int> budget;              // nullopt means unbounded
  std::optional<std::pair<int, int>> pair;  // ConstEx / DestEx
  std::optional<Matching> target;           // ExactEx / ExactUni

  static SolveRequest for_pair(Instance inst, Goal goal, ActionType action, int m, int w, std::optional<int> budget);
  static SolveRequest for_matching(Instance inst, Goal goal, ActionType action, Matching target,
                                   std::optional<int> budget);
};

struct ManipulationResult {
  Status status = Status::InfeasibleWithinBudget;
  std::optional<int> cost;     // set when Feasible
  std::optional<int> optimum;  // the minimum cost when it is known, even if above the budget
  std::vector<Action> actions;
  Instance witness_instance;
  PresenceMask witness_mask;
  Matching witness_matching;
  Quality quality = Quality::Exact;
  std::string algorithm;
};

// Enumeration caps for brute-force searches; SMBRIBE_ORACLE_CAP overrides `states`.
struct SearchCaps {
  std::uint64_t states = 10'000'000;
  int enumerate_agents = 16;
  static SearchCaps from_env();
};

// Canonical exhaustive enumeration of manipulations of type req.action. Swap lists are enumerated as
// per-agent permutations at a given adjacent-transposition distance, Reorder as full permutations of
// touched agents, the remaining actions as subsets. Visiting more than caps.states candidates throws
// Error(CapExceeded).
class ManipulationSpace {
 public:
  using Visitor = std::function<bool(const std::vector<Action> &, const State &)>;

  ManipulationSpace(const SolveRequest &req, int max_units, const SearchCaps &caps);
  // Visits every candidate costing exactly `units`; returns true as soon as `visit` does.
  bool for_each(int units, const Visitor &visit);
  // Largest cost that can make a difference (number of available items), nullopt if unbounded.
  std::optional<int> universe_size() const;
  std::uint64_t visited() const { return visited_; }

 private:
  struct Variant {
    std::vector<int> list;
    std::vector<int> swaps;  // positions realizing `list` from the current list
  };
  bool recurse_lists(std::size_t from, int remaining, std::vector<Action> &acts, const Visitor &visit);
  bool recurse_subsets(std::size_t from, int remaining, std::vector<Action> &acts, const Visitor &visit);
  bool leaf(const std::vector<Action> &acts, const Visitor &visit);

  const SolveRequest &req_;
  SearchCaps caps_;
  std::uint64_t visited_ = 0;
  std::vector<AgentRef> agents_;                          // Swap / Reorder / Delete / Add universe
  std::vector<std::pair<int, int>> pairs_;                // AccDelete universe
  std::vector<std::vector<std::vector<Variant>>> variants_;  // [agent][units] -> lists
};

// Goal test on a manipulated state.
bool goal_holds(const SolveRequest &req, const Instance &inst, const PresenceMask &mask);
// Stable witness for a state satisfying the goal (stable matching containing/omitting the pair, or M* restricted).
Matching goal_witness(const SolveRequest &req, const Instance &inst, const PresenceMask &mask);
// Replays the actions from scratch and checks every Feasible-result invariant; throws Error(Internal) on failure.
void verify_result(const SolveRequest &req, const ManipulationResult &res);
// Number of budget units an action list consumes (one per action).
int action_cost(const std::vector<Action> &acts);

ManipulationResult const_ex_delete(const SolveRequest &req);
ManipulationResult dest_ex_delete(const SolveRequest &req);
ManipulationResult const_ex_reorder_approx2(const SolveRequest &req);
ManipulationResult const_ex_reorder_xp(const SolveRequest &req);
ManipulationResult const_ex_bruteforce(const SolveRequest &req, const SearchCaps &caps = SearchCaps::from_env());
ManipulationResult exact_ex_accdel(const SolveRequest &req);
ManipulationResult exact_ex_reorder(const SolveRequest &req);
ManipulationResult exact_ex_swap(const SolveRequest &req);
ManipulationResult exact_ex_add(const SolveRequest &req);
ManipulationResult exact_ex_delete_fpt(const SolveRequest &req);
ManipulationResult exact_uni_accdel(const SolveRequest &req);
ManipulationResult exact_uni_reorder_xp(const SolveRequest &req);
ManipulationResult exact_uni_bruteforce(const SolveRequest &req, const SearchCaps &caps = SearchCaps::from_env());
// Minimum over all perfect completions of `partial` of the ExactEx solver for req.action.
ManipulationResult exact_partial(const SolveRequest &req, const Matching &partial, int max_free = 8);

// Routes a request to the algorithm chosen by `algo` (Auto picks the best available one for the cell).
ManipulationResult solve(const SolveRequest &req, Algo algo = Algo::Auto);

// Min-cut network of the exact-exists swap solver, exposed for inspection.
struct SwapCutNetwork {
  CostDigraph graph;
  std::vector<std::string> vertex_names;  // "s", "t", "u1^m1", ...
  // Per vertex: the agent owning the chain and the 1-based chain position (0 for s and t).
  std::vector<AgentRef> owner;
  std::vector<int> chain_position;
  std::vector<int> cost_into;  // resolution cost c(a, beta_i) of the chain vertex
};

SwapCutNetwork build_swap_cut_network(const Instance &inst, const Matching &target);

// Successor graph H_U (side=Man) or H_W (side=Woman) of the exact-unique acceptability-deletion solver;
// the target matching must be stable.
struct UniquenessGraph {
  CostDigraph graph;  // vertex i is agent i of `side`, the last vertex is the sink t
  Side side = Side::Man;
};

UniquenessGraph build_uniqueness_graph(const Instance &inst, const Matching &target, Side side);

}  // namespace smbribe
