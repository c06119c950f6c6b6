#include <cstdlib>

#include "smbribe/engine.hpp"
#include "smbribe/solvers.hpp"
#include "solver_util.hpp"

namespace smbribe {

const char *goal_name(Goal g) {
  switch (g) {
    case Goal::ConstEx: return "const-ex";
    case Goal::DestEx: return "dest-ex";
    case Goal::ExactEx: return "exact-ex";
    case Goal::ExactUni: return "exact-uni";
  }
  return "?";
}

const char *action_type_name(ActionType a) {
  switch (a) {
    case ActionType::Swap: return "swap";
    case ActionType::Reorder: return "reorder";
    case ActionType::AccDelete: return "accdel";
    case ActionType::Delete: return "delete";
    case ActionType::Add: return "add";
  }
  return "?";
}

const char *status_name(Status s) {
  switch (s) {
    case Status::Feasible: return "feasible";
    case Status::InfeasibleWithinBudget: return "infeasible-within-budget";
    case Status::InfeasibleAlways: return "infeasible-always";
  }
  return "?";
}

const char *quality_name(Quality q) {
  switch (q) {
    case Quality::Exact: return "exact";
    case Quality::Approx2: return "approx2";
    case Quality::ExactWithinParameter: return "exact-within-parameter";
  }
  return "?";
}

const char *algo_name(Algo a) {
  switch (a) {
    case Algo::Auto: return "auto";
    case Algo::Approx2: return "approx2";
    case Algo::Xp: return "xp";
    case Algo::Bruteforce: return "bruteforce";
    case Algo::Fpt: return "fpt";
  }
  return "?";
}

std::optional<Goal> parse_goal(const std::string &s) {
  for (Goal g : {Goal::ConstEx, Goal::DestEx, Goal::ExactEx, Goal::ExactUni})
    if (s == goal_name(g)) return g;
  return std::nullopt;
}

std::optional<ActionType> parse_action_type(const std::string &s) {
  for (ActionType a : {ActionType::Swap, ActionType::Reorder, ActionType::AccDelete, ActionType::Delete, ActionType::Add})
    if (s == action_type_name(a)) return a;
  return std::nullopt;
}

std::optional<Algo> parse_algo(const std::string &s) {
  for (Algo a : {Algo::Auto, Algo::Approx2, Algo::Xp, Algo::Bruteforce, Algo::Fpt})
    if (s == algo_name(a)) return a;
  return std::nullopt;
}

SolveRequest SolveRequest::for_pair(Instance inst, Goal goal, ActionType action, int m, int w,
                                    std::optional<int> budget) {
  SolveRequest req;
  req.mask = PresenceMask::initial(inst);
  req.instance = std::move(inst);
  req.goal = goal;
  req.action = action;
  req.budget = budget;
  req.pair = std::make_pair(m, w);
  return req;
}

SolveRequest SolveRequest::for_matching(Instance inst, Goal goal, ActionType action, Matching target,
                                        std::optional<int> budget) {
  SolveRequest req;
  req.mask = PresenceMask::initial(inst);
  req.instance = std::move(inst);
  req.goal = goal;
  req.action = action;
  req.budget = budget;
  req.target = std::move(target);
  return req;
}

SearchCaps SearchCaps::from_env() {
  SearchCaps caps;
  if (const char *env = std::getenv("SMBRIBE_ORACLE_CAP")) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) caps.states = v;
  }
  return caps;
}

int action_cost(const std::vector<Action> &acts) { return static_cast<int>(acts.size()); }

namespace detail {

bool target_acceptable(const Instance &inst, const Matching &target) {
  for (auto [m, w] : target.pairs())
    if (!rank(inst, man(m), woman(w))) return false;
  return true;
}

}  // namespace detail

bool goal_holds(const SolveRequest &req, const Instance &inst, const PresenceMask &mask) {
  switch (req.goal) {
    case Goal::ConstEx:
      return stable_pair(inst, mask, req.pair->first, req.pair->second);
    case Goal::DestEx: {
      auto [m, w] = *req.pair;
      if (!mask.men[m] || !mask.women[w] || !rank(inst, man(m), woman(w))) return true;
      // The pair lies in every stable matching iff both extreme matchings contain it.
      return !gale_shapley(inst, mask, Side::Man).contains(m, w) || !gale_shapley(inst, mask, Side::Woman).contains(m, w);
    }
    case Goal::ExactEx:
    case Goal::ExactUni: {
      Matching r = req.target->restricted(mask);
      if (!detail::target_acceptable(inst, r)) return false;
      return req.goal == Goal::ExactEx ? is_stable(inst, mask, r) : is_unique_stable(inst, mask, r);
    }
  }
  return false;
}

Matching goal_witness(const SolveRequest &req, const Instance &inst, const PresenceMask &mask) {
  switch (req.goal) {
    case Goal::ConstEx: {
      auto [m, w] = *req.pair;
      Matching out = complete_around_pair(inst, mask, m, w).matching;
      out.add(m, w);
      return out;
    }
    case Goal::DestEx: {
      auto [m, w] = *req.pair;
      Matching man_opt = gale_shapley(inst, mask, Side::Man);
      if (!man_opt.contains(m, w) || !mask.men[m] || !mask.women[w]) return man_opt;
      return gale_shapley(inst, mask, Side::Woman);
    }
    case Goal::ExactEx:
    case Goal::ExactUni:
      return req.target->restricted(mask);
  }
  return {};
}

namespace {

bool action_matches(ActionType type, const Action &act) {
  switch (type) {
    case ActionType::Swap: return std::holds_alternative<SwapAction>(act);
    case ActionType::Reorder: return std::holds_alternative<ReorderAction>(act);
    case ActionType::AccDelete: return std::holds_alternative<AccDeleteAction>(act);
    case ActionType::Delete: return std::holds_alternative<DeleteAgentAction>(act);
    case ActionType::Add: return std::holds_alternative<AddAgentAction>(act);
  }
  return false;
}

[[noreturn]] void verification_failure(const std::string &what) {
  throw Error(ErrorCode::Internal, "result verification failed: " + what);
}

}  // namespace

void verify_result(const SolveRequest &req, const ManipulationResult &res) {
  if (res.status != Status::Feasible) return;
  for (const auto &a : res.actions) {
    if (!action_matches(req.action, a)) verification_failure("action of the wrong type");
    if (req.goal == Goal::ConstEx && req.action == ActionType::Reorder) {
      AgentRef who = std::get<ReorderAction>(a).agent;
      if (who == man(req.pair->first) || who == woman(req.pair->second))
        verification_failure("target agents may not reorder");
    }
  }
  State state = apply_actions(req.instance, req.mask, res.actions);
  if (!(state.inst == res.witness_instance) || !(state.mask == res.witness_mask))
    verification_failure("witness instance differs from replayed actions");
  validate(state.inst);
  if (!res.cost || *res.cost != action_cost(res.actions)) verification_failure("cost differs from action count");
  if (req.budget && *res.cost > *req.budget) verification_failure("cost exceeds budget");
  if (!goal_holds(req, state.inst, state.mask)) verification_failure("goal does not hold");
  const Matching &wit = res.witness_matching;
  validate(state.inst, wit);
  for (auto [m, w] : wit.pairs())
    if (!state.mask.men[m] || !state.mask.women[w]) verification_failure("witness uses an absent agent");
  if (!is_stable(state.inst, state.mask, wit)) verification_failure("witness matching is not stable");
  switch (req.goal) {
    case Goal::ConstEx:
      if (!wit.contains(req.pair->first, req.pair->second)) verification_failure("witness misses the target pair");
      break;
    case Goal::DestEx:
      if (wit.contains(req.pair->first, req.pair->second)) verification_failure("witness contains the target pair");
      break;
    case Goal::ExactEx:
      if (!(wit == req.target->restricted(state.mask))) verification_failure("witness differs from the target");
      break;
    case Goal::ExactUni:
      if (!(wit == req.target->restricted(state.mask)) || !is_unique_stable(state.inst, state.mask, wit))
        verification_failure("witness is not the unique stable matching");
      break;
  }
}

namespace detail {

void check_request(const SolveRequest &req, Goal goal, std::initializer_list<ActionType> actions) {
  if (req.goal != goal)
    throw Error(ErrorCode::InvalidArgument, std::string("solver expects goal ") + goal_name(goal));
  bool ok = false;
  for (ActionType a : actions) ok = ok || a == req.action;
  if (!ok) throw Error(ErrorCode::InvalidArgument, std::string("solver does not handle action ") + action_type_name(req.action));
  validate(req.instance);
  if (static_cast<int>(req.mask.men.size()) != req.instance.men_count ||
      static_cast<int>(req.mask.women.size()) != req.instance.women_count)
    throw Error(ErrorCode::InvalidArgument, "presence mask does not fit the instance");
  if (req.budget && *req.budget < 0) throw Error(ErrorCode::InvalidArgument, "negative budget");
  if (goal == Goal::ConstEx || goal == Goal::DestEx) {
    if (!req.pair) throw Error(ErrorCode::InvalidArgument, "goal needs a target pair");
    auto [m, w] = *req.pair;
    if (m < 0 || m >= req.instance.men_count || w < 0 || w >= req.instance.women_count)
      throw Error(ErrorCode::InvalidArgument, "target pair out of range");
    if (goal == Goal::ConstEx && (!req.mask.men[m] || !req.mask.women[w]))
      throw Error(ErrorCode::InvalidArgument, "target pair agents must be present");
    if (goal == Goal::ConstEx && !rank(req.instance, man(m), woman(w)))
      throw Error(ErrorCode::InvalidArgument, "target pair is not mutually acceptable");
  } else {
    if (!req.target) throw Error(ErrorCode::InvalidArgument, "goal needs a target matching");
    validate(req.instance, *req.target);
    if (!req.target->is_perfect()) throw Error(ErrorCode::InvalidArgument, "target matching must be complete");
  }
}

void require_complete(const SolveRequest &req) {
  if (!is_complete(req.instance)) throw Error(ErrorCode::InvalidArgument, "solver needs a complete SM instance");
  if (!(req.mask == PresenceMask::all(req.instance)))
    throw Error(ErrorCode::InvalidArgument, "solver needs every agent present");
}

ManipulationResult finish(const SolveRequest &req, std::vector<Action> actions, Quality quality,
                          const std::string &algorithm) {
  ManipulationResult res;
  res.quality = quality;
  res.algorithm = algorithm;
  int cost = action_cost(actions);
  res.optimum = cost;
  if (req.budget && cost > *req.budget) {
    res.status = Status::InfeasibleWithinBudget;
    return res;
  }
  State state = apply_actions(req.instance, req.mask, actions);
  res.status = Status::Feasible;
  res.cost = cost;
  res.actions = std::move(actions);
  res.witness_matching = goal_witness(req, state.inst, state.mask);
  res.witness_instance = std::move(state.inst);
  res.witness_mask = std::move(state.mask);
  verify_result(req, res);
  return res;
}

ManipulationResult infeasible(Status status, Quality quality, const std::string &algorithm,
                              std::optional<int> optimum) {
  ManipulationResult res;
  res.status = status;
  res.quality = quality;
  res.algorithm = algorithm;
  res.optimum = optimum;
  return res;
}

std::vector<int> reorder_front(const std::vector<int> &list, const std::vector<int> &front) {
  std::vector<int> out;
  std::vector<bool> taken;
  int max_id = 0;
  for (int x : list) max_id = std::max(max_id, x + 1);
  taken.assign(max_id, false);
  for (int x : front) {
    if (x < max_id && !taken[x]) {
      taken[x] = true;
      out.push_back(x);
    }
  }
  for (int x : list)
    if (!taken[x]) out.push_back(x);
  return out;
}

}  // namespace detail

ManipulationResult solve(const SolveRequest &req, Algo algo) {
  auto unsupported = [&]() -> ManipulationResult {
    throw Error(ErrorCode::Unsupported, std::string("algorithm ") + algo_name(algo) + " is not available for " +
                                            goal_name(req.goal) + "/" + action_type_name(req.action));
  };
  if (algo == Algo::Bruteforce) {
    if (req.goal == Goal::ExactUni) return exact_uni_bruteforce(req);
    return detail::bruteforce(req, SearchCaps::from_env());
  }
  switch (req.goal) {
    case Goal::ConstEx:
      if (req.action == ActionType::Delete && algo == Algo::Auto) return const_ex_delete(req);
      if (req.action == ActionType::Reorder) {
        if (algo == Algo::Approx2 || (algo == Algo::Auto && !req.budget)) return const_ex_reorder_approx2(req);
        if (algo == Algo::Xp || algo == Algo::Auto) return const_ex_reorder_xp(req);
      }
      if (algo == Algo::Auto) return const_ex_bruteforce(req);
      return unsupported();
    case Goal::DestEx:
      if (algo != Algo::Auto) return unsupported();
      if (req.action == ActionType::Delete) return dest_ex_delete(req);
      return detail::bruteforce(req, SearchCaps::from_env());
    case Goal::ExactEx:
      if (req.action == ActionType::Delete && (algo == Algo::Auto || algo == Algo::Fpt)) return exact_ex_delete_fpt(req);
      if (algo != Algo::Auto) return unsupported();
      switch (req.action) {
        case ActionType::Swap: return exact_ex_swap(req);
        case ActionType::Reorder: return exact_ex_reorder(req);
        case ActionType::AccDelete: return exact_ex_accdel(req);
        case ActionType::Add: return exact_ex_add(req);
        case ActionType::Delete: break;
      }
      return unsupported();
    case Goal::ExactUni:
      if (req.action == ActionType::AccDelete && algo == Algo::Auto) return exact_uni_accdel(req);
      if (req.action == ActionType::Reorder && (algo == Algo::Auto || algo == Algo::Xp)) return exact_uni_reorder_xp(req);
      if (algo == Algo::Auto) return exact_uni_bruteforce(req);
      return unsupported();
  }
  return unsupported();
}

}  // namespace smbribe
