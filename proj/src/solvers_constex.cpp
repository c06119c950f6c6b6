#include <algorithm>

#include "smbribe/engine.hpp"
#include "smbribe/solvers.hpp"
#include "solver_util.hpp"

namespace smbribe {

using detail::check_request;
using detail::finish;
using detail::infeasible;

ManipulationResult const_ex_delete(const SolveRequest &req) {
  check_request(req, Goal::ConstEx, {ActionType::Delete});
  detail::require_complete(req);
  auto [m, w] = *req.pair;
  PairCompletion pc = complete_around_pair(req.instance, req.mask, m, w);
  // Each conflicting agent left unassigned must go; deleting one agent frees at most one other.
  std::vector<Action> actions;
  for (AgentRef a : pc.conflicting) actions.push_back(DeleteAgentAction{a});
  return finish(req, std::move(actions), Quality::Exact, "const_ex_delete");
}

ManipulationResult dest_ex_delete(const SolveRequest &req) {
  check_request(req, Goal::DestEx, {ActionType::Delete});
  detail::require_complete(req);
  const std::string name = "dest_ex_delete";
  if (goal_holds(req, req.instance, req.mask)) return finish(req, {}, Quality::Exact, name);

  auto [m_star, w_star] = *req.pair;
  std::optional<std::vector<Action>> best;
  auto consider = [&](std::vector<Action> acts) {
    if (!best || acts.size() < best->size()) best = std::move(acts);
  };
  // Moving m* or w* to another stable partner, in index order.
  for (int w = 0; w < req.instance.women_count; ++w) {
    if (w == w_star) continue;
    PairCompletion pc = complete_around_pair(req.instance, req.mask, m_star, w);
    std::vector<Action> acts;
    for (AgentRef a : pc.conflicting) acts.push_back(DeleteAgentAction{a});
    consider(std::move(acts));
  }
  for (int m = 0; m < req.instance.men_count; ++m) {
    if (m == m_star) continue;
    PairCompletion pc = complete_around_pair(req.instance, req.mask, m, w_star);
    std::vector<Action> acts;
    for (AgentRef a : pc.conflicting) acts.push_back(DeleteAgentAction{a});
    consider(std::move(acts));
  }
  consider({DeleteAgentAction{man(m_star)}});
  consider({DeleteAgentAction{woman(w_star)}});
  return finish(req, std::move(*best), Quality::Exact, name);
}

ManipulationResult const_ex_reorder_approx2(const SolveRequest &req) {
  check_request(req, Goal::ConstEx, {ActionType::Reorder});
  if (req.instance.men_count != req.instance.women_count)
    throw Error(ErrorCode::InvalidArgument, "the 2-approximation needs as many men as women");
  detail::require_complete(req);
  auto [m, w] = *req.pair;
  PairCompletion pc = complete_around_pair(req.instance, req.mask, m, w);
  // Every conflicting agent left unassigned ranks all unassigned agents of the other side first.
  std::vector<int> free_men, free_women;
  for (AgentRef a : pc.unassigned) (a.side == Side::Man ? free_men : free_women).push_back(a.index);
  std::vector<Action> actions;
  for (AgentRef a : pc.conflicting) {
    const auto &front = a.side == Side::Man ? free_women : free_men;
    actions.push_back(ReorderAction{a, detail::reorder_front(req.instance.prefs(a), front)});
  }
  ManipulationResult res = finish(req, std::move(actions), Quality::Approx2, "const_ex_reorder_approx2");
  res.optimum.reset();
  return res;
}

ManipulationResult const_ex_reorder_xp(const SolveRequest &req) {
  check_request(req, Goal::ConstEx, {ActionType::Reorder});
  if (!req.budget) throw Error(ErrorCode::InvalidArgument, "the XP search needs a finite budget");
  const std::string name = "const_ex_reorder_xp";
  auto [m_star, w_star] = *req.pair;
  const Instance &inst = req.instance;

  std::vector<AgentRef> pool;
  for (Side s : {Side::Man, Side::Woman})
    for (int i = 0; i < inst.count(s); ++i) {
      AgentRef a{s, i};
      if (a == man(m_star) || a == woman(w_star) || !req.mask.present(a) || inst.prefs(a).size() < 2) continue;
      pool.push_back(a);
    }

  std::vector<int> chosen;
  std::vector<int> target;
  std::optional<std::vector<Action>> found;

  // Try every top-choice assignment T on the chosen agents.
  std::function<bool(std::size_t)> assign = [&](std::size_t idx) -> bool {
    if (idx == chosen.size()) {
      Instance trial = inst;
      std::vector<Action> acts;
      for (std::size_t j = 0; j < chosen.size(); ++j) {
        AgentRef a = pool[chosen[j]];
        auto list = detail::reorder_front(inst.prefs(a), {target[j]});
        trial.prefs(a) = list;
        acts.push_back(ReorderAction{a, std::move(list)});
      }
      if (!stable_pair(trial, req.mask, m_star, w_star)) return false;
      found = std::move(acts);
      return true;
    }
    AgentRef a = pool[chosen[idx]];
    const auto &list = inst.prefs(a);
    std::vector<int> options(list.begin() + 1, list.end());
    std::sort(options.begin(), options.end());
    for (int b : options) {
      target[idx] = b;
      if (assign(idx + 1)) return true;
    }
    return false;
  };

  std::function<bool(std::size_t, int)> pick = [&](std::size_t from, int remaining) -> bool {
    if (remaining == 0) {
      target.assign(chosen.size(), -1);
      return assign(0);
    }
    for (std::size_t i = from; i + remaining <= pool.size(); ++i) {
      chosen.push_back(static_cast<int>(i));
      if (pick(i + 1, remaining - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };

  for (int k = 0; k <= *req.budget; ++k) {
    chosen.clear();
    if (pick(0, k)) return finish(req, std::move(*found), Quality::Exact, name);
  }
  return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, name, std::nullopt);
}

}  // namespace smbribe
