#include <algorithm>
#include <map>
#include <queue>

#include "smbribe/engine.hpp"
#include "smbribe/solvers.hpp"
#include "solver_util.hpp"

namespace smbribe {

namespace {

bool excluded_for_reorder(const SolveRequest &req, AgentRef a) {
  return req.goal == Goal::ConstEx && req.pair && (a == man(req.pair->first) || a == woman(req.pair->second));
}

}  // namespace

ManipulationSpace::ManipulationSpace(const SolveRequest &req, int max_units, const SearchCaps &caps)
    : req_(req), caps_(caps) {
  const Instance &inst = req.instance;
  const PresenceMask &mask = req.mask;
  for (Side s : {Side::Man, Side::Woman})
    for (int i = 0; i < inst.count(s); ++i) {
      AgentRef a{s, i};
      switch (req.action) {
        case ActionType::Swap:
          if (mask.present(a) && inst.prefs(a).size() >= 2) agents_.push_back(a);
          break;
        case ActionType::Reorder:
          if (mask.present(a) && inst.prefs(a).size() >= 2 && !excluded_for_reorder(req, a)) agents_.push_back(a);
          break;
        case ActionType::Delete:
          if (mask.present(a) && !(req.goal == Goal::ConstEx && excluded_for_reorder(req, a))) agents_.push_back(a);
          break;
        case ActionType::Add:
          if (!mask.present(a) && inst.addable(a)) agents_.push_back(a);
          break;
        case ActionType::AccDelete:
          break;
      }
    }
  if (req.action == ActionType::AccDelete)
    for (int m = 0; m < inst.men_count; ++m)
      if (mask.men[m])
        for (int w : inst.men_prefs[m])
          if (mask.women[w]) pairs_.emplace_back(m, w);
  std::sort(pairs_.begin(), pairs_.end());

  if (req.action == ActionType::Swap) {
    // Breadth-first search over adjacent transpositions: layer d holds the lists at distance exactly d.
    for (AgentRef a : agents_) {
      std::vector<std::vector<Variant>> layers(max_units + 1);
      std::map<std::vector<int>, bool> seen;
      layers[0].push_back({inst.prefs(a), {}});
      seen[inst.prefs(a)] = true;
      for (int d = 1; d <= max_units; ++d) {
        for (const auto &v : layers[d - 1]) {
          for (int p = 0; p + 1 < static_cast<int>(v.list.size()); ++p) {
            Variant next = v;
            std::swap(next.list[p], next.list[p + 1]);
            if (seen.count(next.list)) continue;
            seen[next.list] = true;
            next.swaps.push_back(p);
            layers[d].push_back(std::move(next));
            if (++visited_ > caps_.states) throw Error(ErrorCode::CapExceeded, "swap enumeration exceeds the state cap");
          }
        }
        std::sort(layers[d].begin(), layers[d].end(), [](const Variant &x, const Variant &y) { return x.list < y.list; });
      }
      variants_.push_back(std::move(layers));
    }
  } else if (req.action == ActionType::Reorder) {
    for (AgentRef a : agents_) {
      std::vector<std::vector<Variant>> layers(2);
      std::vector<int> list = inst.prefs(a);
      std::sort(list.begin(), list.end());
      do {
        if (list != inst.prefs(a)) layers[1].push_back({list, {}});
        if (++visited_ > caps_.states) throw Error(ErrorCode::CapExceeded, "reorder enumeration exceeds the state cap");
      } while (std::next_permutation(list.begin(), list.end()));
      variants_.push_back(std::move(layers));
    }
  }
}

std::optional<int> ManipulationSpace::universe_size() const {
  switch (req_.action) {
    case ActionType::AccDelete: return static_cast<int>(pairs_.size());
    case ActionType::Delete:
    case ActionType::Add:
    case ActionType::Reorder: return static_cast<int>(agents_.size());
    case ActionType::Swap: return std::nullopt;
  }
  return std::nullopt;
}

bool ManipulationSpace::leaf(const std::vector<Action> &acts, const Visitor &visit) {
  if (++visited_ > caps_.states) throw Error(ErrorCode::CapExceeded, "manipulation enumeration exceeds the state cap");
  State state = apply_actions(req_.instance, req_.mask, acts);
  return visit(acts, state);
}

bool ManipulationSpace::recurse_lists(std::size_t from, int remaining, std::vector<Action> &acts, const Visitor &visit) {
  if (remaining == 0) return leaf(acts, visit);
  for (std::size_t i = from; i < agents_.size(); ++i) {
    AgentRef a = agents_[i];
    int max_d = req_.action == ActionType::Swap ? remaining : 1;
    for (int d = 1; d <= max_d; ++d) {
      if (d >= static_cast<int>(variants_[i].size())) break;
      for (const auto &v : variants_[i][d]) {
        std::size_t mark = acts.size();
        if (req_.action == ActionType::Swap)
          for (int p : v.swaps) acts.push_back(SwapAction{a, p});
        else
          acts.push_back(ReorderAction{a, v.list});
        if (recurse_lists(i + 1, remaining - d, acts, visit)) return true;
        acts.resize(mark);
      }
    }
  }
  return false;
}

bool ManipulationSpace::recurse_subsets(std::size_t from, int remaining, std::vector<Action> &acts,
                                        const Visitor &visit) {
  if (remaining == 0) return leaf(acts, visit);
  std::size_t total = req_.action == ActionType::AccDelete ? pairs_.size() : agents_.size();
  for (std::size_t i = from; i + remaining <= total; ++i) {
    switch (req_.action) {
      case ActionType::AccDelete: acts.push_back(AccDeleteAction{pairs_[i].first, pairs_[i].second}); break;
      case ActionType::Delete: acts.push_back(DeleteAgentAction{agents_[i]}); break;
      case ActionType::Add: acts.push_back(AddAgentAction{agents_[i]}); break;
      default: break;
    }
    if (recurse_subsets(i + 1, remaining - 1, acts, visit)) return true;
    acts.pop_back();
  }
  return false;
}

bool ManipulationSpace::for_each(int units, const Visitor &visit) {
  std::vector<Action> acts;
  if (req_.action == ActionType::Swap || req_.action == ActionType::Reorder) return recurse_lists(0, units, acts, visit);
  return recurse_subsets(0, units, acts, visit);
}

namespace detail {

ManipulationResult bruteforce(const SolveRequest &req, const SearchCaps &caps) {
  const std::string name = std::string(goal_name(req.goal)) + "/bruteforce";
  check_request(req, req.goal, {req.action});
  if (!req.budget && req.action != ActionType::Add)
    throw Error(ErrorCode::InvalidArgument, "brute-force search needs a finite budget for this action");
  int budget = req.budget.value_or(0);
  ManipulationSpace space(req, req.budget ? budget : 1, caps);
  std::optional<int> universe = space.universe_size();
  int limit = req.budget ? budget : *universe;
  if (universe) limit = std::min(limit, *universe);
  std::vector<Action> found;
  auto visit = [&](const std::vector<Action> &acts, const State &state) {
    if (!goal_holds(req, state.inst, state.mask)) return false;
    found = acts;
    return true;
  };
  for (int k = 0; k <= limit; ++k)
    if (space.for_each(k, visit)) return finish(req, found, Quality::Exact, name);

  if (req.action != ActionType::Add) return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, name, std::nullopt);
  // Additions form a finite universe: look past the budget to tell "too expensive" from "impossible".
  try {
    for (int k = limit + 1; k <= *universe; ++k)
      if (space.for_each(k, visit)) return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, name, k);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
    return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, name, std::nullopt);
  }
  return infeasible(Status::InfeasibleAlways, Quality::Exact, name, std::nullopt);
}

}  // namespace detail

ManipulationResult const_ex_bruteforce(const SolveRequest &req, const SearchCaps &caps) {
  detail::check_request(req, Goal::ConstEx, {ActionType::Swap, ActionType::AccDelete, ActionType::Add,
                                             ActionType::Delete, ActionType::Reorder});
  return detail::bruteforce(req, caps);
}

ManipulationResult exact_uni_bruteforce(const SolveRequest &req, const SearchCaps &caps) {
  detail::check_request(req, Goal::ExactUni, {ActionType::Swap, ActionType::Delete, ActionType::Add,
                                              ActionType::AccDelete, ActionType::Reorder});
  return detail::bruteforce(req, caps);
}

}  // namespace smbribe
